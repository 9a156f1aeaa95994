/**
 * @file verify.hpp
 * @brief Numerical checks behind `qhardy verify`
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qhardy::cli {

struct VerifyLine {
    std::string fixture;
    std::string quantity;
    double value = 0.0;
    std::string relation;  ///< "<" or ">="
    double bound = 0.0;
    bool pass = false;
    /// Set for channels that are meant to show a violation (the Cauchy counterexample).
    bool expected_violation = false;
};

struct VerifyReport {
    std::vector<VerifyLine> lines;
    bool ok() const;
    void append(const VerifyReport& other);
};

/// One-sided spectrum of the analytic signal of a random field: max_leak, factor_error < 1e-8.
VerifyReport verify_spectral(std::uint64_t seed, int size = 32);

/// Generalized Cauchy-Riemann residuals of the Gaussian blob lift (y1 = y2 = 2) at spacing 1
/// and 0.5: every equation's interior maximum must shrink by a factor >= 1.5.
VerifyReport verify_cr_blob();

/// CR operators on a + p of the Cauchy kernel around (1, 1, 1, 1): the residual stays above
/// 0.01 at two step sizes, i.e. a + p is not holomorphic.
VerifyReport verify_cauchy();

/// Fixed-width table, one line per check.
std::string format_report(const VerifyReport& report);

}  // namespace qhardy::cli
