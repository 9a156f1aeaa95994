#include "qhardy_cli/verify.hpp"

#include "qhardy/features.hpp"
#include "qhardy/qft.hpp"
#include "qhardy_cli/fixtures.hpp"

#include <algorithm>
#include <cstdio>

namespace qhardy::cli {

namespace {

VerifyLine below(std::string fixture, std::string quantity, double value, double bound) {
    return {std::move(fixture), std::move(quantity), value, "<", bound, value < bound, false};
}

VerifyLine at_least(std::string fixture, std::string quantity, double value, double bound) {
    return {std::move(fixture), std::move(quantity), value, ">=", bound, value >= bound, false};
}

}  // namespace

bool VerifyReport::ok() const {
    return std::all_of(lines.begin(), lines.end(), [](const VerifyLine& l) { return l.pass; });
}

void VerifyReport::append(const VerifyReport& other) {
    lines.insert(lines.end(), other.lines.begin(), other.lines.end());
}

VerifyReport verify_spectral(std::uint64_t seed, int size) {
    const OneSidedReport rep = spectrum_onesided_check(random_field(size, size, seed));
    VerifyReport out;
    const std::string name = "random" + std::to_string(size);
    out.lines.push_back(below(name, "max_leak", rep.max_leak, 1e-8));
    out.lines.push_back(below(name, "factor_error", rep.factor_error, 1e-8));
    return out;
}

VerifyReport verify_cr_blob() {
    const CRResidualReport coarse = cr_residuals(gaussian_blob(1.0), 2.0, 2.0);
    const CRResidualReport fine = cr_residuals(gaussian_blob(0.5), 2.0, 2.0);
    VerifyReport out;
    const auto add = [&](const char* name, const ResidualChannel& c, const ResidualChannel& f) {
        out.lines.push_back(below("blob h=1", std::string(name) + " max", c.max_interior, 1e-2));
        out.lines.push_back(below("blob h=0.5", std::string(name) + " max", f.max_interior, 1e-2));
        const double ratio = f.max_interior > 0.0 ? c.max_interior / f.max_interior : 0.0;
        out.lines.push_back(at_least("blob", std::string(name) + " ratio", ratio, 1.5));
    };
    add("res_t1", coarse.res_t1, fine.res_t1);
    add("res_y1", coarse.res_y1, fine.res_y1);
    add("res_t2", coarse.res_t2, fine.res_t2);
    add("res_y2", coarse.res_y2, fine.res_y2);
    return out;
}

VerifyReport verify_cauchy() {
    VerifyReport out;
    for (double h : {1e-3, 5e-4}) {
        const CauchyCRResult r = cauchy_log_cr(1.0, 1.0, 1.0, 1.0, h);
        const double residual = std::max(modulus(r.left), modulus(r.right));
        char quantity[64];
        std::snprintf(quantity, sizeof quantity, "CR residual h=%g", h);
        VerifyLine line = at_least("cauchy", quantity, residual, 0.01);
        line.expected_violation = true;
        out.lines.push_back(line);
    }
    return out;
}

std::string format_report(const VerifyReport& report) {
    std::string text;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %-26s %14s %-3s %10s  %s\n", "fixture", "quantity", "value", "", "bound",
                  "status");
    text += buf;
    for (const VerifyLine& l : report.lines) {
        // Expected-violation channels read as a failed holomorphy check.
        const char* status = l.expected_violation ? (l.pass ? "FAIL (expected: not holomorphic)"
                                                            : "PASS (unexpected: a violation was expected)")
                                                  : (l.pass ? "PASS" : "FAIL");
        std::snprintf(buf, sizeof buf, "%-12s %-26s %14.6e %-3s %10.3g  %s\n", l.fixture.c_str(),
                      l.quantity.c_str(), l.value, l.relation.c_str(), l.bound, status);
        text += buf;
    }
    return text;
}

}  // namespace qhardy::cli
