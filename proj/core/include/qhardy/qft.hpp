/**
 * @file qft.hpp
 * @brief Discrete two-sided quaternion Fourier transform and quaternion Hilbert transforms
 *
 * Forward transform (unitless sums, no normalization):
 *
 *     F(w1, w2) = sum_t exp(-i w1 t1) f(t1, t2) exp(-j w2 t2),   w_k = 2 pi n_k / N_k
 *
 * and the inverse carries 1/(H W). The i-exponential multiplies from the left and the
 * j-exponential from the right. Internally f is split as f = fa + fb j with fa, fb in
 * the i-complex plane, which reduces the transform to two complex 2-D DFTs.
 *
 * Spectra are stored with DC at the center: storage column c holds frequency index
 * c - W/2 (integer division), likewise for rows.
 */

#pragma once

#include "qhardy/quaternion.hpp"
#include "qhardy/scalar_field.hpp"

#include <vector>

namespace qhardy {

struct QuaternionField {
    int height = 0;
    int width = 0;
    double spacing = 1.0;
    std::vector<Quaternion> data;

    QuaternionField() = default;
    QuaternionField(int h, int w, double spacing_ = 1.0);

    Quaternion& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
    const Quaternion& at(int row, int col) const {
        return data[static_cast<std::size_t>(row) * width + col];
    }

    /// Real field embedded as the scalar part.
    static QuaternionField from_real(const ScalarField& f);
    /// Component 0..3 as a ScalarField.
    ScalarField component(int index) const;
};

struct QSpectrum {
    int height = 0;
    int width = 0;
    double frequency_step_1 = 0.0;  ///< 2 pi / (W h), along t1
    double frequency_step_2 = 0.0;  ///< 2 pi / (H h), along t2
    std::vector<Quaternion> data;   ///< DC at (height/2, width/2)

    Quaternion& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
    const Quaternion& at(int row, int col) const {
        return data[static_cast<std::size_t>(row) * width + col];
    }
    /// Signed frequency index of a storage column / row.
    int freq_index_1(int col) const { return col - width / 2; }
    int freq_index_2(int row) const { return row - height / 2; }
};

QSpectrum qft2(const QuaternionField& f);
QuaternionField iqft2(const QSpectrum& s);

/// Discrete sign of a frequency index on an N-point grid: 0 at DC and at the
/// Nyquist bin of even N.
int discrete_sign(int freq_index, int n);

/// Partial Hilbert transform along t1: spectrum multiplied on the left by -i sgn(w1).
QuaternionField hilbert_partial_1(const QuaternionField& f);
/// Partial Hilbert transform along t2: spectrum multiplied on the right by -j sgn(w2).
QuaternionField hilbert_partial_2(const QuaternionField& f);
/// Total Hilbert transform: composition of the two partial transforms.
QuaternionField hilbert_total(const QuaternionField& f);

/// g + i H1[g] + H2[g] j + i Htot[g] j, products taken pointwise with the
/// left/right placement shown.
QuaternionField analytic_signal(const QuaternionField& f);

struct OneSidedReport {
    double max_leak = 0.0;      ///< largest |Fq| over bins with w1 < 0 or w2 < 0
    double factor_error = 0.0;  ///< largest |Fq - (1+sgn w1)(1+sgn w2) F|
    double spectrum_peak = 0.0; ///< max |F|; both errors above are divided by max(1, peak)
};

/// Checks that the analytic signal of a real field has a single-quadrant spectrum
/// with the (1+sgn)(1+sgn) factor. DC and Nyquist rows/columns are excluded from
/// the factor check; Nyquist bins are excluded from the leak set.
OneSidedReport spectrum_onesided_check(const ScalarField& f);

}  // namespace qhardy
