#include "qhardy/qft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace qhardy {

namespace {

using Complex = std::complex<double>;

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// In-place 2-D DFT of a row-major H x W array with exponent sign `sign`
// (FFTW_FORWARD = -1, FFTW_BACKWARD = +1). No normalization.
void dft2(std::vector<Complex>& buf, int h, int w, int sign) {
    static_assert(sizeof(Complex) == sizeof(fftw_complex));
    auto* data = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(h, w, data, data, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) {
        throw std::runtime_error("fftw: failed to create plan");
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
}

int wrap(int k, int n) { return ((k % n) + n) % n; }

// Two-sided transform sum_t exp(s i w1 t1) f exp(s j w2 t2) on unshifted indices.
// With f = fa + fb j and g+- = fa +- i fb, D = complex DFT with sign s:
//   A(w) = (D[g+](w1, w2) + D[g-](w1, -w2)) / 2
//   B(w) = (-i D[g+](w1, w2) + i D[g-](w1, -w2)) / 2
// and the result is A + B j.
std::vector<Quaternion> two_sided(const std::vector<Quaternion>& in, int h, int w, int sign) {
    const std::size_t n = in.size();
    std::vector<Complex> gp(n);
    std::vector<Complex> gm(n);
    const Complex iu(0.0, 1.0);
    for (std::size_t idx = 0; idx < n; ++idx) {
        const Complex fa(in[idx].q0, in[idx].q1);
        const Complex fb(in[idx].q2, in[idx].q3);
        gp[idx] = fa + iu * fb;
        gm[idx] = fa - iu * fb;
    }
    dft2(gp, h, w, sign);
    dft2(gm, h, w, sign);
    std::vector<Quaternion> out(n);
    for (int k2 = 0; k2 < h; ++k2) {
        const int k2n = wrap(-k2, h);
        for (int k1 = 0; k1 < w; ++k1) {
            const Complex p = gp[static_cast<std::size_t>(k2) * w + k1];
            const Complex m = gm[static_cast<std::size_t>(k2n) * w + k1];
            const Complex a = 0.5 * (p + m);
            const Complex b = 0.5 * (-iu * p + iu * m);
            out[static_cast<std::size_t>(k2) * w + k1] = {a.real(), a.imag(), b.real(), b.imag()};
        }
    }
    return out;
}

// Applies a per-bin transformation to the spectrum of f and transforms back.
template <typename Fn>
QuaternionField spectral_map(const QuaternionField& f, Fn&& fn) {
    QSpectrum s = qft2(f);
    for (int row = 0; row < s.height; ++row) {
        const int s2 = discrete_sign(s.freq_index_2(row), s.height);
        for (int col = 0; col < s.width; ++col) {
            const int s1 = discrete_sign(s.freq_index_1(col), s.width);
            s.at(row, col) = fn(s.at(row, col), s1, s2);
        }
    }
    QuaternionField out = iqft2(s);
    out.spacing = f.spacing;
    return out;
}

}  // namespace

QuaternionField::QuaternionField(int h, int w, double spacing_)
    : height(h), width(w), spacing(spacing_), data(static_cast<std::size_t>(h) * w) {
    if (h < 0 || w < 0) throw std::invalid_argument("QuaternionField: negative dimensions");
}

QuaternionField QuaternionField::from_real(const ScalarField& f) {
    QuaternionField q(f.height(), f.width(), f.spacing());
    for (std::size_t i = 0; i < q.data.size(); ++i) q.data[i] = Quaternion::real(f.values()[i]);
    return q;
}

ScalarField QuaternionField::component(int index) const {
    if (index < 0 || index > 3) throw std::out_of_range("QuaternionField::component");
    ScalarField out(height, width, spacing);
    for (std::size_t i = 0; i < data.size(); ++i) out.values()[i] = parts(data[i])[index];
    return out;
}

QSpectrum qft2(const QuaternionField& f) {
    const int h = f.height;
    const int w = f.width;
    QSpectrum s;
    s.height = h;
    s.width = w;
    s.frequency_step_1 = w > 0 ? 2.0 * std::numbers::pi / (w * f.spacing) : 0.0;
    s.frequency_step_2 = h > 0 ? 2.0 * std::numbers::pi / (h * f.spacing) : 0.0;
    s.data.resize(f.data.size());
    if (f.data.empty()) return s;
    const std::vector<Quaternion> raw = two_sided(f.data, h, w, FFTW_FORWARD);
    for (int row = 0; row < h; ++row) {
        const int k2 = wrap(row - h / 2, h);
        for (int col = 0; col < w; ++col) {
            const int k1 = wrap(col - w / 2, w);
            s.at(row, col) = raw[static_cast<std::size_t>(k2) * w + k1];
        }
    }
    return s;
}

QuaternionField iqft2(const QSpectrum& s) {
    const int h = s.height;
    const int w = s.width;
    QuaternionField f(h, w, s.frequency_step_1 > 0.0 ? 2.0 * std::numbers::pi / (w * s.frequency_step_1) : 1.0);
    if (s.data.empty()) return f;
    std::vector<Quaternion> unshifted(s.data.size());
    for (int row = 0; row < h; ++row) {
        const int k2 = wrap(row - h / 2, h);
        for (int col = 0; col < w; ++col) {
            const int k1 = wrap(col - w / 2, w);
            unshifted[static_cast<std::size_t>(k2) * w + k1] = s.at(row, col);
        }
    }
    f.data = two_sided(unshifted, h, w, FFTW_BACKWARD);
    const double inv = 1.0 / (static_cast<double>(h) * w);
    for (Quaternion& q : f.data) q *= inv;
    return f;
}

int discrete_sign(int freq_index, int n) {
    if (freq_index == 0) return 0;
    if (n % 2 == 0 && std::abs(freq_index) == n / 2) return 0;
    return freq_index > 0 ? 1 : -1;
}

QuaternionField hilbert_partial_1(const QuaternionField& f) {
    const Quaternion i = Quaternion::unit_i();
    return spectral_map(f, [&](const Quaternion& v, int s1, int) { return (-s1 * 1.0) * (i * v); });
}

QuaternionField hilbert_partial_2(const QuaternionField& f) {
    const Quaternion j = Quaternion::unit_j();
    return spectral_map(f, [&](const Quaternion& v, int, int s2) { return (-s2 * 1.0) * (v * j); });
}

QuaternionField hilbert_total(const QuaternionField& f) {
    const Quaternion i = Quaternion::unit_i();
    const Quaternion j = Quaternion::unit_j();
    return spectral_map(f, [&](const Quaternion& v, int s1, int s2) {
        return (static_cast<double>(s1) * s2) * (i * v * j);
    });
}

QuaternionField analytic_signal(const QuaternionField& f) {
    const QuaternionField h1 = hilbert_partial_1(f);
    const QuaternionField h2 = hilbert_partial_2(f);
    const QuaternionField ht = hilbert_total(f);
    const Quaternion i = Quaternion::unit_i();
    const Quaternion j = Quaternion::unit_j();
    QuaternionField out(f.height, f.width, f.spacing);
    for (std::size_t idx = 0; idx < f.data.size(); ++idx) {
        out.data[idx] = f.data[idx] + i * h1.data[idx] + h2.data[idx] * j + i * ht.data[idx] * j;
    }
    return out;
}

OneSidedReport spectrum_onesided_check(const ScalarField& f) {
    OneSidedReport report;
    if (f.empty()) return report;
    const QuaternionField g = QuaternionField::from_real(f);
    const QSpectrum spec = qft2(g);
    const QSpectrum spec_q = qft2(analytic_signal(g));
    double leak = 0.0;
    double factor = 0.0;
    for (int row = 0; row < spec.height; ++row) {
        const int k2 = spec.freq_index_2(row);
        const int s2 = discrete_sign(k2, spec.height);
        for (int col = 0; col < spec.width; ++col) {
            const int k1 = spec.freq_index_1(col);
            const int s1 = discrete_sign(k1, spec.width);
            const Quaternion& fq = spec_q.at(row, col);
            report.spectrum_peak = std::max(report.spectrum_peak, modulus(spec.at(row, col)));
            if ((s1 < 0) || (s2 < 0)) {
                leak = std::max(leak, modulus(fq));
            }
            if (s1 != 0 && s2 != 0) {
                const double gain = (1.0 + s1) * (1.0 + s2);
                factor = std::max(factor, modulus(fq - gain * spec.at(row, col)));
            }
        }
    }
    const double scale = std::max(1.0, report.spectrum_peak);
    report.max_leak = leak / scale;
    report.factor_error = factor / scale;
    return report;
}

}  // namespace qhardy
