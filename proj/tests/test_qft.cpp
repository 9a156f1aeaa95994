#include "qhardy/qft.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace qhardy;

namespace {

constexpr double kPi = std::numbers::pi;

QuaternionField random_qfield(int h, int w, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    QuaternionField f(h, w);
    for (Quaternion& q : f.data) q = test::random_quaternion(rng);
    return f;
}

// F(w1, w2) = sum_t exp(-i w1 t1) f(t) exp(-j w2 t2), evaluated term by term.
QSpectrum brute_force_qft(const QuaternionField& f) {
    QSpectrum s;
    s.height = f.height;
    s.width = f.width;
    s.data.resize(f.data.size());
    for (int row = 0; row < f.height; ++row) {
        for (int col = 0; col < f.width; ++col) {
            const double w1 = 2.0 * kPi * (col - f.width / 2) / f.width;
            const double w2 = 2.0 * kPi * (row - f.height / 2) / f.height;
            Quaternion acc;
            for (int t2 = 0; t2 < f.height; ++t2) {
                for (int t1 = 0; t1 < f.width; ++t1) {
                    const Quaternion left(std::cos(w1 * t1), -std::sin(w1 * t1), 0, 0);
                    const Quaternion right(std::cos(w2 * t2), 0, -std::sin(w2 * t2), 0);
                    acc += left * f.at(t2, t1) * right;
                }
            }
            s.at(row, col) = acc;
        }
    }
    return s;
}

// Periodic discrete Hilbert kernel: inverse DFT of -i sgn(k) with sgn 0 at DC and Nyquist.
std::vector<double> hilbert_kernel(int n) {
    std::vector<double> h(n, 0.0);
    for (int t = 0; t < n; ++t) {
        for (int k = 1; 2 * k < n; ++k) h[t] += 2.0 / n * std::sin(2.0 * kPi * k * t / n);
    }
    return h;
}

double max_component_diff(const QuaternionField& a, const QuaternionField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, max_abs_diff(a.data[i], b.data[i]));
    return m;
}

QuaternionField real_field(int n, double (*fn)(double, double, int)) {
    ScalarField f(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) f.at(r, c) = fn(c, r, n);
    }
    return QuaternionField::from_real(f);
}

double cos1(double t1, double, int n) { return std::cos(2 * kPi * t1 / n); }
double sin1(double t1, double, int n) { return std::sin(2 * kPi * t1 / n); }
double coscos(double t1, double t2, int n) { return std::cos(2 * kPi * t1 / n) * std::cos(2 * kPi * t2 / n); }
double sinsin(double t1, double t2, int n) { return std::sin(2 * kPi * t1 / n) * std::sin(2 * kPi * t2 / n); }

}  // namespace

TEST(Qft, MatchesBruteForceSum) {
    for (auto [h, w] : {std::pair{6, 8}, std::pair{5, 7}, std::pair{8, 3}}) {
        const QuaternionField f = random_qfield(h, w, 100 + h * w);
        const QSpectrum fast = qft2(f);
        const QSpectrum slow = brute_force_qft(f);
        for (std::size_t i = 0; i < fast.data.size(); ++i) {
            EXPECT_LE(max_abs_diff(fast.data[i], slow.data[i]), 1e-11) << h << "x" << w << " bin " << i;
        }
    }
}

TEST(Qft, DeltaHasFlatSpectrum) {
    QuaternionField f(8, 8);
    f.at(0, 0) = Quaternion::identity();
    const QSpectrum s = qft2(f);
    for (const Quaternion& q : s.data) EXPECT_LE(max_abs_diff(q, Quaternion::identity()), 1e-15);
    EXPECT_LE(max_component_diff(iqft2(s), f), 1e-15);
}

TEST(Qft, ZeroSpectrumGivesZeroField) {
    QSpectrum s;
    s.height = 4;
    s.width = 6;
    s.data.assign(24, Quaternion());
    const QuaternionField f = iqft2(s);
    for (const Quaternion& q : f.data) EXPECT_EQ(q, Quaternion());
}

TEST(Qft, CosineLineSpectrum) {
    const int n = 16;
    const QSpectrum s = qft2(real_field(n, cos1));
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            const bool line = s.freq_index_2(row) == 0 && std::abs(s.freq_index_1(col)) == 1;
            const double mag = modulus(s.at(row, col));
            if (line) {
                EXPECT_NEAR(mag, n * n / 2.0, 1e-10);
            } else {
                EXPECT_LE(mag, 1e-11);
            }
        }
    }
}

TEST(Qft, RoundTrip) {
    const QuaternionField f = random_qfield(16, 16, 3);
    EXPECT_LE(max_component_diff(iqft2(qft2(f)), f), 1e-10);
    const QuaternionField g = random_qfield(9, 12, 4);
    EXPECT_LE(max_component_diff(iqft2(qft2(g)), g), 1e-10);
}

TEST(Qft, Plancherel) {
    const QuaternionField f = random_qfield(12, 10, 8);
    const QSpectrum s = qft2(f);
    double ef = 0.0;
    double es = 0.0;
    for (const Quaternion& q : f.data) ef += norm_squared(q);
    for (const Quaternion& q : s.data) es += norm_squared(q);
    EXPECT_NEAR(es / (12.0 * 10.0), ef, 1e-10 * ef);
}

TEST(Qft, DiscreteSign) {
    EXPECT_EQ(discrete_sign(0, 8), 0);
    EXPECT_EQ(discrete_sign(-4, 8), 0);
    EXPECT_EQ(discrete_sign(3, 8), 1);
    EXPECT_EQ(discrete_sign(-3, 8), -1);
    EXPECT_EQ(discrete_sign(-3, 7), -1);
    EXPECT_EQ(discrete_sign(3, 7), 1);
}

TEST(Hilbert, CosineToSine) {
    const int n = 64;
    const QuaternionField h = hilbert_partial_1(real_field(n, cos1));
    EXPECT_LE(max_component_diff(h, real_field(n, sin1)), 1e-10);
}

TEST(Hilbert, TotalOfSeparableCosines) {
    const int n = 64;
    const QuaternionField h = hilbert_total(real_field(n, coscos));
    EXPECT_LE(max_component_diff(h, real_field(n, sinsin)), 1e-10);
}

TEST(Hilbert, TotalMatchesDirectPrincipalValueSum) {
    const int n = 32;
    const std::vector<double> k = hilbert_kernel(n);
    const QuaternionField f = real_field(n, coscos);
    QuaternionField direct(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            double acc = 0.0;
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) acc += k[a] * k[b] * f.at((r - a + n) % n, (c - b + n) % n).q0;
            }
            direct.at(r, c) = Quaternion::real(acc);
        }
    }
    EXPECT_LE(max_component_diff(direct, real_field(n, sinsin)), 1e-10);
    EXPECT_LE(max_component_diff(hilbert_total(f), direct), 1e-10);
}

TEST(Hilbert, PartialMatchesDirectSumOnRandomField) {
    const int n = 16;
    const ScalarField img = test::random_image(n, n, 21);
    const std::vector<double> k = hilbert_kernel(n);
    const QuaternionField h1 = hilbert_partial_1(QuaternionField::from_real(img));
    const QuaternionField h2 = hilbert_partial_2(QuaternionField::from_real(img));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            double a1 = 0.0;
            double a2 = 0.0;
            for (int m = 0; m < n; ++m) {
                a1 += k[m] * img.at(r, (c - m + n) % n);
                a2 += k[m] * img.at((r - m + n) % n, c);
            }
            // H1 carries the i unit, H2 the j unit.
            EXPECT_NEAR(h1.at(r, c).q1, 0.0, 1e-9);
            EXPECT_NEAR(h1.at(r, c).q0, a1, 1e-9);
            EXPECT_NEAR(h2.at(r, c).q0, a2, 1e-9);
        }
    }
}

TEST(Hilbert, ConstantMapsToZero) {
    ScalarField c(8, 8);
    c += 3.0;
    const QuaternionField f = QuaternionField::from_real(c);
    for (const QuaternionField& h : {hilbert_partial_1(f), hilbert_partial_2(f), hilbert_total(f)}) {
        for (const Quaternion& q : h.data) EXPECT_LE(modulus(q), 1e-13);
    }
    const QuaternionField g = analytic_signal(f);
    for (const Quaternion& q : g.data) EXPECT_LE(max_abs_diff(q, Quaternion::real(3.0)), 1e-13);
}

TEST(Hilbert, PartialTwiceIsMinusIdentityWithoutDcOrNyquist) {
    const int n = 16;
    std::mt19937_64 rng(31);
    QuaternionField f(n, n);
    // Sum of t1 modes 1 .. n/2 - 1 with quaternion amplitudes and arbitrary t2 profiles.
    for (int k = 1; k < n / 2; ++k) {
        const Quaternion amp = test::random_quaternion(rng);
        const double phase = std::uniform_real_distribution<double>(0, 2 * kPi)(rng);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                f.at(r, c) += amp * (std::cos(2 * kPi * k * c / n + phase) * (1.0 + 0.1 * r * k));
            }
        }
    }
    QuaternionField neg = f;
    for (Quaternion& q : neg.data) q = -q;
    EXPECT_LE(max_component_diff(hilbert_partial_1(hilbert_partial_1(f)), neg), 1e-10);
}

TEST(AnalyticSignal, SeparableCosines) {
    const int n = 32;
    const QuaternionField g = analytic_signal(real_field(n, coscos));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const Quaternion e1(std::cos(2 * kPi * c / n), std::sin(2 * kPi * c / n), 0, 0);
            const Quaternion e2(std::cos(2 * kPi * r / n), 0, std::sin(2 * kPi * r / n), 0);
            EXPECT_LE(max_abs_diff(g.at(r, c), e1 * e2), 1e-10);
        }
    }
}

TEST(AnalyticSignal, ScalarPartRecoversSignal) {
    const ScalarField img = test::random_image(16, 16, 17);
    const QuaternionField g = analytic_signal(QuaternionField::from_real(img));
    EXPECT_LE(test::max_abs_diff(g.component(0), img), 1e-10);
    const QuaternionField again = analytic_signal(QuaternionField::from_real(g.component(0)));
    EXPECT_LE(max_component_diff(again, g), 1e-10);
}

TEST(SpectrumCheck, RandomFieldsAreOneSided) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const OneSidedReport rep = spectrum_onesided_check(test::random_image(32, 32, seed));
        EXPECT_LT(rep.max_leak, 1e-10);
        EXPECT_LT(rep.factor_error, 1e-10);
        EXPECT_GT(rep.spectrum_peak, 0.0);
    }
}

TEST(SpectrumCheck, ZeroField) {
    const OneSidedReport rep = spectrum_onesided_check(ScalarField(8, 8));
    EXPECT_EQ(rep.max_leak, 0.0);
    EXPECT_EQ(rep.factor_error, 0.0);
}

TEST(SpectrumCheck, CosineIsAmplifiedFourTimes) {
    const int n = 16;
    const QuaternionField f = real_field(n, coscos);
    const OneSidedReport rep = spectrum_onesided_check(f.component(0));
    EXPECT_LT(rep.max_leak, 1e-12);
    const QSpectrum s = qft2(f);
    const QSpectrum sa = qft2(analytic_signal(f));
    const int row = n / 2 + 1;
    const int col = n / 2 + 1;
    EXPECT_GT(modulus(s.at(row, col)), 1.0);
    EXPECT_LE(max_abs_diff(sa.at(row, col), 4.0 * s.at(row, col)), 1e-10);
}
