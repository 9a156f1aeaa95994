#include "qhardy/quaternion.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <stdexcept>

using namespace qhardy;

namespace {

void expect_quat_near(const Quaternion& a, const Quaternion& b, double tol) {
    EXPECT_LE(max_abs_diff(a, b), tol) << a << " vs " << b;
}

}  // namespace

TEST(Quaternion, HamiltonUnitProducts) {
    EXPECT_EQ(Quaternion(0, 1, 0, 0) * Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1));
    EXPECT_EQ(Quaternion(0, 0, 1, 0) * Quaternion(0, 1, 0, 0), Quaternion(0, 0, 0, -1));
    const Quaternion i = Quaternion::unit_i();
    const Quaternion j = Quaternion::unit_j();
    const Quaternion k = Quaternion::unit_k();
    EXPECT_EQ(i * i, Quaternion::real(-1));
    EXPECT_EQ(j * j, Quaternion::real(-1));
    EXPECT_EQ(k * k, Quaternion::real(-1));
    EXPECT_EQ(i * j * k, Quaternion::real(-1));
    EXPECT_EQ(j * k, i);
    EXPECT_EQ(k * i, j);
}

TEST(Quaternion, ProductWithInverseIsIdentity) {
    const Quaternion q(1, 1, 1, 1);
    expect_quat_near(q * inverse(q), Quaternion::identity(), 1e-15);
    std::mt19937_64 rng(7);
    for (int n = 0; n < 1000; ++n) {
        const Quaternion a = test::random_quaternion(rng, 10.0);
        expect_quat_near(a * inverse(a), Quaternion::identity(), 1e-12);
        expect_quat_near(inverse(a) * a, Quaternion::identity(), 1e-12);
    }
}

TEST(Quaternion, ConjugateModulusInverse) {
    EXPECT_EQ(conjugate(Quaternion(1, 2, 3, 4)), Quaternion(1, -2, -3, -4));
    EXPECT_DOUBLE_EQ(modulus(Quaternion(1, 1, 1, 1)), 2.0);
    EXPECT_EQ(inverse(Quaternion(0, 1, 0, 0)), Quaternion(0, -1, 0, 0));
    const auto p = parts(Quaternion(1, 2, 3, 4));
    EXPECT_EQ(p, (std::array<double, 4>{1, 2, 3, 4}));
    EXPECT_THROW(inverse(Quaternion()), std::domain_error);
}

TEST(Quaternion, ModulusSquaredIsComponentSum) {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 1000; ++n) {
        const Quaternion q = test::random_quaternion(rng, 5.0);
        const double s = q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3;
        EXPECT_NEAR(modulus(q) * modulus(q), s, 1e-13 * s);
    }
}

TEST(Quaternion, AlgebraLaws) {
    std::mt19937_64 rng(1234);
    for (int n = 0; n < 10000; ++n) {
        const Quaternion a = test::random_quaternion(rng);
        const Quaternion b = test::random_quaternion(rng);
        const Quaternion c = test::random_quaternion(rng);
        const double ab = modulus(a * b);
        EXPECT_LE(std::abs(ab - modulus(a) * modulus(b)), 1e-12 * std::max(1.0, ab));
        expect_quat_near((a * b) * c, a * (b * c), 1e-12);
        expect_quat_near(conjugate(a * b), conjugate(b) * conjugate(a), 1e-12);
    }
}

TEST(Quaternion, ExpPureExamples) {
    expect_quat_near(exp_pure(Quaternion(0, std::numbers::pi, 0, 0)), Quaternion(-1, 0, 0, 0), 1e-15);
    EXPECT_EQ(exp_pure(Quaternion()), Quaternion::identity());
    EXPECT_THROW(exp_pure(Quaternion(1, 0, 0, 0)), std::invalid_argument);
}

TEST(Quaternion, ExpPureOfOppositeIsInverse) {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 100; ++n) {
        Quaternion v = test::random_quaternion(rng, 4.0);
        v.q0 = 0.0;
        const Quaternion e = exp_pure(v);
        expect_quat_near(e * exp_pure(-v), Quaternion::identity(), 1e-12);
        EXPECT_NEAR(modulus(e), 1.0, 1e-12);
        // cos|v| + (v/|v|) sin|v| written out component by component
        const double nv = modulus(v);
        expect_quat_near(e, Quaternion(std::cos(nv), v.q1 / nv * std::sin(nv), v.q2 / nv * std::sin(nv),
                                       v.q3 / nv * std::sin(nv)),
                         1e-15);
    }
}

TEST(Quaternion, ExpPureSmallArgumentSeries) {
    const Quaternion v(0, 1e-14, -2e-14, 3e-14);
    const Quaternion e = exp_pure(v);
    EXPECT_NEAR(e.q0, 1.0, 1e-20);
    EXPECT_DOUBLE_EQ(e.q1, 1e-14);
    EXPECT_DOUBLE_EQ(e.q3, 3e-14);
}
