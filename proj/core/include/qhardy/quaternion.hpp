/**
 * @file quaternion.hpp
 * @brief Hamilton quaternion value type
 *
 * q = q0 + i q1 + j q2 + k q3 with i^2 = j^2 = k^2 = ijk = -1.
 * All operations are pure and constexpr-friendly where the math allows.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

namespace qhardy {

struct Quaternion {
    double q0 = 0.0;  ///< scalar part
    double q1 = 0.0;  ///< i part
    double q2 = 0.0;  ///< j part
    double q3 = 0.0;  ///< k part

    constexpr Quaternion() = default;
    constexpr Quaternion(double s, double i, double j, double k) : q0(s), q1(i), q2(j), q3(k) {}

    static constexpr Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }
    static constexpr Quaternion real(double s) { return {s, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion pure(double i, double j, double k) { return {0.0, i, j, k}; }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        q0 += o.q0; q1 += o.q1; q2 += o.q2; q3 += o.q3;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        q0 -= o.q0; q1 -= o.q1; q2 -= o.q2; q3 -= o.q3;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        q0 *= s; q1 *= s; q2 *= s; q3 *= s;
        return *this;
    }

    constexpr bool operator==(const Quaternion&) const = default;
};

/// Hamilton product. Not commutative.
constexpr Quaternion mul(const Quaternion& a, const Quaternion& b) {
    return {a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
            a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
            a.q0 * b.q2 - a.q1 * b.q3 + a.q2 * b.q0 + a.q3 * b.q1,
            a.q0 * b.q3 + a.q1 * b.q2 - a.q2 * b.q1 + a.q3 * b.q0};
}

constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) { return mul(a, b); }
constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.q0, -a.q1, -a.q2, -a.q3}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

constexpr Quaternion conjugate(const Quaternion& q) { return {q.q0, -q.q1, -q.q2, -q.q3}; }

constexpr double norm_squared(const Quaternion& q) {
    return q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3;
}

inline double modulus(const Quaternion& q) { return std::sqrt(norm_squared(q)); }

/// Throws std::domain_error for the zero quaternion.
Quaternion inverse(const Quaternion& q);

/// (Sc, Vec(i), Vec(j), Vec(k))
constexpr std::array<double, 4> parts(const Quaternion& q) { return {q.q0, q.q1, q.q2, q.q3}; }

constexpr double scalar_part(const Quaternion& q) { return q.q0; }
constexpr Quaternion vector_part(const Quaternion& q) { return {0.0, q.q1, q.q2, q.q3}; }

/// e^v = cos|v| + (v/|v|) sin|v| for a pure quaternion v.
/// Below |v| = 1e-12 the first-order series 1 + v is returned.
/// Throws std::invalid_argument if v has a nonzero scalar part.
Quaternion exp_pure(const Quaternion& v);

/// Largest absolute component difference.
inline double max_abs_diff(const Quaternion& a, const Quaternion& b) {
    return std::max({std::abs(a.q0 - b.q0), std::abs(a.q1 - b.q1), std::abs(a.q2 - b.q2),
                     std::abs(a.q3 - b.q3)});
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qhardy
