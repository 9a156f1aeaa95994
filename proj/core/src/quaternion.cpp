#include "qhardy/quaternion.hpp"

#include <algorithm>
#include <stdexcept>

namespace qhardy {

Quaternion inverse(const Quaternion& q) {
    const double n2 = norm_squared(q);
    if (!(n2 > 0.0)) {
        throw std::domain_error("inverse of zero quaternion");
    }
    return conjugate(q) * (1.0 / n2);
}

Quaternion exp_pure(const Quaternion& v) {
    if (v.q0 != 0.0) {
        throw std::invalid_argument("exp_pure: argument has a nonzero scalar part");
    }
    const double angle = modulus(v);
    if (angle < 1e-12) {
        return {1.0, v.q1, v.q2, v.q3};
    }
    const double s = std::sin(angle) / angle;
    return {std::cos(angle), v.q1 * s, v.q2 * s, v.q3 * s};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.q0 << ", " << q.q1 << ", " << q.q2 << ", " << q.q3 << ')';
}

}  // namespace qhardy
