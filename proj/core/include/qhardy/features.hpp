/**
 * @file features.hpp
 * @brief Polar-form local features of a Hardy frame and generalized Cauchy-Riemann residuals
 *
 * For f = r + m with m = i m1 + j m2 + k m3:
 *
 *     A = sqrt(r^2 + |m|^2)         local amplitude
 *     a = ln A                      local attenuation
 *     theta = atan2(|m|, r)         local phase, in [0, pi]
 *     p = (m / |m|) theta           local phase vector
 *
 * so that f = A exp((m/|m|) theta) = exp(a + p).
 */

#pragma once

#include "qhardy/quaternion.hpp"
#include "qhardy/scale_space.hpp"

#include <array>
#include <optional>

namespace qhardy {

struct FeatureField {
    ScalarField amplitude;    ///< A >= 0
    ScalarField attenuation;  ///< a = ln max(A, eps)
    ScalarField theta;        ///< [0, pi]
    ScalarField p1;           ///< phase vector, i component
    ScalarField p2;           ///< phase vector, j component
    ScalarField p3;           ///< phase vector, k component
    double y1 = 0.0;
    double y2 = 0.0;
};

/// Relative degeneracy guard: 1e-9 * max A over the frame (1e-300 for an all-zero frame).
double default_eps(const HardyFrame& frame);

/// eps guards the logarithm and the unit direction m/|m| (p := 0 where |m| < eps).
/// When eps is omitted, default_eps(frame) is used.
FeatureField local_features(const HardyFrame& frame, std::optional<double> eps = std::nullopt);

/// r = A cos theta, m_k = A sin theta p_k / theta (m = 0 where theta <= eps).
HardyFrame reconstruct(const FeatureField& ff, double eps = 1e-12);

/// Central-difference t1 / t2 derivatives of all four fields.
HardyFrame frame_diff_t1(const HardyFrame& frame);
HardyFrame frame_diff_t2(const HardyFrame& frame);

/// The phase bracket shared by the Cauchy-Riemann residuals and the phase-based detectors:
///
///   (r dm_k - m_k dr) / A^2 - sin^2(theta) d(m_a/|m|) m_b/|m| + sin^2(theta) d(m_b/|m|) m_a/|m|
///
/// with `main` = k in {1, 2, 3} and (a, b) the cross pair. Unit-direction derivatives
/// use the quotient rule; the sin^2 cross terms are dropped where |m| < eps.
ScalarField phase_bracket(const HardyFrame& frame, const HardyFrame& deriv, int main,
                          std::array<int, 2> cross, double eps);

/// d a / d(variable) = (r dr + m . dm) / A^2, zero where A <= eps.
ScalarField attenuation_derivative(const HardyFrame& frame, const HardyFrame& deriv, double eps);

struct ResidualChannel {
    ScalarField field;
    double max_interior = 0.0;
};

struct CRResidualReport {
    ResidualChannel res_t1;  ///< da/dt1 - {bracket in y1 derivatives, m1 main, cross (m2, m3)}
    ResidualChannel res_y1;  ///< da/dy1 + {bracket in t1 derivatives, m1 main, cross (m2, m3)}
    ResidualChannel res_t2;  ///< da/dt2 - {bracket in y2 derivatives, m2 main, cross (m1, m3)}
    ResidualChannel res_y2;  ///< da/dy2 + {bracket in t2 derivatives, m2 main, cross (m1, m3)}
    /// Vector-part conditions: Vec_j / Vec_k of (d_t1 e^p) e^-p + i (d_y1 e^p) e^-p and
    /// Vec_i / Vec_k of e^-p d_t2 e^p + e^-p (d_y2 e^p) j.
    ResidualChannel vec_j_1;
    ResidualChannel vec_k_1;
    ResidualChannel vec_i_2;
    ResidualChannel vec_k_2;
    int margin = 0;            ///< border band (samples) excluded from the maxima
    int degenerate_count = 0;  ///< interior pixels with A <= eps, excluded from the maxima
};

struct CROptions {
    /// Lift construction; unset means LiftOptions::untruncated().
    std::optional<LiftOptions> lift;
    /// Excluded border band in grid units; unset means 2 * max(y1, y2).
    std::optional<double> border;
    std::optional<double> eps;
};

/// Evaluates the generalized Cauchy-Riemann relations on the discrete lift of `img`:
/// t-derivatives by central differences, y-derivatives from hardy_lift_derivs().
CRResidualReport cr_residuals(const ScalarField& img, double y1, double y2,
                              const CROptions& options = {});
/// Same evaluation on an existing frame and its scale derivatives.
CRResidualReport cr_residuals(const HardyFrame& frame, const HardyDerivs& derivs, int margin,
                              double eps);

/// The four restated relations written with the phase vector p:
///   c1 = da/dt1 - Vec_i[dp/dy1 - theta dn/dy1 + sin cos dn/dy1 - sin^2 (dn/dy1) n]
///   c2 = da/dt2 - Vec_j[dp/dy2 - theta dn/dy2 + sin cos dn/dy2 - sin^2 n (dn/dy2)]
///   c3 = da/dy1 + Vec_i[dp/dt1 - theta dn/dt1 + sin cos dn/dt1 - sin^2 (dn/dt1) n]
///   c4 = da/dy2 + Vec_j[dp/dt2 - theta dn/dt2 + sin cos dn/dt2 - sin^2 n (dn/dt2)]
/// with n = m/|m| and dp = dn theta + n dtheta. Zero where |m| < eps.
struct CorollaryResiduals {
    ScalarField c1;
    ScalarField c2;
    ScalarField c3;
    ScalarField c4;
};
CorollaryResiduals corollary_residuals(const HardyFrame& frame, const HardyDerivs& derivs,
                                       double eps);

/// E(s1, s2) = s1* s2* / (|s1|^2 |s2|^2) with s1 = t1 + i y1, s2 = t2 + j y2.
/// Throws std::domain_error when either argument is zero.
Quaternion cauchy_kernel_eval(double t1, double y1, double t2, double y2);

/// Closed form of a + p for the Cauchy kernel example:
///   ln|s1| + ln|s2| + v/|v| atan2(|v|, t1 t2),   v = -i t2 y1 - j t1 y2 + k y1 y2.
Quaternion cauchy_log_features(double t1, double y1, double t2, double y2);

struct CauchyCRResult {
    Quaternion left;   ///< (d/dt1 + i d/dy1) g
    Quaternion right;  ///< g (d/dt2 + j d/dy2)
};

/// Applies the generalized Cauchy-Riemann operators to g = cauchy_log_features with
/// central differences of step h around (t1, y1, t2, y2).
CauchyCRResult cauchy_log_cr(double t1, double y1, double t2, double y2, double h);

}  // namespace qhardy
