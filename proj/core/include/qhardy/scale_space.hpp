/**
 * @file scale_space.hpp
 * @brief Poisson / conjugate-Poisson scale space and the discrete Hardy lift
 *
 * A real image r(t1, t2) is lifted to the four fields
 *
 *     r  = r * P_{y1}(t1) P_{y2}(t2)
 *     m1 = r * Q_{y1}(t1) P_{y2}(t2)
 *     m2 = r * P_{y1}(t1) Q_{y2}(t2)
 *     m3 = r * Q_{y1}(t1) Q_{y2}(t2)
 *
 * with P_y(t) = (1/pi) y / (y^2 + t^2) and Q_y(t) = (1/pi) t / (y^2 + t^2).
 * Together they sample f = r + i m1 + j m2 + k m3, which is left-holomorphic
 * in s1 = t1 + i y1 and right-holomorphic in s2 = t2 + j y2.
 *
 * Convolutions are spatial, truncated at |t| <= R, separable, and use
 * replicate padding at the image border.
 */

#pragma once

#include "qhardy/scalar_field.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qhardy {

enum class KernelKind { poisson, conj_poisson };

struct KernelSpec {
    double scale = 1.0;              ///< y > 0, same units as the grid spacing
    double truncation_radius = 8.0;  ///< R >= 4 y; taps with |t| > R are dropped
    bool normalize = true;           ///< rescale sampled Poisson taps to sum to 1 (Q is never rescaled)

    /// R = 8 y.
    static KernelSpec with_default_truncation(double scale, bool normalize = true) {
        return {scale, 8.0 * scale, normalize};
    }
};

/// Throws std::domain_error unless scale > 0 and truncation_radius >= 4 * scale.
void validate(const KernelSpec& spec);

/// (1/pi) y / (y^2 + t^2), zero for |t| > R. Pointwise; `normalize` only affects sampled taps.
double poisson_kernel(const KernelSpec& spec, double t);
/// (1/pi) t / (y^2 + t^2), zero for |t| > R.
double conj_poisson_kernel(const KernelSpec& spec, double t);
/// Closed-form d/dy of the pointwise kernel, zero for |t| > R.
double kernel_dscale(const KernelSpec& spec, KernelKind kind, double t);

/// Taps h * K(n h) for integer n with |n h| <= R, center tap in the middle.
/// Normalized Poisson taps are divided by their sum.
std::vector<double> sample_kernel(const KernelSpec& spec, KernelKind kind, double spacing);

/// d/dy of sample_kernel(). For normalized Poisson taps this is the quotient-rule
/// derivative of (taps / sum(taps)), so it sums to zero.
std::vector<double> sample_kernel_dscale(const KernelSpec& spec, KernelKind kind, double spacing);

/// Correlates `k_t1` along rows (the t1 axis) and then `k_t2` along columns
/// (the t2 axis): out(t) = sum_n k[n] * img(t - n h), replicate padding.
/// Kernels must have odd length no longer than twice the matching dimension.
ScalarField separable_filter(const ScalarField& img, std::span<const double> k_t1,
                             std::span<const double> k_t2);

/// Kernel construction for a lift.
struct LiftOptions {
    /// R = truncation_factor * y unless `truncation_radius` or `full_support` is set.
    double truncation_factor = 8.0;
    /// Absolute truncation radius (grid units), overrides the factor.
    std::optional<double> truncation_radius;
    /// Per-axis R = max((extent - 1) * h, 4 y): every output sample sees the whole
    /// image along that axis, so no sample lies outside the kernel support. Overrides both above.
    bool full_support = false;
    bool normalize = true;

    /// `extent` is the number of samples along the axis the kernel runs on.
    KernelSpec kernel_for(double scale, int extent, double spacing) const;

    /// Full-support, unnormalized kernels: the lift is then the sampled Poisson
    /// integral of the replicate-extended image, truncated only at the image extent.
    static LiftOptions untruncated();
    /// Full-support, normalized kernels.
    static LiftOptions full();
};

struct HardyFrame {
    ScalarField r;
    ScalarField m1;
    ScalarField m2;
    ScalarField m3;
    double y1 = 0.0;
    double y2 = 0.0;

    int height() const { return r.height(); }
    int width() const { return r.width(); }
    double spacing() const { return r.spacing(); }
};

/// Scale derivatives of all four lifted fields.
struct HardyDerivs {
    HardyFrame d_y1;
    HardyFrame d_y2;
};

/// Lifts `img` to scales (y1, y2). Throws std::domain_error for y <= 0 or
/// y < 0.01 * spacing.
HardyFrame hardy_lift(const ScalarField& img, double y1, double y2, const LiftOptions& opts = {});

/// Exact scale derivatives of hardy_lift() with the same options: the kernel along
/// the differentiated axis is replaced with its sampled d/dy.
HardyDerivs hardy_lift_derivs(const ScalarField& img, double y1, double y2,
                              const LiftOptions& opts = {});

}  // namespace qhardy
