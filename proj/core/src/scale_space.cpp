#include "qhardy/scale_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qhardy {

namespace {

constexpr double kInvPi = 1.0 / std::numbers::pi;

void validate_scale(double y, double spacing) {
    if (!(y > 0.0)) {
        throw std::domain_error("scale must be positive, got " + std::to_string(y));
    }
    if (y < 0.01 * spacing) {
        throw std::domain_error("scale " + std::to_string(y) + " is below 0.01 * spacing");
    }
}

int half_width(const KernelSpec& spec, double spacing) {
    // small slack so that R = n h exactly keeps the endpoint tap
    return static_cast<int>(std::floor(spec.truncation_radius / spacing + 1e-9));
}

double pointwise(const KernelSpec& spec, KernelKind kind, double t) {
    return kind == KernelKind::poisson ? poisson_kernel(spec, t) : conj_poisson_kernel(spec, t);
}

// out(r, c) = sum_n k[n] in(r, c - n) along rows, replicate padding
void filter_rows(const ScalarField& in, std::span<const double> k, ScalarField& out) {
    const int w = in.width();
    const int half = static_cast<int>(k.size() / 2);
    std::vector<double> padded(static_cast<std::size_t>(w) + 2 * half);
    for (int r = 0; r < in.height(); ++r) {
        for (int c = -half; c < w + half; ++c) {
            padded[c + half] = in.at(r, std::clamp(c, 0, w - 1));
        }
        for (int c = 0; c < w; ++c) {
            // padded index of in(r, c - n) is c - n + half
            double acc = 0.0;
            const double* src = padded.data() + c + 2 * half;
            for (std::size_t i = 0; i < k.size(); ++i) {
                acc += k[i] * src[-static_cast<std::ptrdiff_t>(i)];
            }
            out.at(r, c) = acc;
        }
    }
}

void filter_cols(const ScalarField& in, std::span<const double> k, ScalarField& out) {
    const int h = in.height();
    const int w = in.width();
    const int half = static_cast<int>(k.size() / 2);
    std::vector<double> acc(static_cast<std::size_t>(w));
    for (int r = 0; r < h; ++r) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t i = 0; i < k.size(); ++i) {
            const int n = static_cast<int>(i) - half;
            const int src = std::clamp(r - n, 0, h - 1);
            const double kv = k[i];
            for (int c = 0; c < w; ++c) acc[c] += kv * in.at(src, c);
        }
        for (int c = 0; c < w; ++c) out.at(r, c) = acc[c];
    }
}

void check_kernel(std::span<const double> k, int dim, const char* axis) {
    if (k.size() % 2 == 0) {
        throw std::invalid_argument(std::string("separable_filter: ") + axis +
                                    " kernel must have an odd number of taps");
    }
    if (k.size() > 2 * static_cast<std::size_t>(dim)) {
        throw std::invalid_argument(std::string("separable_filter: ") + axis + " kernel of " +
                                    std::to_string(k.size()) + " taps exceeds twice the dimension " +
                                    std::to_string(dim));
    }
}

ScalarField rows_pass(const ScalarField& img, std::span<const double> k) {
    ScalarField out(img.height(), img.width(), img.spacing());
    filter_rows(img, k, out);
    return out;
}

ScalarField cols_pass(const ScalarField& img, std::span<const double> k) {
    ScalarField out(img.height(), img.width(), img.spacing());
    filter_cols(img, k, out);
    return out;
}

struct AxisKernels {
    std::vector<double> p;
    std::vector<double> q;
};

AxisKernels axis_kernels(const LiftOptions& opts, double y, int extent, double h, bool derivative) {
    const KernelSpec spec = opts.kernel_for(y, extent, h);
    validate(spec);
    if (derivative) {
        return {sample_kernel_dscale(spec, KernelKind::poisson, h),
                sample_kernel_dscale(spec, KernelKind::conj_poisson, h)};
    }
    return {sample_kernel(spec, KernelKind::poisson, h),
            sample_kernel(spec, KernelKind::conj_poisson, h)};
}

HardyFrame assemble(const ScalarField& img, const AxisKernels& k1, const AxisKernels& k2, double y1,
                    double y2) {
    check_kernel(k1.p, img.width(), "t1");
    check_kernel(k2.p, img.height(), "t2");
    const ScalarField row_p = rows_pass(img, k1.p);
    const ScalarField row_q = rows_pass(img, k1.q);
    HardyFrame f;
    f.r = cols_pass(row_p, k2.p);
    f.m1 = cols_pass(row_q, k2.p);
    f.m2 = cols_pass(row_p, k2.q);
    f.m3 = cols_pass(row_q, k2.q);
    f.y1 = y1;
    f.y2 = y2;
    return f;
}

}  // namespace

void validate(const KernelSpec& spec) {
    if (!(spec.scale > 0.0)) {
        throw std::domain_error("KernelSpec: scale must be positive");
    }
    if (!(spec.truncation_radius >= 4.0 * spec.scale)) {
        throw std::domain_error("KernelSpec: truncation radius must be at least 4 * scale");
    }
}

double poisson_kernel(const KernelSpec& spec, double t) {
    if (std::abs(t) > spec.truncation_radius) return 0.0;
    const double y = spec.scale;
    return kInvPi * y / (y * y + t * t);
}

double conj_poisson_kernel(const KernelSpec& spec, double t) {
    if (std::abs(t) > spec.truncation_radius) return 0.0;
    const double y = spec.scale;
    return kInvPi * t / (y * y + t * t);
}

double kernel_dscale(const KernelSpec& spec, KernelKind kind, double t) {
    if (std::abs(t) > spec.truncation_radius) return 0.0;
    const double y = spec.scale;
    const double d = y * y + t * t;
    if (kind == KernelKind::poisson) {
        return kInvPi * (t * t - y * y) / (d * d);
    }
    return -kInvPi * 2.0 * y * t / (d * d);
}

std::vector<double> sample_kernel(const KernelSpec& spec, KernelKind kind, double spacing) {
    validate(spec);
    const int half = half_width(spec, spacing);
    std::vector<double> taps(2 * static_cast<std::size_t>(half) + 1);
    for (int n = -half; n <= half; ++n) {
        taps[n + half] = spacing * pointwise(spec, kind, n * spacing);
    }
    if (kind == KernelKind::conj_poisson) {
        // exact odd symmetry
        taps[half] = 0.0;
        for (int n = 1; n <= half; ++n) taps[half - n] = -taps[half + n];
    } else if (spec.normalize) {
        double sum = 0.0;
        for (double v : taps) sum += v;
        for (double& v : taps) v /= sum;
    }
    return taps;
}

std::vector<double> sample_kernel_dscale(const KernelSpec& spec, KernelKind kind, double spacing) {
    validate(spec);
    const int half = half_width(spec, spacing);
    std::vector<double> d(2 * static_cast<std::size_t>(half) + 1);
    for (int n = -half; n <= half; ++n) {
        d[n + half] = spacing * kernel_dscale(spec, kind, n * spacing);
    }
    if (kind == KernelKind::conj_poisson) {
        d[half] = 0.0;
        for (int n = 1; n <= half; ++n) d[half - n] = -d[half + n];
        return d;
    }
    if (spec.normalize) {
        std::vector<double> p(d.size());
        for (int n = -half; n <= half; ++n) {
            p[n + half] = spacing * poisson_kernel(spec, n * spacing);
        }
        double s = 0.0;
        double ds = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            s += p[i];
            ds += d[i];
        }
        for (std::size_t i = 0; i < d.size(); ++i) {
            d[i] = d[i] / s - p[i] * ds / (s * s);
        }
    }
    return d;
}

ScalarField separable_filter(const ScalarField& img, std::span<const double> k_t1,
                             std::span<const double> k_t2) {
    check_kernel(k_t1, img.width(), "t1");
    check_kernel(k_t2, img.height(), "t2");
    return cols_pass(rows_pass(img, k_t1), k_t2);
}

KernelSpec LiftOptions::kernel_for(double scale, int extent, double spacing) const {
    if (full_support) {
        return {scale, std::max((extent - 1) * spacing, 4.0 * scale), normalize};
    }
    const double radius = truncation_radius ? *truncation_radius : truncation_factor * scale;
    return {scale, radius, normalize};
}

LiftOptions LiftOptions::untruncated() {
    LiftOptions opts;
    opts.full_support = true;
    opts.normalize = false;
    return opts;
}

LiftOptions LiftOptions::full() {
    LiftOptions opts;
    opts.full_support = true;
    return opts;
}

HardyFrame hardy_lift(const ScalarField& img, double y1, double y2, const LiftOptions& opts) {
    validate_scale(y1, img.spacing());
    validate_scale(y2, img.spacing());
    const double h = img.spacing();
    return assemble(img, axis_kernels(opts, y1, img.width(), h, false),
                    axis_kernels(opts, y2, img.height(), h, false), y1, y2);
}

HardyDerivs hardy_lift_derivs(const ScalarField& img, double y1, double y2,
                              const LiftOptions& opts) {
    validate_scale(y1, img.spacing());
    validate_scale(y2, img.spacing());
    const double h = img.spacing();
    const AxisKernels k1 = axis_kernels(opts, y1, img.width(), h, false);
    const AxisKernels k2 = axis_kernels(opts, y2, img.height(), h, false);
    const AxisKernels dk1 = axis_kernels(opts, y1, img.width(), h, true);
    const AxisKernels dk2 = axis_kernels(opts, y2, img.height(), h, true);
    return {assemble(img, dk1, k2, y1, y2), assemble(img, k1, dk2, y1, y2)};
}

}  // namespace qhardy
