#include "qhardy/detectors.hpp"

#include "qhardy/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qhardy {

namespace {

ScalarField modulus_of_vector(const HardyFrame& f) {
    ScalarField out(f.height(), f.width(), f.spacing());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double a = f.m1.values()[i];
        const double b = f.m2.values()[i];
        const double c = f.m3.values()[i];
        out.values()[i] = std::sqrt(a * a + b * b + c * c);
    }
    return out;
}

// (r dr + |m| d|m|) / A^2 with precomputed derivative fields
ScalarField log_amplitude_rate(const HardyFrame& f, const ScalarField& mag, const ScalarField& dr,
                               const ScalarField& mag_dmag, double eps) {
    ScalarField out(f.height(), f.width(), f.spacing());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double r = f.r.values()[i];
        const double m = mag.values()[i];
        const double a2 = r * r + m * m;
        if (a2 <= eps * eps) continue;
        out.values()[i] = (r * dr.values()[i] + mag_dmag.values()[i]) / a2;
    }
    return out;
}

std::vector<double> gaussian_taps(double sigma) {
    if (!(sigma > 0.0)) throw std::domain_error("canny_gradient: sigma must be positive");
    const int half = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(2 * static_cast<std::size_t>(half) + 1);
    double sum = 0.0;
    for (int n = -half; n <= half; ++n) {
        const double v = std::exp(-0.5 * n * n / (sigma * sigma));
        taps[n + half] = v;
        sum += v;
    }
    for (double& v : taps) v /= sum;
    return taps;
}

// Zeroes responses at pixels whose 3x3 neighbourhood holds a zero of the lift (A <= eps).
// Logarithmic derivatives are unbounded next to such pixels; a lift truncated at R
// vanishes identically wherever the image is zero within R.
GradientMap mask_degenerate(const HardyFrame& f, ScalarField g1, ScalarField g2, double eps) {
    const int h = f.height();
    const int w = f.width();
    std::vector<char> zero(static_cast<std::size_t>(h) * w, 0);
    bool any = false;
    for (std::size_t i = 0; i < zero.size(); ++i) {
        const double a2 = f.r.values()[i] * f.r.values()[i] + f.m1.values()[i] * f.m1.values()[i] +
                          f.m2.values()[i] * f.m2.values()[i] + f.m3.values()[i] * f.m3.values()[i];
        zero[i] = a2 <= eps * eps;
        any = any || zero[i];
    }
    if (any) {
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                bool near_zero = false;
                for (int dr = -1; dr <= 1 && !near_zero; ++dr) {
                    for (int dc = -1; dc <= 1 && !near_zero; ++dc) {
                        const int rr = std::clamp(r + dr, 0, h - 1);
                        const int cc = std::clamp(c + dc, 0, w - 1);
                        near_zero = zero[static_cast<std::size_t>(rr) * w + cc] != 0;
                    }
                }
                if (near_zero) {
                    g1.at(r, c) = 0.0;
                    g2.at(r, c) = 0.0;
                }
            }
        }
    }
    return GradientMap::from_components(std::move(g1), std::move(g2));
}

}  // namespace

GradientMap GradientMap::from_components(ScalarField g1, ScalarField g2) {
    require_same_shape(g1, g2, "GradientMap");
    GradientMap gm;
    gm.magnitude = ScalarField(g1.height(), g1.width(), g1.spacing());
    gm.orientation = gm.magnitude;
    for (std::size_t i = 0; i < g1.size(); ++i) {
        const double a = g1.values()[i];
        const double b = g2.values()[i];
        gm.magnitude.values()[i] = std::sqrt(a * a + b * b);
        gm.orientation.values()[i] = std::atan2(b, a);
    }
    gm.g1 = std::move(g1);
    gm.g2 = std::move(g2);
    return gm;
}

std::string_view to_string(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::qdla: return "qdla";
        case DetectorKind::mqdla: return "mqdla";
        case DetectorKind::sdla: return "sdla";
        case DetectorKind::msdla: return "msdla";
        case DetectorKind::sobel: return "sobel";
        case DetectorKind::canny: return "canny";
    }
    return "unknown";
}

DetectorKind parse_detector(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (DetectorKind k : {DetectorKind::qdla, DetectorKind::mqdla, DetectorKind::sdla,
                           DetectorKind::msdla, DetectorKind::sobel, DetectorKind::canny}) {
        if (lower == to_string(k)) return k;
    }
    throw std::invalid_argument("unknown detector '" + std::string(name) +
                                "' (expected qdla|mqdla|sdla|msdla|sobel|canny)");
}

bool uses_hardy_frame(DetectorKind kind) {
    return kind != DetectorKind::sobel && kind != DetectorKind::canny;
}

bool needs_scale_derivs(DetectorKind kind) {
    return kind == DetectorKind::mqdla || kind == DetectorKind::sdla;
}

GradientMap qdla(const HardyFrame& frame, double eps) {
    const ScalarField mag = modulus_of_vector(frame);
    ScalarField mag_dmag1 = diff_t1(mag);
    ScalarField mag_dmag2 = diff_t2(mag);
    for (std::size_t i = 0; i < mag.size(); ++i) {
        mag_dmag1.values()[i] *= mag.values()[i];
        mag_dmag2.values()[i] *= mag.values()[i];
    }
    return mask_degenerate(frame, log_amplitude_rate(frame, mag, diff_t1(frame.r), mag_dmag1, eps),
                           log_amplitude_rate(frame, mag, diff_t2(frame.r), mag_dmag2, eps), eps);
}

GradientMap mqdla(const HardyFrame& frame, const HardyDerivs& derivs, double eps) {
    return mask_degenerate(frame, phase_bracket(frame, derivs.d_y1, 1, {2, 3}, eps),
                           phase_bracket(frame, derivs.d_y2, 2, {1, 3}, eps), eps);
}

GradientMap sdla(const HardyFrame& frame, const HardyDerivs& derivs, double eps) {
    const ScalarField mag = modulus_of_vector(frame);
    // |m| d|m|/dy = m . dm/dy
    const auto dot = [&](const HardyFrame& d) {
        ScalarField out(frame.height(), frame.width(), frame.spacing());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out.values()[i] = frame.m1.values()[i] * d.m1.values()[i] +
                              frame.m2.values()[i] * d.m2.values()[i] +
                              frame.m3.values()[i] * d.m3.values()[i];
        }
        return out;
    };
    return mask_degenerate(frame, log_amplitude_rate(frame, mag, derivs.d_y1.r, dot(derivs.d_y1), eps),
                           log_amplitude_rate(frame, mag, derivs.d_y2.r, dot(derivs.d_y2), eps), eps);
}

GradientMap msdla(const HardyFrame& frame, double eps) {
    ScalarField g1 = phase_bracket(frame, frame_diff_t1(frame), 1, {2, 3}, eps);
    ScalarField g2 = phase_bracket(frame, frame_diff_t2(frame), 2, {1, 3}, eps);
    g1 *= -1.0;
    g2 *= -1.0;
    return mask_degenerate(frame, std::move(g1), std::move(g2), eps);
}

GradientMap sobel(const ScalarField& img) {
    ScalarField g1(img.height(), img.width(), img.spacing());
    ScalarField g2 = g1;
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            const auto v = [&](int dr, int dc) { return img.clamped(r + dr, c + dc); };
            g1.at(r, c) = (v(-1, 1) + 2.0 * v(0, 1) + v(1, 1)) - (v(-1, -1) + 2.0 * v(0, -1) + v(1, -1));
            g2.at(r, c) = (v(1, -1) + 2.0 * v(1, 0) + v(1, 1)) - (v(-1, -1) + 2.0 * v(-1, 0) + v(-1, 1));
        }
    }
    return GradientMap::from_components(std::move(g1), std::move(g2));
}

GradientMap canny_gradient(const ScalarField& img, double sigma) {
    const std::vector<double> taps = gaussian_taps(sigma);
    std::vector<double> k1 = taps;
    std::vector<double> k2 = taps;
    // Short images: clip the kernel so separable_filter accepts it.
    const auto clip = [](std::vector<double>& k, int dim) {
        while (k.size() > 2 * static_cast<std::size_t>(dim) && k.size() > 1) {
            k.erase(k.begin());
            k.pop_back();
        }
    };
    clip(k1, img.width());
    clip(k2, img.height());
    const ScalarField smooth = separable_filter(img, k1, k2);
    return GradientMap::from_components(diff_t1(smooth), diff_t2(smooth));
}

GradientMap compute_gradient(const ScalarField& img, const DetectorConfig& config,
                             const LiftOptions& lift) {
    switch (config.detector) {
        case DetectorKind::sobel: return sobel(img);
        case DetectorKind::canny: return canny_gradient(img, config.canny_sigma);
        default: break;
    }
    const HardyFrame frame = hardy_lift(img, config.y1, config.y2, lift);
    const double eps = config.eps ? *config.eps : default_eps(frame);
    switch (config.detector) {
        case DetectorKind::qdla: return qdla(frame, eps);
        case DetectorKind::msdla: return msdla(frame, eps);
        case DetectorKind::mqdla:
            return mqdla(frame, hardy_lift_derivs(img, config.y1, config.y2, lift), eps);
        case DetectorKind::sdla:
            return sdla(frame, hardy_lift_derivs(img, config.y1, config.y2, lift), eps);
        default: break;
    }
    throw std::logic_error("compute_gradient: unhandled detector");
}

}  // namespace qhardy
