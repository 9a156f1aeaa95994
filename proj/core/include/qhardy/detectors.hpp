/**
 * @file detectors.hpp
 * @brief Attenuation- and phase-based edge responses on a Hardy frame, plus Sobel/Canny baselines
 *
 * QDLA   g = (da/dt1, da/dt2), da/dt = (r dr/dt + |m| d|m|/dt) / A^2
 * MQDLA  g = phase brackets in the y1 / y2 derivatives   (equal to QDLA on a Hardy function)
 * SDLA   g = (da/dy1, da/dy2)
 * MSDLA  g = negated phase brackets in t1 / t2          (equal to SDLA on a Hardy function)
 */

#pragma once

#include "qhardy/scale_space.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace qhardy {

struct GradientMap {
    ScalarField g1;           ///< first component (t1 / y1 formula)
    ScalarField g2;           ///< second component (t2 / y2 formula)
    ScalarField magnitude;    ///< sqrt(g1^2 + g2^2)
    ScalarField orientation;  ///< atan2(g2, g1), radians

    static GradientMap from_components(ScalarField g1, ScalarField g2);
};

enum class DetectorKind { qdla, mqdla, sdla, msdla, sobel, canny };

std::string_view to_string(DetectorKind kind);
/// Case-insensitive; throws std::invalid_argument for unknown names.
DetectorKind parse_detector(std::string_view name);
/// True for the four Hardy-frame detectors.
bool uses_hardy_frame(DetectorKind kind);
/// True for the detectors that need scale-derivative frames (MQDLA, SDLA).
bool needs_scale_derivs(DetectorKind kind);

struct DetectorConfig {
    double y1 = 0.3;
    double y2 = 0.3;
    std::optional<double> eps;  ///< unset: 1e-9 * max A of the frame
    DetectorKind detector = DetectorKind::qdla;
    double canny_sigma = 1.0;
};

GradientMap qdla(const HardyFrame& frame, double eps);
GradientMap mqdla(const HardyFrame& frame, const HardyDerivs& derivs, double eps);
GradientMap sdla(const HardyFrame& frame, const HardyDerivs& derivs, double eps);
GradientMap msdla(const HardyFrame& frame, double eps);

/// Unnormalized 3x3 Sobel, replicate border. g1 is the t1 (column) derivative.
GradientMap sobel(const ScalarField& img);
/// Gaussian smoothing (radius ceil(3 sigma), replicate border) followed by central differences.
GradientMap canny_gradient(const ScalarField& img, double sigma = 1.0);

/// Lifts `img` as needed and evaluates the configured detector.
GradientMap compute_gradient(const ScalarField& img, const DetectorConfig& config,
                             const LiftOptions& lift = {});

}  // namespace qhardy
