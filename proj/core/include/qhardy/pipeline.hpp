/**
 * @file pipeline.hpp
 * @brief Image -> Hardy lift -> detector -> NMS -> hysteresis, with per-stage timings
 */

#pragma once

#include "qhardy/detectors.hpp"
#include "qhardy/postprocess.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhardy {

/// A pipeline stage failed; what() is "<stage>: <reason>".
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& reason)
        : std::runtime_error(stage + ": " + reason), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct Thresholds {
    double low = 0.0;
    double high = 0.0;
};

/// Built-in hysteresis thresholds: 15 / 27 for MSDLA, 3.8 / 5.5 for the other Hardy detectors.
/// Sobel and Canny have no fixed pair (see PipelineConfig::thresholds_for).
Thresholds default_thresholds(DetectorKind kind);

struct PipelineConfig {
    DetectorKind detector = DetectorKind::qdla;
    double y1 = 0.3;
    double y2 = 0.3;
    double nms_radius = 1.5;
    std::optional<double> low;   ///< unset: per-detector default
    std::optional<double> high;  ///< unset: per-detector default
    /// Rescale the gradient magnitude so its maximum is 100 before NMS and thresholding.
    bool normalize = true;
    double canny_sigma = 1.0;
    std::optional<double> eps;
    LiftOptions lift;

    DetectorConfig detector_config() const;
    /// Explicit low/high when set; otherwise default_thresholds() for the Hardy detectors and
    /// automatic thresholds for the baselines computed from the (pre-NMS) magnitude:
    /// Canny high = 70th percentile, low = 0.4 high; Sobel low = high = 2 * rms.
    Thresholds thresholds_for(const ScalarField& magnitude) const;
    /// Throws std::invalid_argument on out-of-range parameters.
    void validate() const;
};

struct StageTiming {
    std::string stage;
    double milliseconds = 0.0;
};

struct PipelineResult {
    GradientMap gradient;
    ScalarField nms;  ///< suppressed magnitude, normalized when configured
    Thresholds thresholds;
    EdgeMap edges;
    std::vector<StageTiming> timings;
};

/// Throws StageError naming the failing stage (config, lift, detector, nms, hysteresis).
PipelineResult run_pipeline(const ScalarField& img, const PipelineConfig& config);

}  // namespace qhardy
