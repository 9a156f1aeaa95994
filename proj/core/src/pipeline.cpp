#include "qhardy/pipeline.hpp"

#include "qhardy/features.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace qhardy {

namespace {

class Stopwatch {
public:
    double lap_ms() {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

double percentile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    const std::size_t k = std::min(values.size() - 1,
                                   static_cast<std::size_t>(std::floor(q * (values.size() - 1))));
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
    return values[k];
}

}  // namespace

Thresholds default_thresholds(DetectorKind kind) {
    if (kind == DetectorKind::msdla) return {15.0, 27.0};
    return {3.8, 5.5};
}

DetectorConfig PipelineConfig::detector_config() const {
    DetectorConfig dc;
    dc.y1 = y1;
    dc.y2 = y2;
    dc.eps = eps;
    dc.detector = detector;
    dc.canny_sigma = canny_sigma;
    return dc;
}

Thresholds PipelineConfig::thresholds_for(const ScalarField& magnitude) const {
    Thresholds t = default_thresholds(detector);
    if (detector == DetectorKind::canny) {
        t.high = percentile(magnitude.data(), 0.7);
        t.low = 0.4 * t.high;
    } else if (detector == DetectorKind::sobel) {
        double sum = 0.0;
        for (double v : magnitude.values()) sum += v * v;
        const double rms = magnitude.empty() ? 0.0 : std::sqrt(sum / magnitude.size());
        t.high = 2.0 * rms;
        t.low = t.high;
    }
    if (low) t.low = *low;
    if (high) t.high = *high;
    return t;
}

void PipelineConfig::validate() const {
    if (!(y1 > 0.0) || !(y2 > 0.0)) throw std::invalid_argument("scales y1, y2 must be positive");
    if (!(nms_radius >= 1.0)) throw std::invalid_argument("nms radius must be >= 1");
    if (low && !(*low >= 0.0)) throw std::invalid_argument("low threshold must be >= 0");
    if (high && !(*high >= 0.0)) throw std::invalid_argument("high threshold must be >= 0");
    if (low && high && *low > *high) throw std::invalid_argument("low threshold exceeds high");
    if (!(canny_sigma > 0.0)) throw std::invalid_argument("canny sigma must be positive");
    if (eps && !(*eps > 0.0)) throw std::invalid_argument("eps must be positive");
}

PipelineResult run_pipeline(const ScalarField& img, const PipelineConfig& config) {
    const auto stage = [](const char* name, auto&& fn) {
        try {
            fn();
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(name, e.what());
        }
    };
    stage("config", [&] { config.validate(); });
    PipelineResult result;
    Stopwatch sw;
    const DetectorKind kind = config.detector;
    if (uses_hardy_frame(kind)) {
        HardyFrame frame;
        std::optional<HardyDerivs> derivs;
        stage("lift", [&] {
            frame = hardy_lift(img, config.y1, config.y2, config.lift);
            if (needs_scale_derivs(kind)) derivs = hardy_lift_derivs(img, config.y1, config.y2, config.lift);
        });
        result.timings.push_back({"lift", sw.lap_ms()});
        stage("detector", [&] {
            const double eps = config.eps ? *config.eps : default_eps(frame);
            switch (kind) {
                case DetectorKind::qdla: result.gradient = qdla(frame, eps); break;
                case DetectorKind::mqdla: result.gradient = mqdla(frame, *derivs, eps); break;
                case DetectorKind::sdla: result.gradient = sdla(frame, *derivs, eps); break;
                case DetectorKind::msdla: result.gradient = msdla(frame, eps); break;
                default: throw std::logic_error("unhandled detector");
            }
        });
    } else {
        stage("detector", [&] { result.gradient = compute_gradient(img, config.detector_config()); });
    }
    result.timings.push_back({"detector", sw.lap_ms()});

    ScalarField magnitude;
    stage("nms", [&] {
        magnitude = config.normalize ? normalize_to_100(result.gradient.magnitude) : result.gradient.magnitude;
        result.nms = non_max_suppress(magnitude, result.gradient.orientation, config.nms_radius);
    });
    result.timings.push_back({"nms", sw.lap_ms()});

    stage("hysteresis", [&] {
        result.thresholds = config.thresholds_for(magnitude);
        result.edges = hysteresis(result.nms, result.thresholds.low, result.thresholds.high);
    });
    result.timings.push_back({"hysteresis", sw.lap_ms()});
    return result;
}

}  // namespace qhardy
