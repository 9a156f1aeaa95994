/**
 * @file eval.hpp
 * @brief Noise injection, SNR / PSNR / SSIM, and the noisy-vs-clean edge-map benchmark
 */

#pragma once

#include "qhardy/pipeline.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace qhardy {

enum class NoiseKind { poisson, gaussian, salt_pepper, speckle };

std::string_view to_string(NoiseKind kind);
/// Accepts poisson, gaussian, salt_pepper (also salt-pepper, sp), speckle.
NoiseKind parse_noise(std::string_view name);

struct NoiseSpec {
    NoiseKind kind = NoiseKind::gaussian;
    double variance = 0.0;       ///< gaussian: on the [0, 1] intensity scale; speckle: multiplicative
    double density = 0.0;        ///< salt_pepper: fraction of corrupted pixels, [0, 1]
    double poisson_scale = 1.0;  ///< poisson: out = scale * Poisson(x / scale); 1 = counts equal to x
    std::uint64_t seed = 0;

    /// The parameter calibrate_noise() searches over.
    double strength() const;
    NoiseSpec with_strength(double value) const;
    /// Throws std::invalid_argument on negative parameters, density > 1 or poisson_scale <= 0.
    void validate() const;
};

/// Pixels must lie in [0, 255] (std::invalid_argument otherwise).
///   gaussian     x + N(0, variance * 255^2), clipped
///   salt_pepper  each pixel replaced with probability `density` by 0 or 255 (equiprobable)
///   speckle      x (1 + N(0, variance)), clipped
///   poisson      scale * Poisson(x / scale), clipped
/// Draws follow row-major pixel order from RandomStream(seed).
ScalarField add_noise(const ScalarField& img, const NoiseSpec& spec);

inline constexpr double kInfiniteDb = std::numeric_limits<double>::infinity();

/// 10 log10(sum clean^2 / sum (clean - noisy)^2); +inf for identical inputs.
double snr_db(const ScalarField& clean, const ScalarField& noisy);
/// 10 log10(255^2 / MSE); +inf (kInfiniteDb) at MSE = 0.
double psnr_db(const ScalarField& a, const ScalarField& b);
/// Mean SSIM over all 8x8 windows (uniform weights, population moments),
/// C1 = (0.01 * 255)^2, C2 = (0.03 * 255)^2. Images smaller than 8 use a single window.
/// The mean is floored at 0, so the result lies in [0, 1].
double ssim(const ScalarField& a, const ScalarField& b);

struct QualityReport {
    double snr_db = 0.0;
    double psnr_db = 0.0;
    double ssim = 0.0;
};

/// Bisects spec.strength() so that snr_db(clean, add_noise(clean, spec)) is within
/// `tolerance_db` of `target_db`. Throws std::runtime_error when the target is unreachable.
NoiseSpec calibrate_noise(const ScalarField& clean, const NoiseSpec& base, double target_db,
                          double tolerance_db = 0.2);
/// Same, matching the mean SNR over noise draws with each of `seeds`.
NoiseSpec calibrate_noise(const ScalarField& clean, const NoiseSpec& base, double target_db,
                          const std::vector<std::uint64_t>& seeds, double tolerance_db = 0.2);

struct BenchImage {
    std::string name;
    ScalarField image;
};

struct BenchNoise {
    std::string label;  ///< row label; also feeds the per-cell seed
    NoiseSpec spec;
};

struct BenchConfig {
    PipelineConfig pipeline;
    std::vector<DetectorKind> detectors{DetectorKind::qdla, DetectorKind::mqdla, DetectorKind::sdla,
                                        DetectorKind::msdla, DetectorKind::sobel, DetectorKind::canny};
    std::uint64_t base_seed = 0;
    /// Hardy-detector scales per noise kind: salt_pepper uses `scale_salt_pepper`,
    /// the other kinds `scale_default`. When false, pipeline.y1 / y2 are used throughout.
    bool per_noise_scales = true;
    double scale_default = 4.5;
    double scale_salt_pepper = 5.8;
};

struct BenchRow {
    std::string image;
    std::string noise;
    double snr_db = kInfiniteDb;
    std::string detector;
    double psnr_db = 0.0;
    double ssim = 0.0;
    std::string error;  ///< non-empty when a stage failed; metrics are then NaN
};

/// Noise seed of one (image, noise) cell. Every detector sees the same noisy image.
std::uint64_t cell_seed(std::uint64_t base, std::string_view image, std::string_view noise);

/// Runs the pipeline on each clean and noisy image and scores the noisy edge map against
/// the clean one, both rendered as {0, 255} images. An empty noise list yields clean-vs-clean
/// rows labelled "none".
std::vector<BenchRow> run_benchmark(const std::vector<BenchImage>& images,
                                    const std::vector<BenchNoise>& noises, const BenchConfig& config);

/// Header `image,noise,snr_db,detector,psnr_db,ssim`, LF line endings, 4 decimals,
/// "inf" / "nan" for non-finite values.
std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace qhardy
