#include "qhardy/eval.hpp"

#include "qhardy/random.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>

namespace qhardy {

namespace {

constexpr double kPeak = 255.0;

void require_pixel_range(const ScalarField& img) {
    for (double v : img.values()) {
        if (!(v >= 0.0 && v <= kPeak)) {
            throw std::invalid_argument("add_noise: pixel values must lie in [0, 255]");
        }
    }
}

double clip(double v) { return std::clamp(v, 0.0, kPeak); }

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

// Search range of NoiseSpec::strength per kind; poisson is searched in log space.
std::pair<double, double> strength_range(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::gaussian: return {0.0, 1.0};
        case NoiseKind::salt_pepper: return {0.0, 1.0};
        case NoiseKind::speckle: return {0.0, 16.0};
        case NoiseKind::poisson: return {1e-3, 1e4};
    }
    return {0.0, 1.0};
}

}  // namespace

std::string_view to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::poisson: return "poisson";
        case NoiseKind::gaussian: return "gaussian";
        case NoiseKind::salt_pepper: return "salt_pepper";
        case NoiseKind::speckle: return "speckle";
    }
    return "unknown";
}

NoiseKind parse_noise(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "poisson") return NoiseKind::poisson;
    if (lower == "gaussian") return NoiseKind::gaussian;
    if (lower == "salt_pepper" || lower == "salt-pepper" || lower == "sp") return NoiseKind::salt_pepper;
    if (lower == "speckle") return NoiseKind::speckle;
    throw std::invalid_argument("unknown noise kind '" + std::string(name) +
                                "' (expected poisson|gaussian|salt_pepper|speckle)");
}

double NoiseSpec::strength() const {
    switch (kind) {
        case NoiseKind::salt_pepper: return density;
        case NoiseKind::poisson: return poisson_scale;
        default: return variance;
    }
}

NoiseSpec NoiseSpec::with_strength(double value) const {
    NoiseSpec out = *this;
    switch (kind) {
        case NoiseKind::salt_pepper: out.density = value; break;
        case NoiseKind::poisson: out.poisson_scale = value; break;
        default: out.variance = value; break;
    }
    return out;
}

void NoiseSpec::validate() const {
    if (!(variance >= 0.0) || !std::isfinite(variance)) {
        throw std::invalid_argument("noise variance must be finite and non-negative");
    }
    if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("noise density must lie in [0, 1]");
    if (!(poisson_scale > 0.0) || !std::isfinite(poisson_scale)) {
        throw std::invalid_argument("poisson scale must be finite and positive");
    }
}

ScalarField add_noise(const ScalarField& img, const NoiseSpec& spec) {
    spec.validate();
    require_pixel_range(img);
    RandomStream rng(spec.seed);
    ScalarField out = img;
    auto values = out.values();
    switch (spec.kind) {
        case NoiseKind::gaussian: {
            const double sigma = std::sqrt(spec.variance) * kPeak;
            for (double& v : values) v = clip(v + sigma * rng.normal());
            break;
        }
        case NoiseKind::salt_pepper:
            for (double& v : values) {
                const double hit = rng.uniform();
                const double coin = rng.uniform();
                if (hit < spec.density) v = coin < 0.5 ? 0.0 : kPeak;
            }
            break;
        case NoiseKind::speckle: {
            const double sigma = std::sqrt(spec.variance);
            for (double& v : values) v = clip(v * (1.0 + sigma * rng.normal()));
            break;
        }
        case NoiseKind::poisson:
            for (double& v : values) {
                const double k = static_cast<double>(rng.poisson(v / spec.poisson_scale));
                v = clip(spec.poisson_scale * k);
            }
            break;
    }
    return out;
}

double snr_db(const ScalarField& clean, const ScalarField& noisy) {
    require_same_shape(clean, noisy, "snr_db");
    double signal = 0.0;
    double noise = 0.0;
    for (std::size_t i = 0; i < clean.size(); ++i) {
        const double c = clean.values()[i];
        const double d = c - noisy.values()[i];
        signal += c * c;
        noise += d * d;
    }
    if (noise == 0.0) return kInfiniteDb;
    return 10.0 * std::log10(signal / noise);
}

double psnr_db(const ScalarField& a, const ScalarField& b) {
    require_same_shape(a, b, "psnr_db");
    if (a.empty()) throw std::invalid_argument("psnr_db: empty images");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.values()[i] - b.values()[i];
        sum += d * d;
    }
    const double mse = sum / static_cast<double>(a.size());
    if (mse == 0.0) return kInfiniteDb;
    return 10.0 * std::log10(kPeak * kPeak / mse);
}

double ssim(const ScalarField& a, const ScalarField& b) {
    require_same_shape(a, b, "ssim");
    if (a.empty()) throw std::invalid_argument("ssim: empty images");
    constexpr double c1 = (0.01 * kPeak) * (0.01 * kPeak);
    constexpr double c2 = (0.03 * kPeak) * (0.03 * kPeak);
    const int wh = std::min(8, a.height());
    const int ww = std::min(8, a.width());
    const double n = static_cast<double>(wh) * ww;
    double total = 0.0;
    long windows = 0;
    for (int r0 = 0; r0 + wh <= a.height(); ++r0) {
        for (int c0 = 0; c0 + ww <= a.width(); ++c0) {
            double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
            for (int r = r0; r < r0 + wh; ++r) {
                for (int c = c0; c < c0 + ww; ++c) {
                    const double x = a.at(r, c);
                    const double y = b.at(r, c);
                    sa += x;
                    sb += y;
                    saa += x * x;
                    sbb += y * y;
                    sab += x * y;
                }
            }
            const double ma = sa / n;
            const double mb = sb / n;
            const double va = saa / n - ma * ma;
            const double vb = sbb / n - mb * mb;
            const double cov = sab / n - ma * mb;
            total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
                     ((ma * ma + mb * mb + c1) * (va + vb + c2));
            ++windows;
        }
    }
    // Anti-correlated windows score below zero; the reported index is floored at 0.
    return std::max(0.0, total / static_cast<double>(windows));
}

NoiseSpec calibrate_noise(const ScalarField& clean, const NoiseSpec& base, double target_db,
                          double tolerance_db) {
    return calibrate_noise(clean, base, target_db, std::vector<std::uint64_t>{base.seed}, tolerance_db);
}

NoiseSpec calibrate_noise(const ScalarField& clean, const NoiseSpec& base, double target_db,
                          const std::vector<std::uint64_t>& seeds, double tolerance_db) {
    if (seeds.empty()) throw std::invalid_argument("calibrate_noise: no seeds");
    const bool log_space = base.kind == NoiseKind::poisson;
    auto [lo, hi] = strength_range(base.kind);
    const auto snr_at = [&](double s) {
        double sum = 0.0;
        for (std::uint64_t seed : seeds) {
            NoiseSpec spec = base.with_strength(s);
            spec.seed = seed;
            sum += snr_db(clean, add_noise(clean, spec));
        }
        return sum / static_cast<double>(seeds.size());
    };
    const auto mid = [&](double a, double b) { return log_space ? std::sqrt(a * b) : 0.5 * (a + b); };
    // SNR falls as strength grows.
    if (snr_at(hi) > target_db + tolerance_db) {
        throw std::runtime_error("calibrate_noise: target SNR below the reachable range");
    }
    if (snr_at(lo) < target_db - tolerance_db) {
        throw std::runtime_error("calibrate_noise: target SNR above the reachable range");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double s = mid(lo, hi);
        const double value = snr_at(s);
        if (std::abs(value - target_db) <= tolerance_db) return base.with_strength(s);
        if (value > target_db) {
            lo = s;
        } else {
            hi = s;
        }
    }
    throw std::runtime_error("calibrate_noise: bisection did not converge");
}

std::uint64_t cell_seed(std::uint64_t base, std::string_view image, std::string_view noise) {
    return combine_seeds(combine_seeds(base, hash_string(image)), hash_string(noise));
}

std::vector<BenchRow> run_benchmark(const std::vector<BenchImage>& images,
                                    const std::vector<BenchNoise>& noises, const BenchConfig& config) {
    std::vector<BenchRow> rows;
    const auto config_for = [&](DetectorKind kind, const NoiseSpec* noise) {
        PipelineConfig pc = config.pipeline;
        pc.detector = kind;
        if (noise != nullptr && config.per_noise_scales && uses_hardy_frame(kind)) {
            const double y = noise->kind == NoiseKind::salt_pepper ? config.scale_salt_pepper
                                                                   : config.scale_default;
            pc.y1 = y;
            pc.y2 = y;
        }
        return pc;
    };
    const auto score = [](BenchRow& row, const ScalarField& clean_edges, const ScalarField& noisy_edges) {
        row.psnr_db = psnr_db(clean_edges, noisy_edges);
        row.ssim = ssim(clean_edges, noisy_edges);
    };
    const auto fail = [](BenchRow& row, const std::exception& e) {
        row.error = e.what();
        row.psnr_db = std::numeric_limits<double>::quiet_NaN();
        row.ssim = std::numeric_limits<double>::quiet_NaN();
    };

    for (const BenchImage& image : images) {
        // Clean edge maps keyed by (detector, y1, y2).
        std::map<std::tuple<int, double, double>, ScalarField> clean_cache;
        const auto clean_edges = [&](const PipelineConfig& pc) -> const ScalarField& {
            const auto key = std::make_tuple(static_cast<int>(pc.detector), pc.y1, pc.y2);
            auto it = clean_cache.find(key);
            if (it == clean_cache.end()) {
                it = clean_cache.emplace(key, run_pipeline(image.image, pc).edges.to_field()).first;
            }
            return it->second;
        };

        if (noises.empty()) {
            for (DetectorKind kind : config.detectors) {
                BenchRow row{image.name, "none", kInfiniteDb, std::string(to_string(kind)), 0.0, 0.0, {}};
                try {
                    const ScalarField& e = clean_edges(config_for(kind, nullptr));
                    score(row, e, e);
                } catch (const std::exception& ex) {
                    fail(row, ex);
                }
                rows.push_back(std::move(row));
            }
            continue;
        }

        for (const BenchNoise& noise : noises) {
            NoiseSpec spec = noise.spec;
            spec.seed = cell_seed(config.base_seed, image.name, noise.label);
            ScalarField noisy;
            double snr = std::numeric_limits<double>::quiet_NaN();
            std::string noise_error;
            try {
                noisy = add_noise(image.image, spec);
                snr = snr_db(image.image, noisy);
            } catch (const std::exception& ex) {
                noise_error = ex.what();
            }
            for (DetectorKind kind : config.detectors) {
                BenchRow row{image.name, noise.label, snr, std::string(to_string(kind)), 0.0, 0.0, {}};
                try {
                    if (!noise_error.empty()) throw std::runtime_error(noise_error);
                    const PipelineConfig pc = config_for(kind, &noise.spec);
                    score(row, clean_edges(pc), run_pipeline(noisy, pc).edges.to_field());
                } catch (const std::exception& ex) {
                    fail(row, ex);
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
    std::string out = "image,noise,snr_db,detector,psnr_db,ssim\n";
    for (const BenchRow& row : rows) {
        out += row.image;
        out += ',';
        out += row.noise;
        out += ',';
        out += format_number(row.snr_db);
        out += ',';
        out += row.detector;
        out += ',';
        out += format_number(row.psnr_db);
        out += ',';
        out += format_number(row.ssim);
        out += '\n';
    }
    return out;
}

}  // namespace qhardy
