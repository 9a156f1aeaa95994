#include "qhardy_cli/app.hpp"

#include "qhardy/features.hpp"
#include "qhardy_cli/fixtures.hpp"
#include "qhardy_cli/image_io.hpp"
#include "qhardy_cli/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

namespace qhardy::cli {

namespace {

/// Usage problems detected after CLI11 parsing (bad config file, inconsistent flags).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raw flag storage shared by all subcommands.
struct Options {
    std::string config;
    std::string input;
    std::string output;
    std::string output_prefix = "features";
    std::string format = "pgm";

    std::string detector = "qdla";
    double y1 = 0.3;
    double y2 = 0.3;
    double nms_radius = 1.5;
    std::optional<double> low;
    std::optional<double> high;
    bool normalize = true;
    double canny_sigma = 1.0;
    bool timing = true;

    std::string noise;
    double variance = 0.0;
    double density = 0.0;
    double poisson_scale = 1.0;
    std::optional<double> target_snr;
    std::uint64_t seed = 0;

    std::vector<std::string> inputs;
    std::vector<std::string> fixtures;
    std::vector<std::string> noises;
    std::vector<std::string> detectors;
    int repeats = 1;
    bool table_scales = true;

    std::string verify_fixture = "all";
    int size = 32;
};

struct App {
    CLI::App app{"Quaternion Hardy scale-space edge detection", "qhardy"};
    CLI::App* detect = nullptr;
    CLI::App* features = nullptr;
    CLI::App* noise = nullptr;
    CLI::App* bench = nullptr;
    CLI::App* verify = nullptr;
    std::vector<CLI::App*> subcommands() const { return {detect, features, noise, bench, verify}; }
};

const std::vector<std::string> kDetectorNames{"qdla", "mqdla", "sdla", "msdla", "sobel", "canny"};

const CLI::Validator kNoiseName(
    [](std::string& value) {
        try {
            parse_noise(value);
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        return std::string();
    },
    "NOISE");

void add_config_option(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config, "Flat key=value file; keys are long flag names");
}

void add_scale_options(CLI::App* sub, Options& o) {
    sub->add_option("--y1", o.y1, "Scale along t1 (grid units)")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--y2", o.y2, "Scale along t2 (grid units)")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_pipeline_options(CLI::App* sub, Options& o) {
    sub->add_option("--detector", o.detector, "qdla|mqdla|sdla|msdla|sobel|canny")
        ->check(CLI::IsMember(kDetectorNames, CLI::ignore_case))
        ->capture_default_str();
    add_scale_options(sub, o);
    sub->add_option("--nms-radius", o.nms_radius, "Non-maximum suppression radius")
        ->check(CLI::Range(1.0, 1e6))
        ->capture_default_str();
    sub->add_option("--low", o.low, "Low hysteresis threshold (default per detector)")->check(CLI::NonNegativeNumber);
    sub->add_option("--high", o.high, "High hysteresis threshold (default per detector)")->check(CLI::NonNegativeNumber);
    sub->add_flag("--normalize,!--raw", o.normalize,
                  "Rescale the gradient magnitude to [0, 100] before thresholding (default on)");
    sub->add_option("--canny-sigma", o.canny_sigma, "Gaussian sigma of the Canny baseline")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_noise_options(CLI::App* sub, Options& o, bool list) {
    if (list) {
        sub->add_option("--noise", o.noises, "Comma-separated noise kinds")
            ->delimiter(',')
            ->check(kNoiseName);
    } else {
        sub->add_option("--noise", o.noise, "poisson|gaussian|salt_pepper|speckle")
            ->check(kNoiseName);
    }
    sub->add_option("--variance", o.variance, "Gaussian variance ([0,1] intensity scale) or speckle variance")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--density", o.density, "Salt-and-pepper density")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--poisson-scale", o.poisson_scale, "Poisson photon scale s: s * Poisson(x / s)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--target-snr", o.target_snr, "Calibrate the noise strength to this SNR (dB)");
    sub->add_option("--seed", o.seed, "Noise seed")->capture_default_str();
}

std::unique_ptr<App> build_app(Options& o) {
    auto a = std::make_unique<App>();
    a->app.require_subcommand(1);
    a->app.set_version_flag("--version", "qhardy 0.1.0");

    a->detect = a->app.add_subcommand("detect", "Edge map of an image (lift, detector, NMS, hysteresis)");
    add_config_option(a->detect, o);
    a->detect->add_option("-i,--input", o.input, "Input image (PGM or PNG)");
    a->detect->add_option("-o,--output", o.output, "Output edge map (.pgm or .png)");
    add_pipeline_options(a->detect, o);
    add_noise_options(a->detect, o, false);
    a->detect->add_flag("--timing,!--no-timing", o.timing, "Print per-stage wall time (default on)");

    a->features = a->app.add_subcommand("features", "Dump amplitude, attenuation, phase and |p| images");
    add_config_option(a->features, o);
    a->features->add_option("-i,--input", o.input, "Input image (PGM or PNG)");
    a->features->add_option("--output-prefix", o.output_prefix, "Output path prefix")->capture_default_str();
    a->features->add_option("--format", o.format, "pgm|png")->check(CLI::IsMember({"pgm", "png"}))->capture_default_str();
    add_scale_options(a->features, o);

    a->noise = a->app.add_subcommand("noise", "Add noise to an image");
    add_config_option(a->noise, o);
    a->noise->add_option("-i,--input", o.input, "Input image (PGM or PNG)");
    a->noise->add_option("-o,--output", o.output, "Output image (.pgm or .png)");
    add_noise_options(a->noise, o, false);

    a->bench = a->app.add_subcommand("bench", "Noisy-vs-clean edge-map PSNR / SSIM table as CSV");
    add_config_option(a->bench, o);
    a->bench->add_option("-i,--input", o.inputs, "Input images, as PATH or NAME=PATH");
    a->bench->add_option("--fixture", o.fixtures, "Synthetic images: step|square|blob")
        ->check(CLI::IsMember({"step", "square", "blob"}));
    a->bench->add_option("-o,--output", o.output, "CSV path (default: standard output)");
    a->bench->add_option("--detectors", o.detectors, "Comma-separated detectors (default: all)")
        ->delimiter(',')
        ->check(CLI::IsMember(kDetectorNames, CLI::ignore_case));
    add_pipeline_options(a->bench, o);
    add_noise_options(a->bench, o, true);
    a->bench->add_option("--repeats", o.repeats, "Noise draws per noise kind")->check(CLI::Range(1, 100000));
    a->bench->add_flag("--table-scales,!--fixed-scales", o.table_scales,
                       "Hardy scales per noise kind: 5.8 salt_pepper, 4.5 otherwise (default on)");

    a->verify = a->app.add_subcommand("verify", "Numerical checks of the spectral identity and CR relations");
    add_config_option(a->verify, o);
    a->verify->add_option("--fixture", o.verify_fixture, "all|random|blob|cauchy")
        ->check(CLI::IsMember({"all", "random", "blob", "cauchy"}))
        ->capture_default_str();
    a->verify->add_option("--seed", o.seed, "Seed of the random field")->capture_default_str();
    a->verify->add_option("--size", o.size, "Side of the random field")->check(CLI::Range(2, 4096))->capture_default_str();
    return a;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return std::nullopt;
}

// Fills options the command line left unset from the config file.
void apply_config(const App& a, CLI::App* selected, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "config") throw UsageError("config: nested 'config' key is not allowed");
        CLI::Option* opt = selected->get_option_no_throw("--" + key);
        if (opt == nullptr) {
            bool known = false;
            for (CLI::App* sub : a.subcommands()) known = known || sub->get_option_no_throw("--" + key) != nullptr;
            if (!known) throw UsageError("config: unknown key '" + key + "'");
            continue;
        }
        if (opt->count() > 0) continue;
        try {
            opt->clear();
            if (opt->get_delimiter() != '\0') {
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, opt->get_delimiter())) opt->add_result(trim(item));
            } else {
                opt->add_result(value);
            }
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError("config: key '" + key + "': " + e.what());
        }
    }
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config_text(ss.str());
    } catch (const std::invalid_argument& e) {
        throw UsageError(path + ": " + e.what());
    }
}

NoiseSpec noise_spec(const Options& o, const std::string& kind) {
    NoiseSpec spec;
    spec.kind = parse_noise(kind);
    spec.variance = o.variance;
    spec.density = o.density;
    spec.poisson_scale = o.poisson_scale;
    spec.seed = o.seed;
    return spec;
}

RunConfig to_run_config(const Options& o) {
    RunConfig cfg = default_run_config();
    PipelineConfig& pc = cfg.pipeline;
    pc.detector = parse_detector(o.detector);
    pc.y1 = o.y1;
    pc.y2 = o.y2;
    pc.nms_radius = o.nms_radius;
    pc.low = o.low;
    pc.high = o.high;
    pc.normalize = o.normalize;
    pc.canny_sigma = o.canny_sigma;
    try {
        pc.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!o.noise.empty()) cfg.noise = noise_spec(o, o.noise);
    cfg.seed = o.seed;
    cfg.input = o.input;
    cfg.output = o.output;
    return cfg;
}

void require_path(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

template <typename Fn>
auto data_stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

double elapsed_ms(std::chrono::steady_clock::time_point& last) {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last).count();
    last = now;
    return ms;
}

ScalarField maybe_noisy(const ScalarField& img, const NoiseSpec& spec, const std::optional<double>& target) {
    if (!target) return add_noise(img, spec);
    return add_noise(img, calibrate_noise(img, spec, *target));
}

int cmd_detect(const Options& o, std::ostream& out) {
    const RunConfig cfg = to_run_config(o);
    require_path(cfg.input, "--input");
    require_path(cfg.output, "--output");
    auto last = std::chrono::steady_clock::now();
    const auto start = last;
    std::vector<StageTiming> timings;
    ScalarField img = data_stage("load", [&] { return load_image(cfg.input); });
    timings.push_back({"load", elapsed_ms(last)});
    if (cfg.noise) {
        img = data_stage("noise", [&] { return maybe_noisy(img, *cfg.noise, o.target_snr); });
        timings.push_back({"noise", elapsed_ms(last)});
    }
    const PipelineResult result = run_pipeline(img, cfg.pipeline);
    last = std::chrono::steady_clock::now();
    timings.insert(timings.end(), result.timings.begin(), result.timings.end());
    data_stage("save", [&] {
        save_image(result.edges.to_field(), cfg.output);
        return 0;
    });
    timings.push_back({"save", elapsed_ms(last)});
    const double total = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    char buf[160];
    std::snprintf(buf, sizeof buf, "detector %s  y1 %g  y2 %g  nms-radius %g  low %g  high %g  normalize %s\n",
                  std::string(to_string(cfg.pipeline.detector)).c_str(), cfg.pipeline.y1, cfg.pipeline.y2,
                  cfg.pipeline.nms_radius, result.thresholds.low, result.thresholds.high,
                  cfg.pipeline.normalize ? "on" : "off");
    out << buf;
    out << "edge pixels " << result.edges.count() << " of " << result.edges.data.size() << '\n';
    if (o.timing) {
        for (const StageTiming& t : timings) {
            std::snprintf(buf, sizeof buf, "  %-12s %10.3f ms\n", t.stage.c_str(), t.milliseconds);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, "  %-12s %10.3f ms\n", "total", total);
        out << buf;
    }
    return kExitOk;
}

ScalarField rescale(const ScalarField& f, double lo, double hi) {
    ScalarField out = f;
    const double span = hi - lo;
    for (double& v : out.values()) v = span > 0.0 ? 255.0 * (v - lo) / span : 0.0;
    return out;
}

int cmd_features(const Options& o, std::ostream& out) {
    require_path(o.input, "--input");
    const ScalarField img = data_stage("load", [&] { return load_image(o.input); });
    const FeatureField ff = data_stage("features", [&] { return local_features(hardy_lift(img, o.y1, o.y2)); });
    ScalarField phase_norm(img.height(), img.width());
    for (std::size_t i = 0; i < phase_norm.size(); ++i) {
        const double p1 = ff.p1.values()[i];
        const double p2 = ff.p2.values()[i];
        const double p3 = ff.p3.values()[i];
        phase_norm.values()[i] = std::sqrt(p1 * p1 + p2 * p2 + p3 * p3);
    }
    const std::vector<std::pair<std::string, ScalarField>> images{
        {"amplitude", rescale(ff.amplitude, 0.0, ff.amplitude.max_value())},
        {"attenuation", rescale(ff.attenuation, ff.attenuation.min_value(), ff.attenuation.max_value())},
        {"theta", rescale(ff.theta, 0.0, std::numbers::pi)},
        {"phase", rescale(phase_norm, 0.0, std::numbers::pi)},
    };
    for (const auto& [name, field] : images) {
        const std::string path = o.output_prefix + "_" + name + "." + o.format;
        data_stage("save", [&] {
            save_image(field, path);
            return 0;
        });
        out << path << '\n';
    }
    return kExitOk;
}

int cmd_noise(const Options& o, std::ostream& out) {
    require_path(o.input, "--input");
    require_path(o.output, "--output");
    if (o.noise.empty()) throw UsageError("--noise is required");
    const ScalarField img = data_stage("load", [&] { return load_image(o.input); });
    const NoiseSpec spec = noise_spec(o, o.noise);
    const NoiseSpec used = data_stage("noise", [&] { return o.target_snr ? calibrate_noise(img, spec, *o.target_snr) : spec; });
    const ScalarField noisy = data_stage("noise", [&] { return add_noise(img, used); });
    data_stage("save", [&] {
        save_image(noisy, o.output);
        return 0;
    });
    char buf[160];
    std::snprintf(buf, sizeof buf, "noise %s  strength %.6g  seed %llu  snr_db %.4f\n",
                  std::string(to_string(used.kind)).c_str(), used.strength(),
                  static_cast<unsigned long long>(used.seed), snr_db(img, noisy));
    out << buf;
    return kExitOk;
}

std::string stem(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

int cmd_bench(const Options& o, std::ostream& out) {
    const RunConfig cfg = to_run_config(o);
    std::vector<BenchImage> images;
    for (const std::string& spec : o.inputs) {
        const auto eq = spec.find('=');
        const std::string name = eq == std::string::npos ? stem(spec) : spec.substr(0, eq);
        const std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
        images.push_back({name, data_stage("load", [&] { return load_image(path); })});
    }
    for (const std::string& name : o.fixtures) images.push_back({name, fixture_by_name(name)});
    if (images.empty()) images.push_back({"square", square_fixture()});

    BenchConfig bc;
    bc.pipeline = cfg.pipeline;
    bc.base_seed = o.seed;
    bc.per_noise_scales = o.table_scales;
    if (!o.detectors.empty()) {
        bc.detectors.clear();
        for (const std::string& d : o.detectors) bc.detectors.push_back(parse_detector(d));
    }

    std::vector<BenchRow> rows;
    for (const BenchImage& image : images) {
        std::vector<BenchNoise> noises;
        for (const std::string& kind : o.noises) {
            NoiseSpec spec = noise_spec(o, kind);
            std::vector<std::string> labels;
            for (int k = 0; k < o.repeats; ++k) {
                labels.push_back(o.repeats == 1 ? std::string(to_string(spec.kind))
                                                : std::string(to_string(spec.kind)) + "-" + std::to_string(k));
            }
            if (o.target_snr) {
                std::vector<std::uint64_t> seeds;
                for (const std::string& label : labels) seeds.push_back(cell_seed(o.seed, image.name, label));
                spec = data_stage("calibrate", [&] { return calibrate_noise(image.image, spec, *o.target_snr, seeds); });
            }
            for (const std::string& label : labels) noises.push_back({label, spec});
        }
        std::vector<BenchRow> part = run_benchmark({image}, noises, bc);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    const std::string csv = to_csv(rows);
    if (o.output.empty()) {
        out << csv;
    } else {
        data_stage("save", [&] {
            std::ofstream file(o.output, std::ios::binary);
            if (!file) throw std::runtime_error(o.output + ": cannot open file for writing");
            file << csv;
            if (!file) throw std::runtime_error(o.output + ": write failed");
            return 0;
        });
    }
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    VerifyReport report;
    const std::string& f = o.verify_fixture;
    if (f == "all" || f == "random") report.append(verify_spectral(o.seed, o.size));
    if (f == "all" || f == "blob") report.append(verify_cr_blob());
    if (f == "all" || f == "cauchy") report.append(verify_cauchy());
    out << format_report(report);
    out << (report.ok() ? "verification PASSED\n" : "verification FAILED\n");
    return report.ok() ? kExitOk : kExitVerify;
}

}  // namespace

RunConfig default_run_config() { return RunConfig{}; }

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        if (key.empty()) throw std::invalid_argument("line " + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

RunConfig resolve_detect_config(const std::vector<std::string>& args) {
    Options o;
    auto a = build_app(o);
    std::vector<std::string> full{"detect"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<std::string> reversed(full.rbegin(), full.rend());
    a->app.parse(reversed);
    if (const auto path = find_config_path(args)) apply_config(*a, a->detect, read_config_file(*path));
    return to_run_config(o);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    auto a = build_app(o);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        a->app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = a->app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    CLI::App* selected = a->app.get_subcommands().front();
    try {
        if (const auto path = find_config_path(args)) apply_config(*a, selected, read_config_file(*path));
        if (selected == a->detect) return cmd_detect(o, out);
        if (selected == a->features) return cmd_features(o, out);
        if (selected == a->noise) return cmd_noise(o, out);
        if (selected == a->bench) return cmd_bench(o, out);
        return cmd_verify(o, out);
    } catch (const UsageError& e) {
        err << "qhardy " << selected->get_name() << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "qhardy " << selected->get_name() << ": error in " << e.what() << '\n';
        return kExitData;
    }
}

}  // namespace qhardy::cli
