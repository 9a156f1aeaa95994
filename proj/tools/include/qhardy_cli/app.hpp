/**
 * @file app.hpp
 * @brief The `qhardy` command line: detect, features, noise, bench, verify
 *
 * Exit codes: 0 success, 2 usage error, 3 data error, 4 verification failure.
 * Every subcommand accepts --config FILE, a flat key=value file whose keys are long
 * flag names without the leading dashes. Precedence: flags > config file > built-in defaults.
 */

#pragma once

#include "qhardy/eval.hpp"
#include "qhardy/pipeline.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qhardy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitVerify = 4;

struct RunConfig {
    PipelineConfig pipeline;  ///< detector, y1, y2, nms_radius, low, high, normalize
    std::optional<NoiseSpec> noise;
    std::uint64_t seed = 0;
    std::string input;
    std::string output;
};

/// Built-in defaults (the published parameters): QDLA at y1 = y2 = 0.3, NMS radius 1.5,
/// thresholds resolved per detector (15 / 27 for MSDLA, 3.8 / 5.5 otherwise).
RunConfig default_run_config();

/// Parses flat key=value text. '#' and ';' start comments; blank lines are skipped.
/// Throws std::invalid_argument on malformed lines.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Resolves the `detect` configuration from arguments (without the program name and
/// subcommand), applying a --config file if given. Throws (CLI::ParseError or
/// std::runtime_error) on bad flags, values or config keys.
RunConfig resolve_detect_config(const std::vector<std::string>& args);

/// Runs the command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qhardy::cli
