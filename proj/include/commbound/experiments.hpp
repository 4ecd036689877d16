#pragma once

// Commands behind the `commbound` tool. Each command renders its whole output
// in memory; the tool writes it once, atomically.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "commbound/circle_bounds.hpp"
#include "commbound/matrix_lab.hpp"
#include "commbound/periodic_fn.hpp"
#include "commbound/positive_bounds.hpp"

namespace commbound {

enum class Format { csv, json };

struct RunConfig {
    std::string command;              // "curve sqrt", "curve circle", "lower circle", "validate sqrt", ...
    std::string function = "triangle";  // triangle | bump | cos | sqrt | path to a coefficient file
    std::optional<double> delta_min;  // per-command defaults when unset
    std::optional<double> delta_max;
    std::optional<int> steps;
    std::optional<double> delta;      // probe target
    std::optional<int> n_max;
    int a_grid = kDefaultTangentGrid;
    std::optional<std::size_t> samples;
    int dim_min = 2;
    int dim_max = 8;
    std::uint64_t seed = 42;
    int iterations = 10000;
    std::string out;                  // empty or "-" for stdout
    std::optional<Format> format;
    bool pedersen_only = false;
    std::optional<SpectrumMode> spectrum_mode;
};

struct CommandOutput {
    std::string text;
    int exit_code = 0;
    std::string summary;  // one line for stderr
};

/// Evenly spaced grid with both endpoints.
std::vector<double> linear_grid(double lo, double hi, int steps);

/// `%.12e`.
std::string format_double(double v);

Format parse_format(const std::string& text);

/// "2-8" or "4".
std::pair<int, int> parse_dims(const std::string& text);

/// Fill unset fields of `config` from a JSON object, skipping keys listed in
/// `given` (flags already set on the command line). Keys use the flag names
/// without leading dashes, e.g. "delta-min".
void apply_config_json(RunConfig& config, const nlohmann::json& doc, const std::set<std::string>& given);

/// Builtin or coefficient-file periodic function.
PeriodicFunction select_periodic_function(const std::string& selector);

/// Default truncation depth for circle curves.
inline constexpr int kDefaultCircleNMax = 64;

CommandOutput cmd_curve_sqrt(const RunConfig& config);
CommandOutput cmd_curve_circle(const RunConfig& config);
CommandOutput cmd_lower_circle(const RunConfig& config);
CommandOutput cmd_validate(const RunConfig& config);
CommandOutput cmd_probe(const RunConfig& config);

/// Dispatch on config.command.
CommandOutput run_command(const RunConfig& config);

/// Write to a temporary sibling file, then rename over `path`.
void write_atomically(const std::string& path, const std::string& text);

nlohmann::json matrix_json(const DenseMatrix& m);
DenseMatrix matrix_from_json(const nlohmann::json& doc);

}  // namespace commbound
