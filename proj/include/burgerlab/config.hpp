#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace burgerlab {

/// Invalid or inconsistent configuration: file syntax, unknown keys, bad
/// values, missing referenced files. The CLI maps this to exit code 2,
/// while numerical failures keep their own types and map to exit code 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Evolve, Stationary, Hbar, Spectrum, Resonance, Rescale, WaveConv };
enum class U0Kind { SineBump, Stationary, Constant, FromFile };

const char* to_string(ExperimentKind kind);
const char* to_string(U0Kind kind);

/// One "key = value" line: section and key lowercased, value in canonical
/// spelling (numbers reformatted to their shortest round-trip form, other
/// values trimmed verbatim). Entries keep file order so serialization
/// reproduces the input layout.
struct ConfigEntry {
    std::string section;  // "" for the top-level preamble
    std::string key;
    std::string value;
    int line = 0;
};

/// Flat "key = value" configuration with [section] headers, '#' comments,
/// and UTF-8 text. Typed fields carry defaults; `entries` records exactly
/// the keys present in the source.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Evolve;

    // [grid]
    std::size_t grid_n = 1024;

    // [forcing]
    bool tabulated = false;
    int kappa0 = 1;
    double omega = 0.0;
    std::string table_path;

    // [initial]
    U0Kind u0_kind = U0Kind::SineBump;
    double amplitude = 1.0;
    int freq = 1;
    std::size_t index = 0;
    std::string u0_file;
    double p = 0.0;

    // [run]
    double t_end = 10.0;
    double t_burn = -1.0;  // negative: resolved to t_end/2 where needed
    double cfl = 0.5;
    double record_every = 1.0;
    double shock_threshold = 0.25;

    // [scan]
    std::string scan_param;           // "p" or "omega"; empty = experiment default
    std::vector<double> scan_values;  // from "a,b,c" or "lo:hi:count"

    // [spectrum]
    std::size_t kmin = 4;
    std::size_t kmax = 64;

    // [rescale]
    std::vector<int> factors{2, 4, 8};
    double dt_scale = 1.0;

    // [waveconv]
    double alpha = 0.0;

    // [output]
    std::string out_dir = "outputs";
    bool plot_emit = false;
    int workers = 1;

    std::vector<ConfigEntry> entries;
};

/// Parse and validate config text. `source` names the origin in
/// diagnostics ("file:line: field 'key': ...").
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");

/// Parse a config file; relative table/u0 paths resolve against the file's
/// directory.
ExperimentConfig parse_config_file(const std::string& path);

/// Canonical text form: sections in first-appearance order, "key = value"
/// lines, numbers in shortest round-trip spelling.
std::string serialize_config(const ExperimentConfig& config);

/// The same lexical canonicalization applied to raw text without semantic
/// validation, so serialize_config(parse_config(text)) ==
/// normalize_config_text(text) for every valid config.
std::string normalize_config_text(const std::string& text);

/// "a,b,c" or "lo:hi:count" (inclusive endpoints; count >= 1).
std::vector<double> parse_value_list(const std::string& text);

}  // namespace burgerlab
