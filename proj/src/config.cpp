#include "burgerlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "burgerlab/io.hpp"

namespace burgerlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool parse_full_double(const std::string& s, double* out) {
    if (s.empty()) return false;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return false;
    *out = v;
    return true;
}

// Canonical value spelling: numbers in shortest round-trip form, anything
// else trimmed verbatim.
std::string canonical_value(const std::string& raw) {
    double v = 0.0;
    if (parse_full_double(raw, &v)) return format_double(v);
    return raw;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& message) {
    std::ostringstream out;
    out << source << ":" << line << ": " << message;
    throw ConfigError(out.str());
}

std::vector<ConfigEntry> lex_config(const std::string& text, const std::string& source) {
    std::vector<ConfigEntry> entries;
    std::string section;
    bool saw_section = false;
    std::istringstream stream(text);
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string body = trim(raw);
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') fail(source, line, "unterminated section header");
            section = lower(trim(body.substr(1, body.size() - 2)));
            if (section.empty()) fail(source, line, "empty section name");
            saw_section = true;
            continue;
        }
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) fail(source, line, "expected key = value");
        const std::string key = lower(trim(body.substr(0, eq)));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) fail(source, line, "empty key");
        if (value.empty()) fail(source, line, "empty value for key '" + key + "'");
        if (section.empty() && saw_section)
            fail(source, line, "top-level keys must precede the first section");
        entries.push_back({section, key, canonical_value(value), line});
    }
    return entries;
}

std::string emit_entries(const std::vector<ConfigEntry>& entries) {
    std::string out;
    std::string current;
    bool first = true;
    for (const ConfigEntry& e : entries) {
        if (first || e.section != current) {
            if (!e.section.empty()) {
                if (!first) out += "\n";
                out += "[" + e.section + "]\n";
            }
            current = e.section;
            first = false;
        }
        out += e.key + " = " + e.value + "\n";
    }
    return out;
}

double expect_double(const ConfigEntry& e, const std::string& source) {
    double v = 0.0;
    if (!parse_full_double(e.value, &v))
        fail(source, e.line, "field '" + e.key + "': expected a number, got '" + e.value + "'");
    return v;
}

long long expect_int(const ConfigEntry& e, const std::string& source) {
    double v = 0.0;
    const bool numeric = parse_full_double(e.value, &v);
    const long long i = static_cast<long long>(v);
    if (!numeric || static_cast<double>(i) != v)
        fail(source, e.line, "field '" + e.key + "': expected an integer, got '" + e.value + "'");
    return i;
}

bool expect_bool(const ConfigEntry& e, const std::string& source) {
    const std::string v = lower(e.value);
    if (v == "true") return true;
    if (v == "false") return false;
    fail(source, e.line, "field '" + e.key + "': expected true or false, got '" + e.value + "'");
}

bool power_of_two(std::size_t n) { return n >= 8 && (n & (n - 1)) == 0; }

}  // namespace

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Evolve: return "evolve";
        case ExperimentKind::Stationary: return "stationary";
        case ExperimentKind::Hbar: return "hbar";
        case ExperimentKind::Spectrum: return "spectrum";
        case ExperimentKind::Resonance: return "resonance";
        case ExperimentKind::Rescale: return "rescale";
        case ExperimentKind::WaveConv: return "waveconv";
    }
    return "unknown";
}

const char* to_string(U0Kind kind) {
    switch (kind) {
        case U0Kind::SineBump: return "sine";
        case U0Kind::Stationary: return "stationary";
        case U0Kind::Constant: return "constant";
        case U0Kind::FromFile: return "from_file";
    }
    return "unknown";
}

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> out;
    const std::string body = trim(text);
    if (body.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::istringstream stream(body);
        std::string piece;
        while (std::getline(stream, piece, ':')) parts.push_back(trim(piece));
        if (parts.size() != 3) throw ConfigError("value range must be lo:hi:count");
        double lo = 0.0, hi = 0.0, count_raw = 0.0;
        if (!parse_full_double(parts[0], &lo) || !parse_full_double(parts[1], &hi) ||
            !parse_full_double(parts[2], &count_raw))
            throw ConfigError("value range must be numeric lo:hi:count");
        const long long count = static_cast<long long>(count_raw);
        if (static_cast<double>(count) != count_raw || count < 1)
            throw ConfigError("value range count must be a positive integer");
        if (count == 1) {
            out.push_back(lo);
            return out;
        }
        for (long long i = 0; i < count; ++i) {
            out.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                   static_cast<double>(count - 1));
        }
        return out;
    }
    std::istringstream stream(body);
    std::string piece;
    while (std::getline(stream, piece, ',')) {
        double v = 0.0;
        if (!parse_full_double(trim(piece), &v))
            throw ConfigError("expected a comma-separated list of numbers, got '" + body + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty value list");
    return out;
}

namespace {

ExperimentConfig finish_parse(std::vector<ConfigEntry> entries, const std::string& source);

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
    return finish_parse(lex_config(text, source), source);
}

namespace {

ExperimentConfig finish_parse(std::vector<ConfigEntry> entries, const std::string& source) {
    ExperimentConfig config;
    config.entries = std::move(entries);

    for (const ConfigEntry& e : config.entries) {
        const std::string id = e.section.empty() ? e.key : e.section + "." + e.key;
        if (id == "experiment") {
            const std::string v = lower(e.value);
            if (v == "evolve") config.experiment = ExperimentKind::Evolve;
            else if (v == "stationary") config.experiment = ExperimentKind::Stationary;
            else if (v == "hbar") config.experiment = ExperimentKind::Hbar;
            else if (v == "spectrum") config.experiment = ExperimentKind::Spectrum;
            else if (v == "resonance") config.experiment = ExperimentKind::Resonance;
            else if (v == "rescale") config.experiment = ExperimentKind::Rescale;
            else if (v == "waveconv") config.experiment = ExperimentKind::WaveConv;
            else fail(source, e.line, "unknown experiment '" + e.value + "'");
        } else if (id == "grid.n") {
            config.grid_n = static_cast<std::size_t>(expect_int(e, source));
        } else if (id == "forcing.kind") {
            const std::string v = lower(e.value);
            if (v == "cosine") config.tabulated = false;
            else if (v == "tabulated") config.tabulated = true;
            else fail(source, e.line, "forcing kind must be cosine or tabulated");
        } else if (id == "forcing.kappa0") {
            config.kappa0 = static_cast<int>(expect_int(e, source));
        } else if (id == "forcing.omega") {
            config.omega = expect_double(e, source);
        } else if (id == "forcing.table") {
            config.table_path = e.value;
        } else if (id == "initial.kind") {
            const std::string v = lower(e.value);
            if (v == "sine") config.u0_kind = U0Kind::SineBump;
            else if (v == "stationary") config.u0_kind = U0Kind::Stationary;
            else if (v == "constant") config.u0_kind = U0Kind::Constant;
            else if (v == "from_file") config.u0_kind = U0Kind::FromFile;
            else fail(source, e.line, "initial kind must be sine, stationary, constant, or from_file");
        } else if (id == "initial.amplitude") {
            config.amplitude = expect_double(e, source);
        } else if (id == "initial.freq") {
            config.freq = static_cast<int>(expect_int(e, source));
        } else if (id == "initial.index") {
            const long long v = expect_int(e, source);
            if (v < 0) fail(source, e.line, "field 'index': must be nonnegative");
            config.index = static_cast<std::size_t>(v);
        } else if (id == "initial.file") {
            config.u0_file = e.value;
        } else if (id == "initial.p") {
            config.p = expect_double(e, source);
        } else if (id == "run.t_end") {
            config.t_end = expect_double(e, source);
        } else if (id == "run.t_burn") {
            config.t_burn = expect_double(e, source);
        } else if (id == "run.cfl") {
            config.cfl = expect_double(e, source);
        } else if (id == "run.record_every") {
            config.record_every = expect_double(e, source);
        } else if (id == "run.shock_threshold") {
            config.shock_threshold = expect_double(e, source);
        } else if (id == "scan.param") {
            config.scan_param = lower(e.value);
        } else if (id == "scan.values") {
            try {
                config.scan_values = parse_value_list(e.value);
            } catch (const ConfigError& err) {
                fail(source, e.line, std::string("field 'values': ") + err.what());
            }
        } else if (id == "spectrum.kmin") {
            config.kmin = static_cast<std::size_t>(expect_int(e, source));
        } else if (id == "spectrum.kmax") {
            config.kmax = static_cast<std::size_t>(expect_int(e, source));
        } else if (id == "rescale.factors") {
            config.factors.clear();
            std::vector<double> raw;
            try {
                raw = parse_value_list(e.value);
            } catch (const ConfigError& err) {
                fail(source, e.line, std::string("field 'factors': ") + err.what());
            }
            for (double v : raw) {
                const long long i = static_cast<long long>(v);
                if (static_cast<double>(i) != v || i < 1)
                    fail(source, e.line, "field 'factors': entries must be positive integers");
                config.factors.push_back(static_cast<int>(i));
            }
        } else if (id == "rescale.dt_scale") {
            config.dt_scale = expect_double(e, source);
        } else if (id == "waveconv.alpha") {
            config.alpha = expect_double(e, source);
        } else if (id == "output.dir") {
            config.out_dir = e.value;
        } else if (id == "output.plot") {
            config.plot_emit = expect_bool(e, source);
        } else if (id == "output.workers") {
            const long long v = expect_int(e, source);
            if (v < 1) fail(source, e.line, "field 'workers': must be >= 1");
            config.workers = static_cast<int>(v);
        } else {
            fail(source, e.line,
                 e.section.empty() ? "unknown key '" + e.key + "'"
                                   : "unknown key '" + e.key + "' in section [" + e.section + "]");
        }
    }

    // Cross-field validation with the source named but no single line.
    const auto check = [&](bool ok, const std::string& message) {
        if (!ok) throw ConfigError(source + ": " + message);
    };
    check(power_of_two(config.grid_n), "grid n must be a power of two >= 8");
    check(config.kappa0 >= 1, "forcing kappa0 must be a positive integer");
    check(config.freq >= 1, "initial freq must be a positive integer");
    check(config.t_end > 0.0, "run t_end must be positive");
    check(config.cfl > 0.0 && config.cfl <= 0.5, "run cfl must lie in (0, 1/2]");
    check(config.record_every > 0.0, "run record_every must be positive");
    check(config.shock_threshold > 0.0, "run shock_threshold must be positive");
    check(config.t_burn < config.t_end, "run t_burn must be below t_end");
    check(config.kmin >= 2, "spectrum kmin must be >= 2");
    check(config.kmax > config.kmin, "spectrum kmax must exceed kmin");
    check(config.dt_scale > 0.0, "rescale dt_scale must be positive");
    check(!config.factors.empty(), "rescale factors must be nonempty");
    check(config.scan_param.empty() || config.scan_param == "p" || config.scan_param == "omega",
          "scan param must be p or omega");
    check(!config.tabulated || !config.table_path.empty(),
          "tabulated forcing requires forcing table");
    check(config.u0_kind != U0Kind::FromFile || !config.u0_file.empty(),
          "initial kind from_file requires initial file");
    namespace fs = std::filesystem;
    check(config.table_path.empty() || fs::exists(config.table_path),
          "forcing table file not found: " + config.table_path);
    check(config.u0_file.empty() || fs::exists(config.u0_file),
          "initial data file not found: " + config.u0_file);
    return config;
}

}  // namespace

ExperimentConfig parse_config_file(const std::string& path) {
    namespace fs = std::filesystem;
    if (!fs::exists(path)) throw ConfigError("config file not found: " + path);
    std::vector<ConfigEntry> entries = lex_config(read_text_file(path), path);

    // Resolve referenced files against the config's own directory before
    // the existence checks run.
    const fs::path base = fs::path(path).parent_path();
    for (ConfigEntry& e : entries) {
        const bool file_key = (e.section == "forcing" && e.key == "table") ||
                              (e.section == "initial" && e.key == "file");
        if (file_key && !base.empty() && fs::path(e.value).is_relative()) {
            e.value = (base / e.value).string();
        }
    }
    return finish_parse(std::move(entries), path);
}

std::string serialize_config(const ExperimentConfig& config) { return emit_entries(config.entries); }

std::string normalize_config_text(const std::string& text) {
    return emit_entries(lex_config(text, "<normalize>"));
}

}  // namespace burgerlab
