#include "burgerlab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "burgerlab/analysis.hpp"
#include "burgerlab/cell.hpp"
#include "burgerlab/forcing.hpp"
#include "burgerlab/grid.hpp"
#include "burgerlab/io.hpp"
#include "burgerlab/resonance.hpp"
#include "burgerlab/solver.hpp"
#include "burgerlab/spectrum.hpp"

namespace burgerlab {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string iso_now() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ForcingSpec forcing_from(const ExperimentConfig& config, double omega) {
    if (!config.tabulated) return make_cosine_forcing(config.kappa0, omega);
    ForcingSpec spec = make_tabulated_forcing(read_field_csv(config.table_path), omega);
    return spec;
}

TorusField initial_state(const ExperimentConfig& config, const ForcingSpec& steady,
                         const TorusGrid& grid) {
    switch (config.u0_kind) {
        case U0Kind::SineBump: {
            std::vector<double> v(grid.n);
            for (std::size_t j = 0; j < grid.n; ++j)
                v[j] = config.p + config.amplitude * center_sin(config.freq, j, grid.n);
            return make_field(grid, std::move(v));
        }
        case U0Kind::Constant:
            return make_field(grid, std::vector<double>(grid.n, config.p));
        case U0Kind::Stationary: {
            const auto family = enumerate_stationary(config.p, steady, grid);
            if (config.index >= family.size())
                throw ConfigError("field 'initial.index': " + std::to_string(config.index) +
                                  " out of range (" + std::to_string(family.size()) +
                                  " stationary solutions at p = " + format_double(config.p) +
                                  ")");
            return family[config.index].ubar;
        }
        case U0Kind::FromFile: {
            TorusField f = read_field_csv(config.u0_file);
            if (f.grid.n != grid.n)
                throw ConfigError("field 'initial.file': " + std::to_string(f.grid.n) +
                                  " cells do not match grid.n = " + std::to_string(grid.n));
            return f;
        }
    }
    throw std::logic_error("initial_state: unhandled kind");
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = count == 1 ? lo
                            : lo + (hi - lo) * static_cast<double>(i) /
                                       static_cast<double>(count - 1);
    return out;
}

std::string snapshot_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%04zu.csv", i);
    return buf;
}

const char* branch_name(Branch b) {
    return b == Branch::Subcritical ? "subcritical" : "supercritical";
}

/// Writes files under one directory and tracks their relative names.
struct Sink {
    fs::path dir;
    std::vector<std::string>* files = nullptr;

    std::string path(const std::string& name) const { return (dir / name).string(); }
    void text(const std::string& name, const std::string& content) {
        write_text_file(path(name), content);
        files->push_back(name);
    }
    void table(const std::string& name, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
        write_table_csv(path(name), columns, rows);
        files->push_back(name);
    }
    void field(const std::string& name, const TorusField& f) {
        write_field_csv(path(name), f);
        files->push_back(name);
    }
};

void metric(RunRecord& record, const std::string& name, double value) {
    record.metrics.emplace_back(name, value);
}

ordered_json json_or_null(double v) {
    if (std::isfinite(v)) return ordered_json(v);
    return ordered_json(nullptr);
}

void run_hbar(const ExperimentConfig& config, Sink& sink, RunRecord& record) {
    const ForcingSpec steady = forcing_from(config, 0.0);
    const std::vector<double> ps = (config.scan_param == "p" && !config.scan_values.empty())
                                       ? config.scan_values
                                       : linspace(-3.0, 3.0, 101);
    std::vector<std::vector<double>> rows;
    rows.reserve(ps.size());
    double hbar_max = 0.0;
    for (double p : ps) {
        const double h = effective_hamiltonian(p, steady);
        hbar_max = std::max(hbar_max, h);
        rows.push_back({p, h});
    }
    sink.table("hbar.csv", {"p", "hbar"}, rows);
    metric(record, "p_cr", critical_momentum(steady));
    metric(record, "hbar_max", hbar_max);
    metric(record, "scan_points", static_cast<double>(ps.size()));
}

void run_stationary(const ExperimentConfig& config, Sink& sink, RunRecord& record) {
    const ForcingSpec steady = forcing_from(config, 0.0);
    const TorusGrid grid = make_grid(config.grid_n);
    const CellSolution sol = solve_cell_problem(config.p, steady, grid);
    const JumpReport jumps = check_entropy_jumps(sol);

    ordered_json j;
    j["p"] = sol.p;
    j["lambda"] = sol.lambda;
    j["branch"] = branch_name(sol.branch);
    j["x0"] = sol.x0;
    j["xbar"] = json_or_null(sol.xbar);
    j["p_cr"] = critical_momentum(steady);
    j["jumps"] = jumps.jumps.size();
    j["admissible"] = jumps.admissible;
    sink.text("solution.json", j.dump(2) + "\n");

    sink.field("ubar.csv", sol.ubar);
    std::vector<std::vector<double>> phi_rows;
    phi_rows.reserve(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i)
        phi_rows.push_back({grid.dx() * static_cast<double>(i + 1), sol.phi.values[i]});
    sink.table("phi.csv", {"x", "value"}, phi_rows);

    metric(record, "lambda", sol.lambda);
    metric(record, "x0", sol.x0);
    if (std::isfinite(sol.xbar)) metric(record, "xbar", sol.xbar);
    metric(record, "residual", hamiltonian_residual(sol, steady));
    metric(record, "jumps", static_cast<double>(jumps.jumps.size()));
    metric(record, "admissible", jumps.admissible ? 1.0 : 0.0);
}

void write_trajectory(const ExperimentConfig& config, const Trajectory& traj, Sink& sink,
                      const RunRecord& record) {
    std::vector<std::string> names;
    names.reserve(traj.states.size());
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const std::string name = snapshot_name(i);
        sink.field(name, make_field(traj.grid, traj.states[i]));
        names.push_back(name);
    }

    ordered_json manifest;
    manifest["experiment"] = record.experiment;
    manifest["config"] = record.config_echo;
    manifest["times"] = traj.times;
    manifest["snapshots"] = names;
    sink.text("manifest.json", manifest.dump(2) + "\n");

    std::vector<std::vector<double>> diag_rows;
    diag_rows.reserve(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const FrameDiagnostics& d = traj.diagnostics[i];
        diag_rows.push_back(
            {traj.times[i], d.mean, d.l2_energy, d.power_input, d.shock_indicator});
    }
    sink.table("diagnostics.csv", {"t", "mean", "l2_energy", "power_input", "shock_indicator"},
               diag_rows);
    (void)config;
}

void run_evolve(const ExperimentConfig& config, Sink& sink, RunRecord& record) {
    const ForcingSpec spec = forcing_from(config, config.omega);
    const ForcingSpec steady = forcing_from(config, 0.0);
    const TorusGrid grid = make_grid(config.grid_n);
    const TorusField u0 = initial_state(config, steady, grid);

    SolverConfig scfg;
    scfg.cfl = config.cfl;
    scfg.t_end = config.t_end;
    scfg.record_every = config.record_every;
    const Trajectory traj = evolve(u0, spec, scfg);

    write_trajectory(config, traj, sink, record);

    const std::vector<CellSolution> candidates = enumerate_stationary(config.p, steady, grid);
    const ConvergenceReport report =
        track_convergence(traj, candidates, config.shock_threshold);

    std::vector<std::vector<double>> conv_rows;
    conv_rows.reserve(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const bool shocked =
            is_shocked(make_field(grid, traj.states[i]), config.shock_threshold);
        conv_rows.push_back({traj.times[i], report.distances_l1[i], report.distances_l2[i],
                             shocked ? 1.0 : 0.0});
    }
    sink.table("convergence.csv", {"t", "d_l1", "d_l2", "shocked"}, conv_rows);

    ordered_json summary;
    summary["argmin_index"] = report.argmin_index;
    summary["candidates"] = candidates.size();
    summary["shock_time_estimate"] = json_or_null(report.shock_time_estimate);
    summary["final_d_l1"] = report.distances_l1.back();
    summary["final_d_l2"] = report.distances_l2.back();
    summary["steps"] = traj.steps;
    sink.text("summary.json", summary.dump(2) + "\n");

    metric(record, "final_d_l1", report.distances_l1.back());
    metric(record, "final_d_l2", report.distances_l2.back());
    metric(record, "argmin_index", static_cast<double>(report.argmin_index));
    if (std::isfinite(report.shock_time_estimate))
        metric(record, "shock_time_estimate", report.shock_time_estimate);
    metric(record, "steps", static_cast<double>(traj.steps));
}

void run_spectrum(const ExperimentConfig& config, Sink& sink, RunRecord& record) {
    const ForcingSpec steady = forcing_from(config, 0.0);
    const TorusGrid grid = make_grid(config.grid_n);
    if (config.kmax > grid.n / 4)
        throw ConfigError("field 'spectrum.kmax': " + std::to_string(config.kmax) +
                          " exceeds n/4 = " + std::to_string(grid.n / 4));
    const CellSolution sol = solve_cell_problem(config.p, steady, grid);

    const auto write_spectrum = [&](const std::string& name, const TorusField& field,
                                    const std::string& metric_name) {
        const SpectrumReport rep = fit_spectrum(field, config.kmin, config.kmax);
        std::vector<std::vector<double>> rows;
        rows.reserve(rep.magnitude.size());
        for (std::size_t k = 1; k <= rep.magnitude.size(); ++k)
            rows.push_back({static_cast<double>(k), rep.magnitude[k - 1]});
        sink.table(name, {"k", "magnitude"}, rows);
        if (rep.has_slope) metric(record, metric_name, rep.slope);
    };
    write_spectrum("spectrum_ubar.csv", sol.ubar, "slope_ubar");
    write_spectrum("spectrum_phi.csv", sol.phi, "slope_phi");
    metric(record, "lambda", sol.lambda);
}

void run_resonance(const ExperimentConfig& config, Sink& sink, RunRecord& record) {
    const ForcingSpec steady = forcing_from(config, 0.0);
    const TorusGrid grid = make_grid(config.grid_n);
    const TorusField u0 = initial_state(config, steady, grid);
    const std::vector<double> omegas =
        (config.scan_param == "omega" && !config.scan_values.empty())
            ? config.scan_values
            : linspace(config.p - 1.5, config.p + 1.5, 61);
    const double t_burn = config.t_burn < 0.0 ? config.t_end / 2.0 : config.t_burn;

    const ResonanceScan scan = resonance_scan(steady, config.p, omegas, u0, config.t_end,
                                              t_burn, config.workers);

    std::string csv = "omega,avg_power,classification,slope\n";
    for (std::size_t i = 0; i < scan.omegas.size(); ++i) {
        csv += format_double(scan.omegas[i]) + "," + format_double(scan.avg_power[i]) + "," +
               (scan.classification[i] == ResonanceClass::Resonant ? "resonant"
                                                                   : "nonresonant") +
               "," + format_double(scan.slopes[i]) + "\n";
    }
    sink.text("resonance.csv", csv);

    double plateau = 0.0;
    double res_min = 0.0, res_max = 0.0;
    std::size_t resonant = 0;
    for (std::size_t i = 0; i < scan.omegas.size(); ++i) {
        plateau = std::max(plateau, scan.avg_power[i]);
        if (scan.classification[i] == ResonanceClass::Resonant) {
            if (resonant == 0) res_min = scan.omegas[i];
            res_max = scan.omegas[i];
            ++resonant;
        }
    }
    metric(record, "omega_cr", scan.omega_cr);
    metric(record, "window_lo", scan.window.first);
    metric(record, "window_hi", scan.window.second);
    metric(record, "theta", scan.theta);
    metric(record, "plateau_power", plateau);
    metric(record, "resonant_count", static_cast<double>(resonant));
    if (resonant > 0) {
        metric(record, "resonant_omega_min", res_min);
        metric(record, "resonant_omega_max", res_max);
    }
}

void run_rescale(const ExperimentConfig& config, Sink& sink, RunRecord& record) {
    std::vector<std::vector<double>> rows;
    rows.reserve(config.factors.size());
    double worst = 0.0;
    for (int m : config.factors) {
        const double d = rescale_equivalence(config, m, config.dt_scale);
        worst = std::max(worst, d);
        rows.push_back({static_cast<double>(m), d});
    }
    sink.table("rescale.csv", {"m", "max_discrepancy"}, rows);
    metric(record, "max_discrepancy", worst);
    metric(record, "dt_scale", config.dt_scale);
}

void run_waveconv(const ExperimentConfig& config, Sink& sink, RunRecord& record) {
    if (config.omega != 0.0)
        throw ConfigError("field 'forcing.omega': waveconv requires steady forcing");
    const ForcingSpec steady = forcing_from(config, 0.0);
    const TorusGrid grid = make_grid(config.grid_n);
    const TorusField u0 = initial_state(config, steady, grid);

    SolverConfig scfg;
    scfg.cfl = config.cfl;
    scfg.t_end = config.t_end;
    scfg.record_every = config.record_every;
    const Trajectory traj = evolve(u0, steady, scfg);

    const std::vector<CellSolution> candidates = enumerate_stationary(config.p, steady, grid);
    const ConvergenceReport report =
        track_convergence(traj, candidates, config.shock_threshold);
    const CellSolution& sol = candidates[report.argmin_index];

    const std::vector<std::vector<double>> potentials =
        reconstruct_potential(traj, config.p, steady);
    const std::vector<double> d = wave_convergence(potentials, traj.times, sol);

    std::vector<std::vector<double>> rows;
    rows.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) rows.push_back({traj.times[i], d[i]});
    sink.table("waveconv.csv", {"t", "d"}, rows);

    metric(record, "final_d", d.back());
    metric(record, "argmin_index", static_cast<double>(report.argmin_index));
    metric(record, "lambda", sol.lambda);
    metric(record, "alpha", config.alpha);
}

std::string csv_to_dat(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line, out;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        const std::size_t a = line.find(',');
        if (a == std::string::npos)
            throw std::runtime_error("emit_plot_data: malformed row in " + name);
        const std::size_t b = line.find(',', a + 1);
        const std::string second =
            b == std::string::npos ? line.substr(a + 1) : line.substr(a + 1, b - a - 1);
        out += line.substr(0, a) + " " + second + "\n";
    }
    return out;
}

}  // namespace

std::vector<std::string> emit_plot_data(const RunRecord& record) {
    struct Mapping {
        const char* csv;
        const char* dat;
        bool loglog;
    };
    static const Mapping kMappings[] = {
        {"hbar.csv", "hbar.dat", false},
        {"ubar.csv", "ubar.dat", false},
        {"phi.csv", "phi.dat", false},
        {"convergence.csv", "convergence.dat", false},
        {"spectrum_ubar.csv", "spectrum.dat", true},
        {"spectrum_phi.csv", "spectrum_phi.dat", true},
        {"resonance.csv", "resonance.dat", false},
        {"rescale.csv", "rescale.dat", false},
        {"waveconv.csv", "waveconv.dat", false},
    };

    const fs::path dir(record.out_dir);
    std::vector<std::string> written;
    std::string script = "set terminal pngcairo size 900,600\n";
    for (const Mapping& map : kMappings) {
        if (std::find(record.files.begin(), record.files.end(), map.csv) ==
            record.files.end())
            continue;
        const std::string text = read_text_file((dir / map.csv).string());
        write_text_file((dir / map.dat).string(), csv_to_dat(text, map.csv));
        written.push_back(map.dat);

        const std::string stem = std::string(map.dat).substr(0, std::string(map.dat).find('.'));
        script += "\nset output '" + stem + ".png'\n";
        script += map.loglog ? "set logscale xy\n" : "unset logscale\n";
        script += "plot '" + std::string(map.dat) + "' using 1:2 with lines title '" + stem +
                  "'\n";
    }
    write_text_file((dir / "plot.gp").string(), script);
    written.push_back("plot.gp");
    return written;
}

RunRecord run_experiment(const ExperimentConfig& config) {
    if (config.out_dir.empty())
        throw ConfigError("field 'output.dir': must not be empty");

    RunRecord record;
    record.experiment = to_string(config.experiment);
    record.config_echo = serialize_config(config);
    record.out_dir = config.out_dir;
    record.started_at = iso_now();
    fs::create_directories(config.out_dir);
    Sink sink{fs::path(config.out_dir), &record.files};

    try {
        switch (config.experiment) {
            case ExperimentKind::Evolve: run_evolve(config, sink, record); break;
            case ExperimentKind::Stationary: run_stationary(config, sink, record); break;
            case ExperimentKind::Hbar: run_hbar(config, sink, record); break;
            case ExperimentKind::Spectrum: run_spectrum(config, sink, record); break;
            case ExperimentKind::Resonance: run_resonance(config, sink, record); break;
            case ExperimentKind::Rescale: run_rescale(config, sink, record); break;
            case ExperimentKind::WaveConv: run_waveconv(config, sink, record); break;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(record.experiment + ": " + e.what());
    }

    if (config.plot_emit) {
        for (std::string& name : emit_plot_data(record))
            record.files.push_back(std::move(name));
    }
    record.finished_at = iso_now();

    ordered_json j;
    j["experiment"] = record.experiment;
    j["started_at"] = record.started_at;
    j["finished_at"] = record.finished_at;
    j["out_dir"] = record.out_dir;
    j["config"] = record.config_echo;
    j["files"] = record.files;
    ordered_json metrics = ordered_json::object();
    for (const auto& [name, value] : record.metrics) metrics[name] = json_or_null(value);
    j["metrics"] = metrics;
    write_text_file((fs::path(config.out_dir) / "run_record.json").string(),
                    j.dump(2) + "\n");
    return record;
}

double rescale_equivalence(const ExperimentConfig& base, int m, double dt_scale) {
    if (m < 1) throw ConfigError("rescale: factor must be a positive integer");
    if (base.tabulated)
        throw ConfigError("rescale: closed-form cosine forcing required");
    if (base.omega != 0.0) throw ConfigError("rescale: steady forcing required");
    if (base.u0_kind != U0Kind::SineBump && base.u0_kind != U0Kind::Constant)
        throw ConfigError("rescale: initial data must be the sine bump or a constant");
    const std::size_t um = static_cast<std::size_t>(m);
    if (base.grid_n % um != 0)
        throw ConfigError("rescale: grid_n = " + std::to_string(base.grid_n) +
                          " not divisible by factor " + std::to_string(m));
    const std::size_t n_b = base.grid_n / um;
    if (n_b < 8 || (n_b & (n_b - 1)) != 0)
        throw ConfigError("rescale: grid_n / factor must be a power of two >= 8");

    const auto initial = [&](const TorusGrid& grid, long long freq_scale) {
        std::vector<double> v(grid.n, base.p);
        if (base.u0_kind == U0Kind::SineBump) {
            for (std::size_t j = 0; j < grid.n; ++j)
                v[j] += base.amplitude * center_sin(base.freq * freq_scale, j, grid.n);
        }
        return make_field(grid, std::move(v));
    };

    const TorusGrid grid_a = make_grid(base.grid_n);
    const TorusGrid grid_b = make_grid(n_b);
    const ForcingSpec spec_a = make_cosine_forcing(base.kappa0 * m);
    const ForcingSpec spec_b = make_cosine_forcing(base.kappa0);

    SolverConfig cfg_a;
    cfg_a.cfl = base.cfl;
    cfg_a.t_end = base.t_end;
    cfg_a.record_every = base.record_every;
    SolverConfig cfg_b;
    cfg_b.cfl = base.cfl * dt_scale;
    cfg_b.t_end = base.t_end * m;
    cfg_b.record_every = base.record_every * m;

    const Trajectory a = evolve(initial(grid_a, m), spec_a, cfg_a);
    const Trajectory b = evolve(initial(grid_b, 1), spec_b, cfg_b);
    if (a.times.size() != b.times.size())
        throw std::runtime_error("rescale: record cadence mismatch between runs");

    double worst = 0.0;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        for (std::size_t j = 0; j < a.states[i].size(); ++j) {
            worst = std::max(worst, std::abs(a.states[i][j] - b.states[i][j % n_b]));
        }
    }
    return worst;
}

}  // namespace burgerlab
