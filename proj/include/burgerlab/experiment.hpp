#pragma once

#include <string>
#include <utility>
#include <vector>

#include "burgerlab/config.hpp"

namespace burgerlab {

/// Record of one experiment run: the canonical config echo, wall-clock
/// bounds, the manifest of files written under out_dir (relative names,
/// excluding run_record.json itself), and headline metrics in insertion
/// order. The wall-clock fields are the only nondeterministic output of
/// the whole pipeline, and they appear only in run_record.json.
struct RunRecord {
    std::string experiment;
    std::string config_echo;
    std::string started_at;   // ISO-8601 UTC
    std::string finished_at;  // ISO-8601 UTC
    std::string out_dir;
    std::vector<std::string> files;
    std::vector<std::pair<std::string, double>> metrics;
};

/// Dispatch one experiment: compute, write every output under
/// config.out_dir (CSV/JSON, plus gnuplot-ready data files and a commands
/// script when plot_emit is set), and persist run_record.json. Outputs are
/// byte-identical across reruns of the same config, the wall-clock fields
/// of run_record.json aside. Configuration problems throw ConfigError;
/// numerical failures keep their own types, prefixed with the experiment
/// name.
RunRecord run_experiment(const ExperimentConfig& config);

/// Exact discrete rescaling check. Run A evolves on base.grid_n cells
/// under the cosine forcing at wavenumber m*kappa0 (whose built-in
/// amplitude realizes m*f(m*x)) with initial data p + a sin(m*freq*x);
/// run B evolves the unscaled forcing on grid_n/m cells for time m*t_end
/// at cadence m*record_every from p + a sin(freq*x). The two update
/// sequences are algebraically identical, and for power-of-two m every
/// floating-point operation scales exactly, so the returned
///   max over snapshots i, cells j of |A_i[j] - B_i[j mod n_B]|
/// is zero when dt_scale = 1 (m = 1 compares a run against itself).
/// dt_scale multiplies run B's CFL number only, deliberately breaking the
/// time-step correspondence to expose the O(dt) sensitivity.
double rescale_equivalence(const ExperimentConfig& base, int m, double dt_scale = 1.0);

/// Two-column ASCII data files (space-separated, header dropped) for the
/// record's primary CSV outputs, plus a plain gnuplot script "plot.gp"
/// referencing them. Returns the names of the files written, relative to
/// record.out_dir. Throws if a manifest entry it needs cannot be read.
std::vector<std::string> emit_plot_data(const RunRecord& record);

}  // namespace burgerlab
