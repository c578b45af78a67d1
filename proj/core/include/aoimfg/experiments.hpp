#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace aoimfg {

// One produced CSV artifact: file name (no directory) plus full content.
struct ExperimentOutput {
    std::string filename;
    std::string content;
};

// Everything an experiment run produces. `manifest` lists every file with a
// content hash so reruns can be compared byte-for-byte.
struct ExperimentResult {
    std::string name;
    uint64_t seed = 0;
    std::vector<ExperimentOutput> files;
    std::string manifest_filename;
    std::string manifest;
};

// --- named experiment recipes ----------------------------------------------
// Each is a pure function of its arguments: rerunning with the same seed
// (and replication count) yields byte-identical CSV content.

// Single-device accuracy sweep: lambda in {0.1,...,2.0}, mu = 1, k = 2,
// 50,000 arrivals per point, both schemes, closed forms vs simulation.
ExperimentResult run_fig3(uint64_t seed);

// Population-vs-ODE study at lambda=0.8, mu=1, w=2, gamma=2:
//  (a) fraction trajectories for N in {10,100,1000} (one path, the mean over
//      `replications` paths, and the ODE solution) on t in [0,10];
//  (b) stationary AoI table at w=1 for N in {10,20,50,100}: pooled simulation
//      estimates over [500,1000] plus the closed-form limits.
ExperimentResult run_fig4_table1(uint64_t seed, int replications = 200,
                                 int jobs = 0);

// Best-response iteration trace from w0=1 at lambda=0.8, mu=1, gamma=5,
// costs (0.1, 0.2, 0.4): per-iteration w, busy fraction, AoI, energy.
ExperimentResult run_fig5(uint64_t seed);

// Which variable an equilibrium sweep varies.
enum class SweepVar { LAMBDA, MU };

// Equilibrium sweep over {0.3,0.5,...,1.9} for gamma in {2,5} at costs
// (0.1, 0.2, 0.4): equilibrium case, theta, w*, k*, AoI both schemes, energy.
// The non-swept rate stays at lambda=0.8 / mu=1.
ExperimentResult run_fig6_fig7(SweepVar sweep, uint64_t seed);

// Baseline comparison at gamma=5 over both sweeps: the equilibrium policy vs
// fixed w=1 and dynamic w=max{lambda,mu}, each evaluated at its own induced
// population equilibrium; WP average AoI and energy per policy, plus the
// baselines' relative AoI excess on the equilibrium-policy rows.
ExperimentResult run_fig8_baselines(uint64_t seed);

// --- registry ----------------------------------------------------------------

// Registered names: fig3, fig4_table1, fig5, fig6, fig7, fig8_baselines.
const std::vector<std::string>& experiment_names();
bool is_experiment_name(const std::string& name);

// Runs a registered experiment by name. `replications` and `jobs` only
// affect experiments that simulate (currently fig4_table1); pass 0 to use
// the experiment's default replication count. Throws DomainError for an
// unknown name.
ExperimentResult run_experiment(const std::string& name, uint64_t seed,
                                int replications = 0, int jobs = 0);

// Writes all files plus the manifest into out_dir (created if missing).
// Returns the paths written, manifest last.
std::vector<std::filesystem::path> write_experiment(
    const ExperimentResult& result, const std::filesystem::path& out_dir);

}  // namespace aoimfg
