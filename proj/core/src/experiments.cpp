#include "aoimfg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "aoimfg/analytic.hpp"
#include "aoimfg/game.hpp"
#include "aoimfg/io.hpp"
#include "aoimfg/meanfield.hpp"
#include "aoimfg/sim.hpp"

namespace aoimfg {

namespace {

// Shared cost triple (sensing, transmission, budget) used by every
// game-facing experiment.
constexpr double kCs = 0.1;
constexpr double kCt = 0.2;
constexpr double kCb = 0.4;

SystemParams make_params(double lambda, double mu, double gamma, Rate w,
                         long n = 0, long m = 0) {
    SystemParams p;
    p.lambda = lambda;
    p.mu = mu;
    p.gamma = gamma;
    p.n_devices = n;
    p.m_channels = m;
    p.c_sense = kCs;
    p.c_transmit = kCt;
    p.c_budget = kCb;
    p.w = w;
    return p;
}

std::string exp_basename(const std::string& name, uint64_t seed) {
    return name + "_" + std::to_string(seed);
}

ExperimentResult finish(std::string name, uint64_t seed,
                        std::vector<ExperimentOutput> files) {
    ExperimentResult r;
    r.name = std::move(name);
    r.seed = seed;
    r.files = std::move(files);
    r.manifest_filename = exp_basename(r.name, seed) + ".manifest.txt";
    std::string m = csv_line({"file", "fnv1a64", "bytes"});
    for (const auto& f : r.files)
        m += csv_line({f.filename, fnv1a64_hex(f.content),
                       std::to_string(f.content.size())});
    r.manifest = std::move(m);
    return r;
}

// Mean and standard error of the mean.
struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
    MeanSe out;
    if (xs.empty()) return out;
    double s = 0.0;
    for (double x : xs) s += x;
    out.mean = s / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double q = 0.0;
        for (double x : xs) q += (x - out.mean) * (x - out.mean);
        double var = q / static_cast<double>(xs.size() - 1);
        out.se = std::sqrt(var / static_cast<double>(xs.size()));
    }
    return out;
}

}  // namespace

ExperimentResult run_fig3(uint64_t seed) {
    const double mu = 1.0;
    const Rate k(2.0);
    const long arrivals = 50000;

    std::string csv = csv_line({"lambda", "mu", "k", "scheme", "avg_analytic",
                                "peak_analytic", "avg_sim", "peak_sim",
                                "rel_err_avg", "rel_err_peak", "arrivals",
                                "seed"});
    for (int i = 1; i <= 20; ++i) {
        double lambda = static_cast<double>(i) / 10.0;
        DeviceRun run = simulate_device_paired(lambda, mu, k, arrivals,
                                               seed + static_cast<uint64_t>(i));
        const struct {
            Scheme scheme;
            const AoiStats& stats;
        } rows[] = {{Scheme::WITH_PREEMPTION, run.wp},
                    {Scheme::WITHOUT_PREEMPTION, run.wop}};
        for (const auto& row : rows) {
            AoiPair exact = aoi(row.scheme, lambda, mu, k);
            double rel_avg = std::abs(row.stats.time_avg_aoi - exact.avg_aoi) /
                             exact.avg_aoi;
            double rel_peak =
                std::abs(row.stats.mean_peak_aoi - exact.avg_peak_aoi) /
                exact.avg_peak_aoi;
            csv += csv_line({fmt_g(lambda), fmt_g(mu), fmt_g(k),
                             scheme_name(row.scheme), fmt_g(exact.avg_aoi),
                             fmt_g(exact.avg_peak_aoi),
                             fmt_g(row.stats.time_avg_aoi),
                             fmt_g(row.stats.mean_peak_aoi), fmt_g(rel_avg),
                             fmt_g(rel_peak), std::to_string(arrivals),
                             std::to_string(seed)});
        }
    }
    return finish("fig3", seed,
                  {{exp_basename("fig3", seed) + ".csv", std::move(csv)}});
}

ExperimentResult run_fig4_table1(uint64_t seed, int replications, int jobs) {
    if (replications < 1) throw DomainError("replications must be >= 1");
    const double lambda = 0.8, mu = 1.0, gamma = 2.0;
    const double horizon_traj = 10.0, dt = 0.1;

    // (a) fraction trajectories at w = 2 for three population sizes.
    std::string traj_csv =
        csv_line({"t", "x_I", "x_W", "x_S", "source", "n", "lambda", "mu",
                  "gamma", "w", "replications", "seed"});
    const long traj_sizes[] = {10, 100, 1000};
    for (long n : traj_sizes) {
        SystemParams p = make_params(lambda, mu, gamma, Rate(2.0), n, n / 2);
        auto append_rows = [&](const char* source,
                               const std::vector<Trajectory::Sample>& samples) {
            for (const auto& s : samples)
                traj_csv += csv_line(
                    {fmt_g(s.t), fmt_g(s.state.x_idle), fmt_g(s.state.x_wait),
                     fmt_g(s.state.x_service), source, std::to_string(n),
                     fmt_g(lambda), fmt_g(mu), fmt_g(gamma), fmt_g(p.w),
                     std::to_string(replications), std::to_string(seed)});
        };

        Trajectory single = simulate_density(p, horizon_traj, seed, 0, dt);
        append_rows("sim_single", single.samples);

        std::vector<Trajectory> reps(static_cast<size_t>(replications));
        parallel_for_index(replications, jobs, [&](long r) {
            reps[static_cast<size_t>(r)] = simulate_density(
                p, horizon_traj, seed, static_cast<uint64_t>(r), dt);
        });
        std::vector<Trajectory::Sample> mean = reps[0].samples;
        for (size_t j = 0; j < mean.size(); ++j) {
            double si = 0.0, sw = 0.0, ss = 0.0;
            for (const auto& rep : reps) {
                si += rep.samples[j].state.x_idle;
                sw += rep.samples[j].state.x_wait;
                ss += rep.samples[j].state.x_service;
            }
            double r = static_cast<double>(replications);
            mean[j].state.x_idle = si / r;
            mean[j].state.x_wait = sw / r;
            mean[j].state.x_service = ss / r;
        }
        append_rows("sim_mean", mean);

        Trajectory ode = integrate(make_state(1.0, 0.0, 0.0), p, 0.01,
                                   horizon_traj);
        std::vector<Trajectory::Sample> ode_grid;
        for (size_t j = 0; j < ode.samples.size(); j += 10)
            ode_grid.push_back(ode.samples[j]);
        append_rows("ode", ode_grid);
    }

    // (b) stationary AoI table at w = 1: pooled simulation vs closed forms.
    const double horizon_tab = 1000.0, warmup = 500.0;
    SystemParams base = make_params(lambda, mu, gamma, Rate(1.0));
    MeanFieldState eq = equilibrium(base);
    Rate k_star = effective_rate(base.w, gamma, eq.x_service);
    AoiPair mf_wp = aoi(Scheme::WITH_PREEMPTION, lambda, mu, k_star);
    AoiPair mf_wop = aoi(Scheme::WITHOUT_PREEMPTION, lambda, mu, k_star);

    const long table_sizes[] = {10, 20, 50, 100};
    const int n_sizes = 4;
    std::vector<PopulationRun> runs(
        static_cast<size_t>(n_sizes * replications));
    parallel_for_index(n_sizes * replications, jobs, [&](long idx) {
        long size_idx = idx / replications;
        long r = idx % replications;
        long n = table_sizes[size_idx];
        SystemParams p = make_params(lambda, mu, gamma, Rate(1.0), n, n / 2);
        runs[static_cast<size_t>(idx)] = simulate_population_paired(
            p, horizon_tab, warmup, seed, static_cast<uint64_t>(r), dt);
    });

    std::string tab_csv = csv_line(
        {"n", "m", "scheme", "avg_aoi_sim", "avg_aoi_stderr", "peak_aoi_sim",
         "peak_aoi_stderr", "avg_aoi_mf", "peak_aoi_mf", "lambda", "mu",
         "gamma", "w", "replications", "horizon", "warmup", "seed"});
    for (int size_idx = 0; size_idx < n_sizes; ++size_idx) {
        long n = table_sizes[size_idx];
        const struct {
            Scheme scheme;
            const AoiPair& mf;
        } rows[] = {{Scheme::WITH_PREEMPTION, mf_wp},
                    {Scheme::WITHOUT_PREEMPTION, mf_wop}};
        for (const auto& row : rows) {
            std::vector<double> avgs, peaks;
            avgs.reserve(static_cast<size_t>(replications));
            peaks.reserve(static_cast<size_t>(replications));
            for (int r = 0; r < replications; ++r) {
                const PopulationRun& run =
                    runs[static_cast<size_t>(size_idx * replications + r)];
                const AoiStats& st =
                    row.scheme == Scheme::WITH_PREEMPTION ? run.wp : run.wop;
                avgs.push_back(st.time_avg_aoi);
                peaks.push_back(st.mean_peak_aoi);
            }
            MeanSe a = mean_se(avgs), pk = mean_se(peaks);
            tab_csv += csv_line(
                {std::to_string(n), std::to_string(n / 2),
                 scheme_name(row.scheme), fmt_g(a.mean), fmt_g(a.se),
                 fmt_g(pk.mean), fmt_g(pk.se), fmt_g(row.mf.avg_aoi),
                 fmt_g(row.mf.avg_peak_aoi), fmt_g(lambda), fmt_g(mu),
                 fmt_g(gamma), fmt_g(1.0), std::to_string(replications),
                 fmt_g(horizon_tab), fmt_g(warmup), std::to_string(seed)});
        }
    }

    std::string stem = exp_basename("fig4_table1", seed);
    return finish("fig4_table1", seed,
                  {{stem + "_trajectories.csv", std::move(traj_csv)},
                   {stem + "_table.csv", std::move(tab_csv)}});
}

ExperimentResult run_fig5(uint64_t seed) {
    SystemParams p = make_params(0.8, 1.0, 5.0, Rate(1.0));
    IterationTrace trace = fixed_point_iterate(p, Rate(1.0), 200);

    std::string csv = csv_line({"iter", "w", "theta", "avg_aoi_wp",
                                "avg_aoi_wop", "peak_aoi_wp", "peak_aoi_wop",
                                "energy", "lambda", "mu", "gamma", "c_sense",
                                "c_transmit", "c_budget", "seed"});
    for (const auto& s : trace.steps)
        csv += csv_line({std::to_string(s.iter), fmt_g(s.w), fmt_g(s.theta),
                         fmt_g(s.aoi_wp.avg_aoi), fmt_g(s.aoi_wop.avg_aoi),
                         fmt_g(s.aoi_wp.avg_peak_aoi),
                         fmt_g(s.aoi_wop.avg_peak_aoi), fmt_g(s.energy),
                         fmt_g(p.lambda), fmt_g(p.mu), fmt_g(p.gamma),
                         fmt_g(p.c_sense), fmt_g(p.c_transmit),
                         fmt_g(p.c_budget), std::to_string(seed)});
    return finish("fig5", seed,
                  {{exp_basename("fig5", seed) + ".csv", std::move(csv)}});
}

namespace {

// Equilibrium quantities induced by holding waiting rate w against the
// population state it generates.
struct PolicyPoint {
    Rate w;
    double theta = 0.0;
    Rate k;
    AoiPair wp;
    AoiPair wop;
    double energy = 0.0;
};

PolicyPoint evaluate_policy(const SystemParams& base, Rate w) {
    SystemParams p = base;
    p.w = w;
    MeanFieldState eq = equilibrium(p);
    PolicyPoint out;
    out.w = w;
    out.theta = eq.busy_fraction(p.gamma);
    out.k = effective_rate(w, p.gamma, eq.x_service);
    out.wp = aoi(Scheme::WITH_PREEMPTION, p.lambda, p.mu, out.k);
    out.wop = aoi(Scheme::WITHOUT_PREEMPTION, p.lambda, p.mu, out.k);
    out.energy = budget_energy(p.lambda, p.mu, w, out.theta, p.c_sense,
                               p.c_transmit);
    return out;
}

double sweep_value(int i) { return static_cast<double>(3 + 2 * i) / 10.0; }

}  // namespace

ExperimentResult run_fig6_fig7(SweepVar sweep, uint64_t seed) {
    const char* sweep_tag = sweep == SweepVar::LAMBDA ? "lambda" : "mu";
    std::string csv = csv_line(
        {"sweep", "lambda", "mu", "gamma", "case", "theta", "w_star", "k_star",
         "avg_aoi_wp", "peak_aoi_wp", "avg_aoi_wop", "peak_aoi_wop", "energy",
         "c_sense", "c_transmit", "c_budget", "seed"});
    for (double gamma : {2.0, 5.0}) {
        for (int i = 0; i < 9; ++i) {
            double v = sweep_value(i);
            double lambda = sweep == SweepVar::LAMBDA ? v : 0.8;
            double mu = sweep == SweepVar::MU ? v : 1.0;
            SystemParams p = make_params(lambda, mu, gamma, Rate(1.0));
            MfeOutcome outcome = classify_mfe(p);
            PolicyPoint pt = evaluate_policy(p, outcome.w_star);
            csv += csv_line(
                {sweep_tag, fmt_g(lambda), fmt_g(mu), fmt_g(gamma),
                 case_name(outcome.case_tag), fmt_g(pt.theta), fmt_g(pt.w),
                 fmt_g(pt.k), fmt_g(pt.wp.avg_aoi), fmt_g(pt.wp.avg_peak_aoi),
                 fmt_g(pt.wop.avg_aoi), fmt_g(pt.wop.avg_peak_aoi),
                 fmt_g(pt.energy), fmt_g(kCs), fmt_g(kCt), fmt_g(kCb),
                 std::to_string(seed)});
        }
    }
    const char* name = sweep == SweepVar::LAMBDA ? "fig6" : "fig7";
    return finish(name, seed,
                  {{exp_basename(name, seed) + ".csv", std::move(csv)}});
}

ExperimentResult run_fig8_baselines(uint64_t seed) {
    const double gamma = 5.0;
    std::string csv = csv_line(
        {"sweep", "lambda", "mu", "gamma", "policy", "w", "theta", "k",
         "avg_aoi_wp", "energy", "excess_vs_fixed_pct",
         "excess_vs_dynamic_pct", "c_sense", "c_transmit", "c_budget",
         "seed"});
    for (SweepVar sweep : {SweepVar::LAMBDA, SweepVar::MU}) {
        const char* sweep_tag = sweep == SweepVar::LAMBDA ? "lambda" : "mu";
        for (int i = 0; i < 9; ++i) {
            double v = sweep_value(i);
            double lambda = sweep == SweepVar::LAMBDA ? v : 0.8;
            double mu = sweep == SweepVar::MU ? v : 1.0;
            SystemParams p = make_params(lambda, mu, gamma, Rate(1.0));

            MfeOutcome outcome = classify_mfe(p);
            PolicyPoint mfg = evaluate_policy(p, outcome.w_star);
            PolicyPoint fixed = evaluate_policy(p, Rate(1.0));
            PolicyPoint dyn = evaluate_policy(p, Rate(std::max(lambda, mu)));

            double ex_fixed =
                (fixed.wp.avg_aoi - mfg.wp.avg_aoi) / mfg.wp.avg_aoi * 100.0;
            double ex_dyn =
                (dyn.wp.avg_aoi - mfg.wp.avg_aoi) / mfg.wp.avg_aoi * 100.0;

            const struct {
                const char* policy;
                const PolicyPoint& pt;
                std::string exf, exd;
            } rows[] = {{"mfg", mfg, fmt_g(ex_fixed), fmt_g(ex_dyn)},
                        {"fixed_w1", fixed, "", ""},
                        {"dynamic_wmax", dyn, "", ""}};
            for (const auto& row : rows)
                csv += csv_line(
                    {sweep_tag, fmt_g(lambda), fmt_g(mu), fmt_g(gamma),
                     row.policy, fmt_g(row.pt.w), fmt_g(row.pt.theta),
                     fmt_g(row.pt.k), fmt_g(row.pt.wp.avg_aoi),
                     fmt_g(row.pt.energy), row.exf, row.exd, fmt_g(kCs),
                     fmt_g(kCt), fmt_g(kCb), std::to_string(seed)});
        }
    }
    return finish(
        "fig8_baselines", seed,
        {{exp_basename("fig8_baselines", seed) + ".csv", std::move(csv)}});
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "fig3", "fig4_table1", "fig5", "fig6", "fig7", "fig8_baselines"};
    return names;
}

bool is_experiment_name(const std::string& name) {
    const auto& names = experiment_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

ExperimentResult run_experiment(const std::string& name, uint64_t seed,
                                int replications, int jobs) {
    if (name == "fig3") return run_fig3(seed);
    if (name == "fig4_table1")
        return run_fig4_table1(seed, replications > 0 ? replications : 200,
                               jobs);
    if (name == "fig5") return run_fig5(seed);
    if (name == "fig6") return run_fig6_fig7(SweepVar::LAMBDA, seed);
    if (name == "fig7") return run_fig6_fig7(SweepVar::MU, seed);
    if (name == "fig8_baselines") return run_fig8_baselines(seed);
    throw DomainError("unknown experiment: " + name);
}

std::vector<std::filesystem::path> write_experiment(
    const ExperimentResult& result, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> paths;
    for (const auto& f : result.files) {
        paths.push_back(out_dir / f.filename);
        write_file(paths.back(), f.content);
    }
    paths.push_back(out_dir / result.manifest_filename);
    write_file(paths.back(), result.manifest);
    return paths;
}

}  // namespace aoimfg
