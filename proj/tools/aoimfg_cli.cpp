// Command-line front end: ad-hoc evaluation of the closed-form metrics,
// equilibrium solvers, simulators, and the named experiment recipes.
//
// Machine-first output: plain CSV on stdout (12 significant digits), aligned
// tables only under --pretty. Exit codes: 0 success, 2 bad usage or domain
// error, 1 internal error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aoimfg/analytic.hpp"
#include "aoimfg/experiments.hpp"
#include "aoimfg/game.hpp"
#include "aoimfg/io.hpp"
#include "aoimfg/meanfield.hpp"
#include "aoimfg/model.hpp"
#include "aoimfg/sim.hpp"

namespace {

using namespace aoimfg;

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Options {
    double lambda = kUnset;
    double mu = kUnset;
    double gamma = kUnset;
    double w = kUnset;
    bool w_inf = false;
    double k = kUnset;
    bool k_inf = false;
    double w0 = kUnset;
    bool w0_inf = false;
    double cs = kUnset;
    double ct = kUnset;
    double cb = kUnset;
    long n = 0;
    long m = 0;
    std::string scheme = "both";
    uint64_t seed = 1;
    std::string out_dir = ".";
    int replications = 0;
    int jobs = 0;
    std::string format = "csv";
    bool pretty = false;
    long arrivals = 50000;
    double horizon = kUnset;
    double warmup = kUnset;
    double step = kDefaultStep;
    double sample_dt = 0.1;
    int max_iters = 200;
    double x0_idle = 1.0;
    double x0_wait = 0.0;
    double x0_service = 0.0;
    std::string experiment_name;
};

bool given(double v) { return !std::isnan(v); }

double need(double v, const char* flag) {
    if (!given(v)) throw DomainError(std::string("missing required --") + flag);
    return v;
}

// Finite-or-infinite rate from a value flag plus an -inf switch.
Rate need_rate(double v, bool inf, const char* flag) {
    if (inf) return Rate::infinity();
    if (!given(v))
        throw DomainError(std::string("missing required --") + flag +
                          " (or --" + flag + "-inf)");
    return Rate(v);
}

std::vector<Scheme> selected_schemes(const std::string& scheme) {
    if (scheme == "wp") return {Scheme::WITH_PREEMPTION};
    if (scheme == "wop") return {Scheme::WITHOUT_PREEMPTION};
    return {Scheme::WITH_PREEMPTION, Scheme::WITHOUT_PREEMPTION};
}

// Cost triple for simulation energy columns; defaults to 1 when not given.
double cost_or_one(double v) { return given(v) ? v : 1.0; }

// CSV on stdout, or a space-aligned table under --pretty.
void emit(const Options& o, const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows) {
    if (!o.pretty) {
        std::string out = csv_line(header);
        for (const auto& r : rows) out += csv_line(r);
        std::fputs(out.c_str(), stdout);
        return;
    }
    std::vector<size_t> width(header.size());
    for (size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (size_t c = 0; c < r.size() && c < width.size(); ++c)
            width[c] = std::max(width[c], r[c].size());
    auto print_row = [&](const std::vector<std::string>& r) {
        std::string line;
        for (size_t c = 0; c < r.size(); ++c) {
            if (c) line += "  ";
            line += r[c];
            line.append(width[c] - r[c].size(), ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        line += '\n';
        std::fputs(line.c_str(), stdout);
    };
    print_row(header);
    for (const auto& r : rows) print_row(r);
}

SystemParams base_params(const Options& o, double lambda, double mu,
                         double gamma, Rate w, long n = 0, long m = 0) {
    SystemParams p;
    p.lambda = lambda;
    p.mu = mu;
    p.gamma = gamma;
    p.n_devices = n;
    p.m_channels = m;
    p.c_sense = cost_or_one(o.cs);
    p.c_transmit = cost_or_one(o.ct);
    p.c_budget = cost_or_one(o.cb);
    p.w = w;
    return validate(p);
}

// Effective waiting rate induced by holding w against its own equilibrium;
// the saturated endpoint (every channel busy) uses the flow-balance rate.
Rate induced_k(const SystemParams& p, double& theta_out) {
    MeanFieldState eq = equilibrium(p);
    theta_out = eq.busy_fraction(p.gamma);
    if (!p.w.infinite()) return effective_rate(p.w, p.gamma, eq.x_service);
    if (theta_out < 1.0) return Rate::infinity();
    return Rate(p.lambda * p.mu /
                (p.lambda * p.gamma - p.lambda - p.mu));
}

void cmd_aoi(const Options& o) {
    double lambda = need(o.lambda, "lambda");
    double mu = need(o.mu, "mu");
    Rate k;
    std::string gamma_cell, w_cell;
    if (o.k_inf || given(o.k)) {
        k = need_rate(o.k, o.k_inf, "k");
    } else if (o.w_inf || given(o.w)) {
        double gamma = need(o.gamma, "gamma");
        SystemParams p = base_params(o, lambda, mu, gamma,
                                     need_rate(o.w, o.w_inf, "w"));
        double theta = 0.0;
        k = induced_k(p, theta);
        gamma_cell = fmt_g(gamma);
        w_cell = fmt_g(p.w);
    } else {
        throw DomainError(
            "provide --k/--k-inf directly, or --w/--w-inf with --gamma to "
            "evaluate at the induced equilibrium rate");
    }
    std::vector<std::vector<std::string>> rows;
    for (Scheme s : selected_schemes(o.scheme)) {
        AoiPair a = aoi(s, lambda, mu, k);
        rows.push_back({scheme_name(s), fmt_g(lambda), fmt_g(mu), gamma_cell,
                        w_cell, fmt_g(k), fmt_g(a.avg_aoi),
                        fmt_g(a.avg_peak_aoi)});
    }
    emit(o, {"scheme", "lambda", "mu", "gamma", "w", "k", "avg_aoi",
             "peak_aoi"},
         rows);
}

void cmd_equilibrium(const Options& o) {
    SystemParams p = base_params(o, need(o.lambda, "lambda"),
                                 need(o.mu, "mu"), need(o.gamma, "gamma"),
                                 need_rate(o.w, o.w_inf, "w"));
    MeanFieldState eq = equilibrium(p);
    double theta = eq.busy_fraction(p.gamma);
    Rate k = induced_k(p, theta);
    emit(o,
         {"lambda", "mu", "gamma", "w", "x_I", "x_W", "x_S", "theta", "k"},
         {{fmt_g(p.lambda), fmt_g(p.mu), fmt_g(p.gamma), fmt_g(p.w),
           fmt_g(eq.x_idle), fmt_g(eq.x_wait), fmt_g(eq.x_service),
           fmt_g(theta), fmt_g(k)}});
}

void cmd_integrate(const Options& o) {
    SystemParams p = base_params(o, need(o.lambda, "lambda"),
                                 need(o.mu, "mu"), need(o.gamma, "gamma"),
                                 need_rate(o.w, o.w_inf, "w"));
    double horizon = given(o.horizon) ? o.horizon : kDefaultHorizon;
    MeanFieldState x0 = make_state(o.x0_idle, o.x0_wait, o.x0_service);
    Trajectory traj = integrate(x0, p, o.step, horizon);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(traj.samples.size());
    for (const auto& s : traj.samples)
        rows.push_back({fmt_g(s.t), fmt_g(s.state.x_idle),
                        fmt_g(s.state.x_wait), fmt_g(s.state.x_service),
                        "ode"});
    emit(o, {"t", "x_I", "x_W", "x_S", "source"}, rows);
}

void cmd_mfe(const Options& o) {
    SystemParams p;
    p.lambda = need(o.lambda, "lambda");
    p.mu = need(o.mu, "mu");
    p.gamma = need(o.gamma, "gamma");
    p.c_sense = need(o.cs, "cs");
    p.c_transmit = need(o.ct, "ct");
    p.c_budget = need(o.cb, "cbudget");
    p.w = Rate(1.0);
    p = validate(p);

    MfeOutcome out = classify_mfe(p);
    std::vector<std::string> row{fmt_g(p.lambda),  fmt_g(p.mu),
                                 fmt_g(p.gamma),   fmt_g(p.c_sense),
                                 fmt_g(p.c_transmit), fmt_g(p.c_budget),
                                 case_name(out.case_tag)};
    if (out.case_tag == MfeCase::CASE3) {
        row.insert(row.end(), {"", "", "", "", "", "", "", "",
                               fmt_g(out.oscillation_lo),
                               fmt_g(out.oscillation_hi)});
    } else {
        SystemParams pe = p;
        pe.w = out.w_star;
        double theta = 0.0;
        Rate k = induced_k(pe, theta);
        AoiPair wp = aoi(Scheme::WITH_PREEMPTION, p.lambda, p.mu, k);
        AoiPair wop = aoi(Scheme::WITHOUT_PREEMPTION, p.lambda, p.mu, k);
        double energy = budget_energy(p.lambda, p.mu, out.w_star, theta,
                                      p.c_sense, p.c_transmit);
        row.insert(row.end(),
                   {fmt_g(theta), fmt_g(out.w_star), fmt_g(k),
                    fmt_g(wp.avg_aoi), fmt_g(wp.avg_peak_aoi),
                    fmt_g(wop.avg_aoi), fmt_g(wop.avg_peak_aoi),
                    fmt_g(energy), "", ""});
    }
    emit(o,
         {"lambda", "mu", "gamma", "c_sense", "c_transmit", "c_budget",
          "case", "theta", "w_star", "k_star", "avg_aoi_wp", "peak_aoi_wp",
          "avg_aoi_wop", "peak_aoi_wop", "energy", "oscillation_lo",
          "oscillation_hi"},
         {row});
}

void cmd_iterate(const Options& o) {
    SystemParams p;
    p.lambda = need(o.lambda, "lambda");
    p.mu = need(o.mu, "mu");
    p.gamma = need(o.gamma, "gamma");
    p.c_sense = need(o.cs, "cs");
    p.c_transmit = need(o.ct, "ct");
    p.c_budget = need(o.cb, "cbudget");
    p.w = Rate(1.0);
    p = validate(p);

    Rate w0 = o.w0_inf ? Rate::infinity()
                       : (given(o.w0) ? Rate(o.w0) : Rate(1.0));
    IterationTrace trace = fixed_point_iterate(p, w0, o.max_iters);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(trace.steps.size());
    for (const auto& s : trace.steps)
        rows.push_back({std::to_string(s.iter), fmt_g(s.w), fmt_g(s.theta),
                        fmt_g(s.aoi_wp.avg_aoi), fmt_g(s.aoi_wop.avg_aoi),
                        fmt_g(s.aoi_wp.avg_peak_aoi),
                        fmt_g(s.aoi_wop.avg_peak_aoi), fmt_g(s.energy)});
    emit(o,
         {"iter", "w", "theta", "avg_aoi_wp", "avg_aoi_wop", "peak_aoi_wp",
          "peak_aoi_wop", "energy"},
         rows);

    std::string summary = std::string("terminal=") +
                          terminal_name(trace.terminal) +
                          " w_final=" + fmt_g(trace.w_final);
    if (trace.terminal == IterationTerminal::OSCILLATING)
        summary += " oscillation=" + fmt_g(trace.oscillation_lo) + "/" +
                   fmt_g(trace.oscillation_hi);
    summary += " iters=" + std::to_string(trace.steps.empty()
                                              ? 0
                                              : trace.steps.back().iter);
    summary += "\n";
    std::fputs(summary.c_str(), o.pretty ? stdout : stderr);
}

void cmd_check_convergence(const Options& o) {
    SystemParams p;
    p.lambda = need(o.lambda, "lambda");
    p.mu = need(o.mu, "mu");
    p.gamma = need(o.gamma, "gamma");
    p.c_sense = need(o.cs, "cs");
    p.c_transmit = need(o.ct, "ct");
    p.c_budget = need(o.cb, "cbudget");
    p.w = Rate(1.0);
    p = validate(p);
    ConvergenceCheck c = convergence_condition(p);
    emit(o,
         {"lambda", "mu", "gamma", "c_sense", "c_transmit", "c_budget",
          "satisfied", "value", "bound_b"},
         {{fmt_g(p.lambda), fmt_g(p.mu), fmt_g(p.gamma), fmt_g(p.c_sense),
           fmt_g(p.c_transmit), fmt_g(p.c_budget),
           c.satisfied ? "true" : "false", fmt_g(c.value),
           fmt_g(c.bound_b)}});
}

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
        out.se = std::sqrt(q / static_cast<double>(xs.size() - 1) /
                           static_cast<double>(xs.size()));
    }
    return out;
}

void cmd_simulate_device(const Options& o) {
    double lambda = need(o.lambda, "lambda");
    double mu = need(o.mu, "mu");
    if (o.k_inf)
        throw DomainError(
            "simulation needs a finite --k (use the closed forms for the "
            "no-waiting limit)");
    Rate k = need_rate(o.k, false, "k");
    int reps = o.replications > 0 ? o.replications : 1;
    double cs = cost_or_one(o.cs), ct = cost_or_one(o.ct);

    std::vector<DeviceRun> runs(static_cast<size_t>(reps));
    parallel_for_index(reps, o.jobs, [&](long r) {
        runs[static_cast<size_t>(r)] =
            simulate_device_paired(lambda, mu, k, o.arrivals,
                                   o.seed + static_cast<uint64_t>(r), false,
                                   cs, ct);
    });

    std::vector<std::vector<std::string>> rows;
    for (Scheme s : selected_schemes(o.scheme)) {
        std::vector<double> avgs, peaks, energies;
        for (const auto& run : runs) {
            const AoiStats& st =
                s == Scheme::WITH_PREEMPTION ? run.wp : run.wop;
            avgs.push_back(st.time_avg_aoi);
            peaks.push_back(st.mean_peak_aoi);
            energies.push_back(st.energy_rate);
        }
        MeanSe a = mean_se(avgs), pk = mean_se(peaks), en = mean_se(energies);
        rows.push_back({scheme_name(s), fmt_g(lambda), fmt_g(mu), "", "",
                        fmt_g(k), fmt_g(a.mean), fmt_g(pk.mean),
                        fmt_g(en.mean), std::to_string(reps), fmt_g(a.se),
                        fmt_g(pk.se)});
    }
    emit(o,
         {"scheme", "lambda", "mu", "gamma", "w", "k_measured", "avg_aoi",
          "peak_aoi", "energy", "replications", "avg_aoi_stderr",
          "peak_aoi_stderr"},
         rows);
}

void cmd_simulate_population(const Options& o) {
    if (o.w_inf)
        throw DomainError("population simulation needs a finite --w");
    if (o.n <= 0) throw DomainError("missing required --n (devices)");
    double gamma = need(o.gamma, "gamma");
    long m = o.m > 0 ? o.m : std::lround(static_cast<double>(o.n) / gamma);
    SystemParams p = base_params(o, need(o.lambda, "lambda"),
                                 need(o.mu, "mu"), gamma,
                                 need_rate(o.w, false, "w"), o.n, m);
    double horizon = given(o.horizon) ? o.horizon : 1000.0;
    double warmup = given(o.warmup) ? o.warmup : horizon / 2.0;
    if (!(warmup >= 0.0) || warmup >= horizon)
        throw DomainError("warmup must satisfy 0 <= warmup < horizon");
    int reps = o.replications > 0 ? o.replications : 10;

    std::vector<PopulationRun> runs(static_cast<size_t>(reps));
    parallel_for_index(reps, o.jobs, [&](long r) {
        runs[static_cast<size_t>(r)] = simulate_population_paired(
            p, horizon, warmup, o.seed, static_cast<uint64_t>(r),
            o.sample_dt);
    });

    std::vector<double> ks;
    for (const auto& run : runs) ks.push_back(run.k_measured);
    MeanSe km = mean_se(ks);

    std::vector<std::vector<std::string>> rows;
    for (Scheme s : selected_schemes(o.scheme)) {
        std::vector<double> avgs, peaks, energies;
        for (const auto& run : runs) {
            const AoiStats& st =
                s == Scheme::WITH_PREEMPTION ? run.wp : run.wop;
            avgs.push_back(st.time_avg_aoi);
            peaks.push_back(st.mean_peak_aoi);
            energies.push_back(st.energy_rate);
        }
        MeanSe a = mean_se(avgs), pk = mean_se(peaks), en = mean_se(energies);
        rows.push_back({scheme_name(s), fmt_g(p.lambda), fmt_g(p.mu),
                        fmt_g(p.gamma), fmt_g(p.w), fmt_g(km.mean),
                        fmt_g(a.mean), fmt_g(pk.mean), fmt_g(en.mean),
                        std::to_string(reps), fmt_g(a.se), fmt_g(pk.se)});
    }
    emit(o,
         {"scheme", "lambda", "mu", "gamma", "w", "k_measured", "avg_aoi",
          "peak_aoi", "energy", "replications", "avg_aoi_stderr",
          "peak_aoi_stderr"},
         rows);
}

void cmd_simulate_density(const Options& o) {
    if (o.w_inf) throw DomainError("density simulation needs a finite --w");
    if (o.n <= 0) throw DomainError("missing required --n (devices)");
    double gamma = need(o.gamma, "gamma");
    long m = o.m > 0 ? o.m : std::lround(static_cast<double>(o.n) / gamma);
    SystemParams p = base_params(o, need(o.lambda, "lambda"),
                                 need(o.mu, "mu"), gamma,
                                 need_rate(o.w, false, "w"), o.n, m);
    double horizon = given(o.horizon) ? o.horizon : 10.0;
    Trajectory traj = simulate_density(p, horizon, o.seed, 0, o.sample_dt);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(traj.samples.size());
    for (const auto& s : traj.samples)
        rows.push_back({fmt_g(s.t), fmt_g(s.state.x_idle),
                        fmt_g(s.state.x_wait), fmt_g(s.state.x_service),
                        "sim_single"});
    emit(o, {"t", "x_I", "x_W", "x_S", "source"}, rows);
}

void cmd_experiment(const Options& o) {
    if (!is_experiment_name(o.experiment_name)) {
        std::string known;
        for (const auto& n : experiment_names()) {
            if (!known.empty()) known += ", ";
            known += n;
        }
        throw DomainError("unknown experiment: " + o.experiment_name +
                          " (known: " + known + ")");
    }
    ExperimentResult result =
        run_experiment(o.experiment_name, o.seed, o.replications, o.jobs);
    auto paths = write_experiment(result, o.out_dir);
    for (const auto& path : paths)
        std::fprintf(stderr, "wrote %s\n", path.string().c_str());
    std::fputs(result.manifest.c_str(), stdout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Age-of-information toolkit for carrier-sense status-update "
        "networks: closed-form metrics, population equilibria, equilibrium "
        "waiting-rate search, and event-driven simulation."};
    Options o;

    app.add_option("--lambda", o.lambda, "Status-update arrival rate");
    app.add_option("--mu", o.mu, "Service (transmission) rate");
    app.add_option("--gamma", o.gamma, "Device-to-channel ratio N/M");
    auto* opt_w = app.add_option("--w", o.w, "Waiting (backoff) rate");
    auto* opt_winf =
        app.add_flag("--w-inf", o.w_inf, "Infinite waiting rate (no backoff)");
    opt_w->excludes(opt_winf);
    auto* opt_k = app.add_option("--k", o.k, "Effective waiting rate");
    auto* opt_kinf = app.add_flag("--k-inf", o.k_inf,
                                  "Infinite effective waiting rate limit");
    opt_k->excludes(opt_kinf);
    auto* opt_w0 =
        app.add_option("--w0", o.w0, "Initial waiting rate for iteration");
    auto* opt_w0inf =
        app.add_flag("--w0-inf", o.w0_inf, "Start iteration from infinity");
    opt_w0->excludes(opt_w0inf);
    app.add_option("--cs", o.cs, "Sensing cost per sense event");
    app.add_option("--ct", o.ct, "Transmission cost per unit time");
    app.add_option("--cbudget", o.cb, "Average energy budget per unit time");
    app.add_option("--n", o.n, "Number of devices");
    app.add_option("--m", o.m,
                   "Number of channels (default: n/gamma when omitted)");
    app.add_option("--scheme", o.scheme,
                   "Packet management scheme: wp, wop, or both")
        ->check(CLI::IsMember({"wp", "wop", "both"}))
        ->capture_default_str();
    app.add_option("--seed", o.seed, "Base RNG seed")->capture_default_str();
    app.add_option("--out", o.out_dir, "Output directory for experiments")
        ->capture_default_str();
    app.add_option("--replications", o.replications,
                   "Replication count (0 = command default)");
    app.add_option("--jobs", o.jobs,
                   "Worker threads (0 = all cores); results do not depend "
                   "on this");
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv"}))
        ->capture_default_str();
    app.add_flag("--pretty", o.pretty, "Aligned human-readable tables");
    app.add_option("--arrivals", o.arrivals,
                   "Arrivals per single-device run")
        ->capture_default_str();
    app.add_option("--horizon", o.horizon,
                   "Simulation or integration end time");
    app.add_option("--warmup", o.warmup,
                   "Statistics start time (default horizon/2)");
    app.add_option("--step", o.step, "Integration step size")
        ->capture_default_str();
    app.add_option("--sample-dt", o.sample_dt,
                   "Trajectory sampling interval")
        ->capture_default_str();
    app.add_option("--max-iters", o.max_iters,
                   "Iteration budget for the equilibrium search")
        ->capture_default_str();
    app.add_option("--x0-idle", o.x0_idle, "Initial idle fraction")
        ->capture_default_str();
    app.add_option("--x0-wait", o.x0_wait, "Initial waiting fraction")
        ->capture_default_str();
    app.add_option("--x0-service", o.x0_service, "Initial serving fraction")
        ->capture_default_str();

    app.set_config("--config", "",
                   "Flat `name = value` configuration file with `#` "
                   "comments; command-line flags override");
    app.allow_config_extras(false);
    app.require_subcommand(1);
    app.fallthrough();

    auto* c_aoi = app.add_subcommand(
        "aoi", "Closed-form average and peak age for one device");
    c_aoi->fallthrough();
    c_aoi->callback([&] { cmd_aoi(o); });

    auto* c_eq = app.add_subcommand(
        "equilibrium", "Stationary state fractions under a waiting rate");
    c_eq->fallthrough();
    c_eq->callback([&] { cmd_equilibrium(o); });

    auto* c_int = app.add_subcommand(
        "integrate", "Deterministic population ODE trajectory");
    c_int->fallthrough();
    c_int->callback([&] { cmd_integrate(o); });

    auto* c_mfe = app.add_subcommand(
        "mfe", "Classify and solve the stationary equilibrium waiting rate");
    c_mfe->fallthrough();
    c_mfe->callback([&] { cmd_mfe(o); });

    auto* c_it = app.add_subcommand(
        "iterate", "Best-response fixed-point iteration trace");
    c_it->fallthrough();
    c_it->callback([&] { cmd_iterate(o); });

    auto* c_sim = app.add_subcommand("simulate", "Stochastic simulators");
    c_sim->fallthrough();
    c_sim->require_subcommand(1);
    auto* c_dev = c_sim->add_subcommand(
        "device", "One device in isolation at a fixed effective rate");
    c_dev->fallthrough();
    c_dev->callback([&] { cmd_simulate_device(o); });
    auto* c_pop = c_sim->add_subcommand(
        "population", "N devices contending for M channels");
    c_pop->fallthrough();
    c_pop->callback([&] { cmd_simulate_population(o); });
    auto* c_den = c_sim->add_subcommand(
        "density", "Exact jump simulation of the state-count process");
    c_den->fallthrough();
    c_den->callback([&] { cmd_simulate_density(o); });

    auto* c_exp = app.add_subcommand(
        "experiment", "Run a named, reproducible experiment recipe");
    c_exp->fallthrough();
    c_exp->add_option("name", o.experiment_name,
                      "One of: fig3, fig4_table1, fig5, fig6, fig7, "
                      "fig8_baselines")
        ->required();
    c_exp->callback([&] { cmd_experiment(o); });

    auto* c_cc = app.add_subcommand(
        "check-convergence",
        "Sufficient-condition check for iteration convergence");
    c_cc->fallthrough();
    c_cc->callback([&] { cmd_check_convergence(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return 0;
}
