#include <atomic>
#include <cmath>
#include <mutex>
#include <queue>
#include <thread>

#include "aoimfg/rng.hpp"
#include "aoimfg/sim.hpp"

namespace aoimfg {

namespace {

enum class St : uint8_t { IDLE, WAIT, SERVE };

// Per-scheme, per-device AoI registers on the shared event timeline.
struct Account {
    double gen_in_system = 0.0;
    double last_gen = 0.0;
    double prev_gen = -1.0;
    double aoi_integral = 0.0;
    double peak_sum = 0.0;
    long peak_count = 0;
    double service_sum = 0.0;
    long delivered = 0;
};

struct Device {
    St state = St::IDLE;
    double state_since = 0.0;
    double prev_delivery = -1.0;
    Account wp;
    Account wop;
};

struct Ev {
    double t;
    int32_t dev;
    int8_t kind;  // 0 arrival, 1 backoff fire, 2 service completion
};
struct EvLater {
    bool operator()(const Ev& a, const Ev& b) const {
        if (a.t != b.t) return a.t > b.t;
        if (a.dev != b.dev) return a.dev > b.dev;
        return a.kind > b.kind;
    }
};

// Length of [from, to) clipped to the observation window.
double clip(double from, double to, double lo, double hi) {
    double a = std::max(from, lo), b = std::min(to, hi);
    return b > a ? b - a : 0.0;
}

void integrate_account(Account& acc, double from, double to, double lo,
                       double hi) {
    double a = std::max(from, lo), b = std::min(to, hi);
    if (b > a) acc.aoi_integral += (b - a) * ((a + b) / 2.0 - acc.last_gen);
}

void deliver(Account& acc, double t, bool in_window) {
    double service = t - acc.gen_in_system;
    if (in_window) {
        acc.service_sum += service;
        ++acc.delivered;
        if (acc.prev_gen >= 0.0) {
            acc.peak_sum += (acc.gen_in_system - acc.prev_gen) + service;
            ++acc.peak_count;
        }
    }
    acc.prev_gen = acc.gen_in_system;
    acc.last_gen = acc.gen_in_system;
}

}  // namespace

PopulationRun simulate_population_paired(const SystemParams& params,
                                         double horizon, double warmup,
                                         uint64_t seed, uint64_t stream,
                                         double sample_dt) {
    if (params.n_devices < 1 || params.m_channels < 1)
        throw DomainError("n_devices and m_channels must be set");
    if (params.w.infinite())
        throw DomainError("population simulation requires finite w");
    if (!(warmup >= 0.0) || !(warmup < horizon))
        throw DomainError("need 0 <= warmup < horizon");
    if (!(sample_dt > 0.0)) throw DomainError("sample_dt must be > 0");

    const long n = params.n_devices;
    const long m = params.m_channels;
    const double lambda = params.lambda, mu = params.mu;
    const double w = params.w.value();

    CounterRng rng(seed, stream);
    std::vector<Device> devices(static_cast<size_t>(n));
    std::priority_queue<Ev, std::vector<Ev>, EvLater> queue;

    for (long i = 0; i < n; ++i)
        queue.push(Ev{rng.exponential(lambda), static_cast<int32_t>(i), 0});

    long n_idle = n, n_wait = 0, n_service = 0;

    Trajectory traj;
    traj.step = sample_dt;
    double next_grid = 0.0;
    auto emit_until = [&](double t) {
        while (next_grid < t && next_grid <= horizon + 1e-12) {
            traj.samples.push_back(
                {next_grid, make_state(static_cast<double>(n_idle),
                                       static_cast<double>(n_wait),
                                       static_cast<double>(n_service))});
            next_grid += sample_dt;
        }
    };

    // Time-weighted sums for the stationary estimate and energy accounting.
    double occ_idle = 0.0, occ_wait = 0.0, occ_service = 0.0;
    double total_wait_time = 0.0, total_service_time = 0.0;
    long fires = 0, ws_transitions = 0;
    double prev_t = 0.0;

    double interdep_sum = 0.0, interdep_sq_sum = 0.0;
    long interdep_count = 0;

    while (!queue.empty()) {
        Ev ev = queue.top();
        if (ev.t > horizon) break;
        queue.pop();
        emit_until(ev.t);

        double span = clip(prev_t, ev.t, warmup, horizon);
        occ_idle += span * static_cast<double>(n_idle);
        occ_wait += span * static_cast<double>(n_wait);
        occ_service += span * static_cast<double>(n_service);
        prev_t = ev.t;

        Device& d = devices[static_cast<size_t>(ev.dev)];
        const double t = ev.t;

        switch (ev.kind) {
            case 0: {  // arrival
                queue.push(Ev{t + rng.exponential(lambda), ev.dev, 0});
                switch (d.state) {
                    case St::IDLE:
                        d.wp.gen_in_system = d.wop.gen_in_system = t;
                        d.state = St::WAIT;
                        d.state_since = t;
                        --n_idle;
                        ++n_wait;
                        queue.push(Ev{t + rng.exponential(w), ev.dev, 1});
                        break;
                    case St::WAIT:
                        d.wp.gen_in_system = d.wop.gen_in_system = t;
                        break;
                    case St::SERVE:
                        d.wp.gen_in_system = t;
                        break;
                }
                break;
            }
            case 1: {  // backoff fired: sense one uniformly random channel
                if (t >= warmup) ++fires;
                double busy = static_cast<double>(n_service) /
                              static_cast<double>(m);
                if (rng.bernoulli(busy)) {
                    queue.push(Ev{t + rng.exponential(w), ev.dev, 1});
                } else {
                    total_wait_time += clip(d.state_since, t, warmup, horizon);
                    if (t >= warmup) ++ws_transitions;
                    d.state = St::SERVE;
                    d.state_since = t;
                    --n_wait;
                    ++n_service;
                    if (n_service > m)
                        throw CapacityError("service count exceeded channels");
                    queue.push(Ev{t + rng.exponential(mu), ev.dev, 2});
                }
                break;
            }
            case 2: {  // service completed: deliver for both schemes
                bool in_window = t >= warmup;
                integrate_account(d.wp, d.prev_delivery < 0.0 ? 0.0
                                        : d.prev_delivery, t, warmup, horizon);
                integrate_account(d.wop, d.prev_delivery < 0.0 ? 0.0
                                         : d.prev_delivery, t, warmup, horizon);
                deliver(d.wp, t, in_window);
                deliver(d.wop, t, in_window);
                if (d.prev_delivery >= warmup && in_window) {
                    double gap = t - d.prev_delivery;
                    interdep_sum += gap;
                    interdep_sq_sum += gap * gap;
                    ++interdep_count;
                }
                d.prev_delivery = t;
                total_service_time += clip(d.state_since, t, warmup, horizon);
                d.state = St::IDLE;
                d.state_since = t;
                --n_service;
                ++n_idle;
                break;
            }
        }
    }

    emit_until(horizon + sample_dt / 2.0);
    double tail = clip(prev_t, horizon, warmup, horizon);
    occ_idle += tail * static_cast<double>(n_idle);
    occ_wait += tail * static_cast<double>(n_wait);
    occ_service += tail * static_cast<double>(n_service);

    PopulationRun run;
    double window = horizon - warmup;
    double pooled_span = window * static_cast<double>(n);
    double wp_integral = 0.0, wop_integral = 0.0;
    double wp_peaks = 0.0, wop_peaks = 0.0;
    long wp_peak_count = 0, wop_peak_count = 0;
    double wp_service = 0.0, wop_service = 0.0;
    long wp_delivered = 0, wop_delivered = 0;

    for (auto& d : devices) {
        double from = d.prev_delivery < 0.0 ? 0.0 : d.prev_delivery;
        integrate_account(d.wp, from, horizon, warmup, horizon);
        integrate_account(d.wop, from, horizon, warmup, horizon);
        // Flush the open state segment into the energy totals.
        if (d.state == St::WAIT)
            total_wait_time += clip(d.state_since, horizon, warmup, horizon);
        if (d.state == St::SERVE)
            total_service_time += clip(d.state_since, horizon, warmup, horizon);

        wp_integral += d.wp.aoi_integral;
        wop_integral += d.wop.aoi_integral;
        wp_peaks += d.wp.peak_sum;
        wop_peaks += d.wop.peak_sum;
        wp_peak_count += d.wp.peak_count;
        wop_peak_count += d.wop.peak_count;
        wp_service += d.wp.service_sum;
        wop_service += d.wop.service_sum;
        wp_delivered += d.wp.delivered;
        wop_delivered += d.wop.delivered;
    }

    auto pool = [&](double integral, double peaks, long peak_count,
                    double service, long delivered) {
        AoiStats s;
        s.observation_span = pooled_span;
        s.time_avg_aoi = integral / pooled_span;
        s.mean_peak_aoi = peak_count > 0 ? peaks / peak_count : 0.0;
        s.delivered_count = delivered;
        s.mean_service_time = delivered > 0 ? service / delivered : 0.0;
        s.mean_interdeparture =
            interdep_count > 0 ? interdep_sum / interdep_count : 0.0;
        s.second_moment_interdeparture =
            interdep_count > 0 ? interdep_sq_sum / interdep_count : 0.0;
        s.energy_rate = (total_wait_time * params.c_sense +
                         total_service_time * params.c_transmit) /
                        pooled_span;
        return s;
    };
    run.wp = pool(wp_integral, wp_peaks, wp_peak_count, wp_service,
                  wp_delivered);
    run.wop = pool(wop_integral, wop_peaks, wop_peak_count, wop_service,
                   wop_delivered);

    run.fractions = std::move(traj);
    double nw = window * static_cast<double>(n);
    run.stationary = make_state(occ_idle / nw, occ_wait / nw,
                                occ_service / nw);
    run.k_measured = total_wait_time > 0.0
        ? static_cast<double>(ws_transitions) / total_wait_time
        : 0.0;
    run.sense_events = fires;
    return run;
}

PopulationResult simulate_population(Scheme scheme, const SystemParams& params,
                                     double horizon, double warmup,
                                     uint64_t seed) {
    PopulationRun run =
        simulate_population_paired(params, horizon, warmup, seed);
    PopulationResult out;
    out.stats = scheme == Scheme::WITH_PREEMPTION ? run.wp : run.wop;
    out.fractions = std::move(run.fractions);
    out.stationary = run.stationary;
    return out;
}

std::vector<ConvergenceRow> estimate_rate_of_convergence(
    const SystemParams& params, const std::vector<long>& sizes,
    int replications, uint64_t seed, double horizon, double warmup, int jobs) {
    if (replications < 1) throw DomainError("replications must be >= 1");
    std::vector<ConvergenceRow> rows;
    MeanFieldState eq = equilibrium(params);

    for (long n : sizes) {
        double m_exact = static_cast<double>(n) / params.gamma;
        long m = std::lround(m_exact);
        if (m < 1 || static_cast<double>(n) / static_cast<double>(m) !=
                         params.gamma)
            throw DomainError("population size incompatible with gamma");
        SystemParams p = params;
        p.n_devices = n;
        p.m_channels = m;

        std::vector<MeanFieldState> stationary(
            static_cast<size_t>(replications));
        parallel_for_index(replications, jobs, [&](long r) {
            stationary[static_cast<size_t>(r)] =
                simulate_population_paired(p, horizon, warmup, seed,
                                           static_cast<uint64_t>(r))
                    .stationary;
        });

        double mi = 0.0, mw = 0.0, ms = 0.0;
        for (const auto& s : stationary) {
            mi += s.x_idle;
            mw += s.x_wait;
            ms += s.x_service;
        }
        double r = static_cast<double>(replications);
        rows.push_back(ConvergenceRow{
            n, std::abs(mi / r - eq.x_idle), std::abs(mw / r - eq.x_wait),
            std::abs(ms / r - eq.x_service)});
    }
    return rows;
}

void parallel_for_index(long count, int jobs,
                        const std::function<void(long)>& fn) {
    if (count <= 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    long width = jobs > 0 ? jobs : (hw > 0 ? static_cast<long>(hw) : 1);
    width = std::min<long>(width, count);
    if (width <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(width));
    for (long t = 0; t < width; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                long i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    next.store(count, std::memory_order_relaxed);
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace aoimfg
