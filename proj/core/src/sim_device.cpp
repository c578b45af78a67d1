#include <cmath>

#include "aoimfg/rng.hpp"
#include "aoimfg/sim.hpp"

namespace aoimfg {

namespace {

// Per-scheme AoI bookkeeping over one shared event timeline. Deliveries
// happen at the same instants for both schemes; only the generation
// timestamps differ, so each scheme keeps its own registers.
struct SchemeAccount {
    double gen_in_system = 0.0;   // generation time of the update in W or S
    double last_gen = 0.0;        // generation time of last delivered update
    double prev_gen = -1.0;       // previous delivered generation (-1: none)
    double aoi_integral = 0.0;
    double peak_sum = 0.0;
    long peak_count = 0;
    double service_sum = 0.0;
    long delivered = 0;

    void integrate_to(double from, double to) {
        // AoI is t - last_gen on [from, to): add the trapezoid area.
        aoi_integral += (to - from) * ((from + to) / 2.0 - last_gen);
    }

    void deliver(double t, std::vector<DeliveryRecord>* records) {
        double service = t - gen_in_system;
        service_sum += service;
        ++delivered;
        if (prev_gen >= 0.0) {
            double interarrival = gen_in_system - prev_gen;
            peak_sum += interarrival + service;
            ++peak_count;
            if (records) {
                DeliveryRecord r;
                r.generation_time = gen_in_system;
                r.delivery_time = t;
                r.service_time = service;
                r.interarrival = interarrival;
                r.interdeparture = 0.0;  // filled by the caller
                r.peak = interarrival + service;
                records->push_back(r);
            }
        }
        prev_gen = gen_in_system;
        last_gen = gen_in_system;
    }
};

AoiStats finalize(const SchemeAccount& acc, double span, double wait_time,
                  double service_time, double interdep_sum,
                  double interdep_sq_sum, long interdep_count,
                  double c_sense, double c_transmit) {
    AoiStats s;
    s.observation_span = span;
    s.time_avg_aoi = acc.aoi_integral / span;
    s.delivered_count = acc.delivered;
    s.mean_peak_aoi = acc.peak_count > 0 ? acc.peak_sum / acc.peak_count : 0.0;
    s.mean_service_time =
        acc.delivered > 0 ? acc.service_sum / acc.delivered : 0.0;
    s.mean_interdeparture =
        interdep_count > 0 ? interdep_sum / interdep_count : 0.0;
    s.second_moment_interdeparture =
        interdep_count > 0 ? interdep_sq_sum / interdep_count : 0.0;
    s.energy_rate = (wait_time * c_sense + service_time * c_transmit) / span;
    return s;
}

}  // namespace

DeviceRun simulate_device_paired(double lambda, double mu, Rate k,
                                 long n_arrivals, uint64_t seed,
                                 bool keep_records, double c_sense,
                                 double c_transmit) {
    if (!(lambda > 0.0) || !(mu > 0.0))
        throw DomainError("lambda and mu must be > 0");
    if (k.infinite())
        throw DomainError("k must be finite (use the analytic limits)");
    double kv = k.value();
    if (!(kv > 0.0)) throw DomainError("k must be > 0");
    if (n_arrivals < 1) throw DomainError("n_arrivals must be >= 1");

    CounterRng rng(seed, 0);

    enum class St { IDLE, WAIT, SERVE };
    St state = St::IDLE;
    double now = 0.0;
    double next_arrival = rng.exponential(lambda);
    double next_fire = 0.0;        // valid in WAIT
    double next_complete = 0.0;    // valid in SERVE
    long arrivals = 0;

    DeviceRun run;
    SchemeAccount wp, wop;
    double last_event = 0.0;       // last AoI segment boundary
    double wait_time = 0.0, service_time = 0.0;
    double interdep_sum = 0.0, interdep_sq_sum = 0.0;
    long interdep_count = 0;
    double prev_delivery = -1.0;

    auto state_enter_time = [&](double t, St s) {
        if (s == St::WAIT) next_fire = t + rng.exponential(kv);
        if (s == St::SERVE) next_complete = t + rng.exponential(mu);
        state = s;
    };

    while (true) {
        double t_next = next_arrival;
        int kind = 0;  // 0 arrival, 1 fire, 2 complete
        if (state == St::WAIT && next_fire < t_next) {
            t_next = next_fire;
            kind = 1;
        }
        if (state == St::SERVE && next_complete < t_next) {
            t_next = next_complete;
            kind = 2;
        }

        if (state == St::WAIT) wait_time += t_next - now;
        if (state == St::SERVE) service_time += t_next - now;
        now = t_next;

        if (kind == 0) {
            ++arrivals;
            if (arrivals == n_arrivals) break;
            next_arrival = now + rng.exponential(lambda);
            switch (state) {
                case St::IDLE:
                    wp.gen_in_system = wop.gen_in_system = now;
                    state_enter_time(now, St::WAIT);
                    break;
                case St::WAIT:
                    // Fresh arrival replaces the waiting update; the backoff
                    // clock keeps running (memoryless).
                    wp.gen_in_system = wop.gen_in_system = now;
                    break;
                case St::SERVE:
                    // Preemption refreshes only the preemptive register; the
                    // service clock keeps running.
                    wp.gen_in_system = now;
                    break;
            }
        } else if (kind == 1) {
            state_enter_time(now, St::SERVE);
        } else {
            wp.integrate_to(last_event, now);
            wop.integrate_to(last_event, now);
            last_event = now;
            wp.deliver(now, keep_records ? &run.records_wp : nullptr);
            wop.deliver(now, keep_records ? &run.records_wop : nullptr);
            if (prev_delivery >= 0.0) {
                double d = now - prev_delivery;
                interdep_sum += d;
                interdep_sq_sum += d * d;
                ++interdep_count;
                if (keep_records) {
                    run.records_wp.back().interdeparture = d;
                    run.records_wop.back().interdeparture = d;
                }
            }
            prev_delivery = now;
            state = St::IDLE;
        }
    }

    wp.integrate_to(last_event, now);
    wop.integrate_to(last_event, now);

    run.wp = finalize(wp, now, wait_time, service_time, interdep_sum,
                      interdep_sq_sum, interdep_count, c_sense, c_transmit);
    run.wop = finalize(wop, now, wait_time, service_time, interdep_sum,
                       interdep_sq_sum, interdep_count, c_sense, c_transmit);
    return run;
}

AoiStats simulate_device(Scheme scheme, double lambda, double mu, Rate k,
                         long n_arrivals, uint64_t seed, double c_sense,
                         double c_transmit) {
    DeviceRun run = simulate_device_paired(lambda, mu, k, n_arrivals, seed,
                                           false, c_sense, c_transmit);
    return scheme == Scheme::WITH_PREEMPTION ? run.wp : run.wop;
}

}  // namespace aoimfg
