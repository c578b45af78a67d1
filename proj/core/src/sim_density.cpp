#include <cmath>

#include "aoimfg/rng.hpp"
#include "aoimfg/sim.hpp"

namespace aoimfg {

Trajectory simulate_density(const SystemParams& params, double horizon,
                            uint64_t seed, uint64_t stream, double sample_dt) {
    if (params.n_devices < 1 || params.m_channels < 1)
        throw DomainError("n_devices and m_channels must be set");
    if (params.w.infinite())
        throw DomainError("density simulation requires finite w");
    if (!(horizon > 0.0)) throw DomainError("horizon must be > 0");
    if (!(sample_dt > 0.0)) throw DomainError("sample_dt must be > 0");

    const double n = static_cast<double>(params.n_devices);
    const double m = static_cast<double>(params.m_channels);
    const double lambda = params.lambda, mu = params.mu;
    const double w = params.w.value();

    CounterRng rng(seed, stream);

    long n_idle = params.n_devices, n_wait = 0, n_service = 0;
    double t = 0.0;

    Trajectory traj;
    traj.step = sample_dt;
    traj.samples.reserve(static_cast<size_t>(horizon / sample_dt) + 2);
    double next_grid = 0.0;
    auto emit_until = [&](double until) {
        while (next_grid < until && next_grid <= horizon + 1e-12) {
            traj.samples.push_back(
                {next_grid, make_state(static_cast<double>(n_idle) / n,
                                       static_cast<double>(n_wait) / n,
                                       static_cast<double>(n_service) / n)});
            next_grid += sample_dt;
        }
    };

    while (true) {
        double rate_arrive = lambda * static_cast<double>(n_idle);
        double rate_start =
            w * (1.0 - static_cast<double>(n_service) / m) *
            static_cast<double>(n_wait);
        double rate_finish = mu * static_cast<double>(n_service);
        double total = rate_arrive + rate_start + rate_finish;
        if (total <= 0.0) {
            emit_until(horizon + sample_dt / 2.0);
            break;
        }
        double t_next = t + rng.exponential(total);
        if (t_next > horizon) {
            emit_until(horizon + sample_dt / 2.0);
            break;
        }
        emit_until(t_next);
        t = t_next;

        double u = rng.uniform01() * total;
        if (u <= rate_arrive) {
            --n_idle;
            ++n_wait;
        } else if (u <= rate_arrive + rate_start) {
            --n_wait;
            ++n_service;
            if (n_service > params.m_channels)
                throw CapacityError("service count exceeded channels");
        } else {
            --n_service;
            ++n_idle;
        }
    }
    return traj;
}

}  // namespace aoimfg
