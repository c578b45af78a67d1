// Microbenchmarks for the analytic core and the event-driven simulators.
#include <benchmark/benchmark.h>

#include "aoimfg/analytic.hpp"
#include "aoimfg/game.hpp"
#include "aoimfg/meanfield.hpp"
#include "aoimfg/model.hpp"
#include "aoimfg/sim.hpp"

namespace {

using namespace aoimfg;

SystemParams make_params(double lambda, double mu, double gamma, Rate w,
                         long n = 0, long m = 0) {
    SystemParams p;
    p.lambda = lambda;
    p.mu = mu;
    p.gamma = gamma;
    p.n_devices = n;
    p.m_channels = m;
    p.c_sense = 0.1;
    p.c_transmit = 0.2;
    p.c_budget = 0.4;
    p.w = w;
    return p;
}

void bm_closed_form_aoi(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        AoiPair a = aoi(Scheme::WITH_PREEMPTION, 0.8, 1.0, Rate(2.0));
        benchmark::DoNotOptimize(x += a.avg_aoi);
    }
}
BENCHMARK(bm_closed_form_aoi);

void bm_equilibrium_solve(benchmark::State& state) {
    SystemParams p = make_params(0.8, 1.0, 2.0, Rate(1.0));
    double x = 0.0;
    for (auto _ : state) {
        MeanFieldState eq = equilibrium(p);
        benchmark::DoNotOptimize(x += eq.x_service);
    }
}
BENCHMARK(bm_equilibrium_solve);

void bm_ode_integrate(benchmark::State& state) {
    SystemParams p = make_params(0.8, 1.0, 2.0, Rate(2.0));
    MeanFieldState x0 = make_state(1.0, 0.0, 0.0);
    for (auto _ : state) {
        Trajectory t = integrate(x0, p, 1e-3, 10.0);
        benchmark::DoNotOptimize(t.samples.back().state.x_service);
    }
}
BENCHMARK(bm_ode_integrate);

void bm_classify_mfe(benchmark::State& state) {
    SystemParams p = make_params(0.8, 1.0, 5.0, Rate(1.0));
    for (auto _ : state) {
        MfeOutcome out = classify_mfe(p);
        benchmark::DoNotOptimize(out.theta_star);
    }
}
BENCHMARK(bm_classify_mfe);

void bm_fixed_point_iterate(benchmark::State& state) {
    SystemParams p = make_params(0.8, 1.0, 5.0, Rate(1.0));
    for (auto _ : state) {
        IterationTrace t = fixed_point_iterate(p, Rate(1.0), 200);
        benchmark::DoNotOptimize(t.w_final.raw());
    }
}
BENCHMARK(bm_fixed_point_iterate);

void bm_device_sim(benchmark::State& state) {
    const long arrivals = state.range(0);
    uint64_t seed = 1;
    for (auto _ : state) {
        DeviceRun run =
            simulate_device_paired(1.0, 1.0, Rate(2.0), arrivals, seed++);
        benchmark::DoNotOptimize(run.wp.time_avg_aoi);
    }
    state.SetItemsProcessed(state.iterations() * arrivals);
}
BENCHMARK(bm_device_sim)->Arg(10000);

void bm_population_sim(benchmark::State& state) {
    const long n = state.range(0);
    SystemParams p = make_params(0.8, 1.0, 2.0, Rate(1.0), n, n / 2);
    uint64_t stream = 0;
    for (auto _ : state) {
        PopulationRun run =
            simulate_population_paired(p, 100.0, 50.0, 1, stream++, 10.0);
        benchmark::DoNotOptimize(run.wp.time_avg_aoi);
    }
}
BENCHMARK(bm_population_sim)->Arg(100);

void bm_density_sim(benchmark::State& state) {
    const long n = state.range(0);
    SystemParams p = make_params(0.8, 1.0, 2.0, Rate(2.0), n, n / 2);
    uint64_t stream = 0;
    for (auto _ : state) {
        Trajectory t = simulate_density(p, 10.0, 1, stream++, 0.1);
        benchmark::DoNotOptimize(t.samples.back().state.x_service);
    }
}
BENCHMARK(bm_density_sim)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
