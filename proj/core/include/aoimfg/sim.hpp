#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aoimfg/meanfield.hpp"
#include "aoimfg/model.hpp"

namespace aoimfg {

// Estimators from one simulation run (or a pooled set of runs).
struct AoiStats {
    double time_avg_aoi = 0.0;          // sawtooth integral / span
    double mean_peak_aoi = 0.0;         // mean AoI just before a delivery
    long delivered_count = 0;
    double mean_service_time = 0.0;     // E[T_j]: delivery minus generation
    double mean_interdeparture = 0.0;   // E[D_j] between consecutive deliveries
    double second_moment_interdeparture = 0.0;  // E[D_j^2]
    double energy_rate = 0.0;           // (time-in-W*C_s + time-in-S*C_t)/span
    double observation_span = 0.0;
};

// Per-delivery bookkeeping. The peak is stored as interarrival + service
// (they are equal to the AoI just before delivery), so the identity
// peak == interarrival + service holds bit-exactly.
struct DeliveryRecord {
    double generation_time;   // t_j
    double delivery_time;     // t_j'
    double service_time;      // T_j = t_j' - t_j
    double interarrival;      // Y_j = t_j - t_{j-1}
    double interdeparture;    // D_j = t_j' - t_{j-1}'
    double peak;              // Y_j + T_j
};

struct PopulationSnapshot {
    double t;
    long n_idle;
    long n_wait;
    long n_service;
};

// --- single-device renewal simulation ------------------------------------

// Both packet-management schemes from one event stream: the device's state
// dynamics are scheme-independent (replacement and preemption only swap the
// stored generation timestamp; clocks continue by memorylessness), so one
// trajectory yields exactly paired estimates for the two schemes.
struct DeviceRun {
    AoiStats wp;
    AoiStats wop;
    std::vector<DeliveryRecord> records_wp;   // filled when keep_records
    std::vector<DeliveryRecord> records_wop;
};
DeviceRun simulate_device_paired(double lambda, double mu, Rate k,
                                 long n_arrivals, uint64_t seed,
                                 bool keep_records = false,
                                 double c_sense = 1.0, double c_transmit = 1.0);

// One device in isolation at effective waiting rate k: Poisson(lambda)
// arrivals; waiting updates are replaced by fresh arrivals; W->S after
// Exp(k); service Exp(mu); arrivals during service follow the scheme.
// Statistics are sawtooth-integrated over exactly n_arrivals arrivals.
// Rejects k = infinity (use the closed-form limits instead). The cost
// arguments only scale energy_rate.
AoiStats simulate_device(Scheme scheme, double lambda, double mu, Rate k,
                         long n_arrivals, uint64_t seed,
                         double c_sense = 1.0, double c_transmit = 1.0);

// --- N-device, M-channel event simulation ---------------------------------

struct PopulationRun {
    AoiStats wp;                  // pooled over devices
    AoiStats wop;
    Trajectory fractions;         // sampled on a fixed grid from t = 0
    MeanFieldState stationary;    // time-averaged fractions over the window
    double k_measured = 0.0;      // W->S transitions / total waiting time
    long sense_events = 0;
};

// Full CSMA population: per-device Exp(lambda) arrivals; waiting devices
// carry Exp(w) backoff clocks; a backoff expiry senses one uniformly random
// channel and occupies it when idle (busy: re-arm, i.e. thinning to the
// effective rate w(1 - busy/M)); service Exp(mu). Statistics collected on
// [warmup, horizon]. `stream` selects the replication substream of `seed`.
PopulationRun simulate_population_paired(const SystemParams& params,
                                         double horizon, double warmup,
                                         uint64_t seed, uint64_t stream = 0,
                                         double sample_dt = 0.1);

struct PopulationResult {
    AoiStats stats;
    Trajectory fractions;
    MeanFieldState stationary;
};
PopulationResult simulate_population(Scheme scheme, const SystemParams& params,
                                     double horizon, double warmup,
                                     uint64_t seed);

// --- population-count jump process ----------------------------------------

// Exact next-jump simulation of the count vector (n_I, n_W, n_S): jumps
// (-1,+1,0) at rate lambda*n_I, (0,-1,+1) at rate w*(1-n_S/M)*n_W, and
// (+1,0,-1) at rate mu*n_S. Starts all-idle; emits fraction snapshots on a
// fixed grid (default 0.1 time units).
Trajectory simulate_density(const SystemParams& params, double horizon,
                            uint64_t seed, uint64_t stream = 0,
                            double sample_dt = 0.1);

// --- convergence of the population toward the ODE equilibrium -------------

struct ConvergenceRow {
    long n_devices;
    double dev_idle;     // |mean stationary fraction - equilibrium| per state
    double dev_wait;
    double dev_service;
};

// For each population size N (with M = N/gamma), averages the stationary
// fraction estimate over `replications` runs and reports absolute deviations
// from the closed-form equilibrium.
std::vector<ConvergenceRow> estimate_rate_of_convergence(
    const SystemParams& params, const std::vector<long>& sizes,
    int replications, uint64_t seed, double horizon = 1000.0,
    double warmup = 500.0, int jobs = 0);

// --- deterministic parallel replication driver ----------------------------

// Runs fn(0..count-1) on `jobs` threads (0 = hardware concurrency). Results
// must be written into caller-owned slots indexed by the argument, so any
// reduction done afterwards in index order is bit-identical for every jobs
// value.
void parallel_for_index(long count, int jobs,
                        const std::function<void(long)>& fn);

}  // namespace aoimfg
