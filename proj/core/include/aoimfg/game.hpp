#pragma once

#include <vector>

#include "aoimfg/analytic.hpp"
#include "aoimfg/model.hpp"

namespace aoimfg {

// Equilibrium classification of the waiting-rate game.
//   CASE1: infinite waiting rate is the unique equilibrium (ample budget).
//   CASE2: unique finite equilibrium w_star at busy fraction theta_star.
//   CASE3: no equilibrium; devices alternate between infinity and a finite
//          rate (oscillation_pair). Provably empty in exact arithmetic (see
//          classify_mfe), kept for structural fidelity.
enum class MfeCase { CASE1, CASE2, CASE3 };

struct MfeOutcome {
    MfeCase case_tag = MfeCase::CASE1;
    Rate w_star;            // CASE1: infinity; CASE2: the finite equilibrium
    double theta_star = 0;  // CASE2 only: equilibrium busy fraction
    Rate oscillation_lo;    // CASE3 only: the finite phase
    Rate oscillation_hi;    // CASE3 only: infinity
};

inline const char* case_name(MfeCase c) {
    switch (c) {
        case MfeCase::CASE1: return "CASE1";
        case MfeCase::CASE2: return "CASE2";
        default: return "CASE3";
    }
}

// One synchronous best-response iteration record.
struct IterationStep {
    int iter;
    Rate w;
    double theta;       // busy fraction induced by w
    AoiPair aoi_wp;
    AoiPair aoi_wop;
    double energy;      // budget_energy at (w, theta); +inf when saturated
};

enum class IterationTerminal { CONVERGED, OSCILLATING, MAX_ITERS };

struct IterationTrace {
    std::vector<IterationStep> steps;
    IterationTerminal terminal = IterationTerminal::MAX_ITERS;
    Rate w_final;
    Rate oscillation_lo;  // populated when terminal == OSCILLATING
    Rate oscillation_hi;
};

inline const char* terminal_name(IterationTerminal t) {
    switch (t) {
        case IterationTerminal::CONVERGED: return "CONVERGED";
        case IterationTerminal::OSCILLATING: return "OSCILLATING";
        default: return "MAX_ITERS";
    }
}

// Energy-constrained AoI-optimal waiting rate against busy fraction theta.
// Every AoI objective is decreasing in w, so the budget binds:
//
//   w = (C_hat/(1-theta)) / (C_s/(1-theta) + C_t/mu - (1/lambda + 1/mu)*C_hat)
//       when the denominator's defining condition
//       C_s/(1-theta) + C_t/mu > (1/lambda + 1/mu)*C_hat holds,
//   infinity otherwise (the budget never binds).
//
// Requires theta in [0, 1).
Rate best_response(double theta, const SystemParams& params);

// Equilibrium busy fraction when the budget binds: the smaller root of
//   C_t*theta^2 - (gamma*C_hat + mu*C_s + C_t)*theta + gamma*C_hat = 0,
// i.e. theta* = (gamma*C_hat + mu*C_s + C_t
//               - sqrt((gamma*C_hat + mu*C_s + C_t)^2 - 4*gamma*C_t*C_hat))
//              / (2*C_t).
// Always in (0, 1); independent of lambda. The discriminant is provably
// positive (it exceeds (gamma*C_hat + mu*C_s - C_t)^2 by 4*mu*C_s*C_t > 0).
double theta_star(const SystemParams& params);

// Equilibrium classification:
//   CASE1 if C_s/m + C_t/mu <= (1/lambda + 1/mu)*C_hat with
//         m = max{0, 1 - gamma*lambda/(lambda+mu)} (division by zero = +inf,
//         so CASE1 is impossible once gamma*lambda >= lambda+mu);
//   CASE2 if C_s/(1-theta*) + C_t/mu > (1/lambda + 1/mu)*C_hat;
//   CASE3 otherwise, oscillating between infinity and
//         C_hat/m / (C_s/m + C_t/mu - (1/lambda + 1/mu)*C_hat).
// The CASE3 region is empty in exact arithmetic: the CASE2 condition fails at
// theta* exactly when theta* >= gamma*lambda/(lambda+mu), which re-satisfies
// the CASE1 condition. The branch stays for structural fidelity and as a
// guard against floating-point boundary ties.
MfeOutcome classify_mfe(const SystemParams& params);

// Sufficient (not necessary) contraction condition for best-response
// convergence in the finite-equilibrium case:
//   value = (gamma*C_hat/(mu*B^2)) * |C_t/mu - (1/lambda + 1/mu)*C_hat| < 1,
//   B = min{C_s, C_s + C_t/mu - (1/lambda + 1/mu)*C_hat} (B may be negative;
//   B^2 is used as written).
struct ConvergenceCheck {
    bool satisfied;
    double value;
    double bound_b;
};
ConvergenceCheck convergence_condition(const SystemParams& params);

// Synchronous best-response dynamics: theta_t = busy fraction of the
// stationary population under w_t (closed form), w_{t+1} = best_response.
// A saturated infinite-rate population (theta = 1) uses the continuous
// best-response limit C_hat/C_s. Terminates CONVERGED on relative change
// < 1e-9 (or two successive infinities), OSCILLATING on a period-2 cycle
// detected over the last 4 iterates (per-phase relative change < 1e-9),
// MAX_ITERS otherwise.
IterationTrace fixed_point_iterate(const SystemParams& params, Rate w0,
                                   int max_iters);

// Local contraction diagnostics of the best-response map at waiting rate w:
//   dtheta_dw = gamma*lambda^2*mu*(1-theta)
//               / (((lambda+mu)*w*(1-theta) + lambda*mu)^2
//                  + gamma*lambda^2*mu*w)          (> 0 always)
//   dw_dtheta = C_hat*A / (C_s + A*(1-theta))^2,
//               A = C_t/mu - (1/lambda + 1/mu)*C_hat
//               (the finite-best-response branch's derivative)
//   product   = |dtheta_dw * dw_dtheta|, the local contraction factor.
struct Sensitivity {
    double dtheta_dw;
    double dw_dtheta;
    double product;
};
Sensitivity sensitivity(Rate w, const SystemParams& params);

}  // namespace aoimfg
