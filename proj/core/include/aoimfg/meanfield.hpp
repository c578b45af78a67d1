#pragma once

#include <vector>

#include "aoimfg/model.hpp"

namespace aoimfg {

// Timestamped ODE or simulation path on the state simplex.
struct Trajectory {
    struct Sample {
        double t;
        MeanFieldState state;
    };
    std::vector<Sample> samples;
    double step = 0.0;
};

// Right-hand side of the population ODE at a given state:
//   dx_I = -lambda*x_I + mu*x_S
//   dx_W =  lambda*x_I - w*(1 - gamma*x_S)*x_W
//   dx_S =  w*(1 - gamma*x_S)*x_W - mu*x_S
// Components sum to zero (mass conservation). Infinite w has no pointwise
// dynamics (only its equilibrium is defined) and is rejected.
struct Drift {
    double d_idle;
    double d_wait;
    double d_service;
};
Drift drift(const MeanFieldState& state, const SystemParams& params);

// Unique stationary point of the ODE. For finite w, x_service is the smaller
// root of
//   w*gamma*(lambda+mu) * x^2 - (w*(lambda+mu+lambda*gamma) + lambda*mu) * x
//     + lambda*w = 0,
// computed cancellation-stably: the larger root comes from the "+" quadratic
// formula, the smaller from the product of roots lambda/(gamma*(lambda+mu)).
// Then x_idle = (mu/lambda)*x_service and
// x_wait = mu*x_service / (w*(1-gamma*x_service)).
//
// For w = infinity the limit of the feasible root is
//   x_service = min(lambda/(lambda+mu), 1/gamma):
// below saturation (gamma*lambda < lambda+mu) waiting empties out,
// x = (mu/(lambda+mu), 0, lambda/(lambda+mu)); at saturation the busy
// fraction pins at 1 and x = (mu/(lambda*gamma), 1-(lambda+mu)/(lambda*gamma),
// 1/gamma).
MeanFieldState equilibrium(const SystemParams& params);

// Classical fixed-step 4th-order Runge-Kutta integration of drift() from x0.
// Emits a sample per step, re-normalizes rounding-level simplex drift
// (|sum-1| < 1e-9), stops early once ||drift||_1 < 1e-10, and throws
// IntegrationError if a state leaves the simplex by more than 1e-6.
Trajectory integrate(const MeanFieldState& x0, const SystemParams& params,
                     double step, double horizon);

inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kDefaultHorizon = 200.0;

// Exponential decay-rate bound of the linearized dynamics at equilibrium:
//   delta = min{lambda, w*(1-gamma*x_S*), w*gamma*x_W*}  (all > 0)
double stability_rate(const SystemParams& params);

}  // namespace aoimfg
