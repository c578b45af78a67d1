#pragma once

#include "aoimfg/model.hpp"

namespace aoimfg {

// Time-average AoI and mean peak AoI, in time units. For finite k the peak
// always exceeds the average by exactly (lambda+k+mu)/(lambda*k+k*mu+lambda*mu),
// the same for both schemes.
struct AoiPair {
    double avg_aoi = 0.0;
    double avg_peak_aoi = 0.0;
};

// Effective waiting rate k = w * (1 - gamma * x_service): the backoff rate
// thinned by the probability that the sensed channel is busy. Infinite w with
// a strictly idle channel fraction stays infinite.
Rate effective_rate(Rate w, double gamma, double x_service);

// Closed-form average AoI and average peak AoI for one device whose waiting
// stage fires at effective rate k, arrivals Poisson(lambda), service Exp(mu).
//
//   without preemption:
//     peak = 1/lambda + 1/k + 2/mu + 1/(lambda+k)
//   with preemption (arrival during service refreshes the update):
//     peak = 1/lambda + 1/k + 1/mu + (1/(lambda+mu)) * (1 + mu/(lambda+k))
//   avg  = peak - (lambda+k+mu)/(lambda*k + k*mu + lambda*mu)  (both schemes)
//
// k = infinity selects the no-waiting limits:
//     without preemption: avg = 1/lambda + 2/mu - 1/(lambda+mu),
//                         peak = 1/lambda + 2/mu
//     with preemption:    avg = 1/lambda + 1/mu,
//                         peak = 1/lambda + 1/mu + 1/(lambda+mu)
// Terms are evaluated grouped exactly as written above; k = 0 is rejected
// (the formulas have 1/k poles, zero effective rate is a modeling error).
AoiPair aoi(Scheme scheme, double lambda, double mu, Rate k);

// Average energy cost per unit time with time-in-state accounting: a device
// pays c_sense per unit time while waiting and c_transmit per unit time while
// serving, and a renewal cycle lasts 1/lambda + 1/k + 1/mu on average:
//
//   (c_sense/k + c_transmit/mu) / (1/lambda + 1/k + 1/mu)
//
// For k = infinity the waiting stage vanishes:
//   (c_transmit/mu) / (1/lambda + 1/mu).
// This matches the simulator's time-in-state energy accumulation. Monotone in
// k with the sign of c_transmit/mu - c_sense*(1/lambda + 1/mu).
double energy_cost(double lambda, double mu, Rate k, double c_sense,
                   double c_transmit);

// Average energy cost per unit time with per-sense-event accounting: each
// backoff expiry senses a channel and pays c_sense once; sensing succeeds
// with probability 1-theta, so a waiting period sees 1/(1-theta) sense events
// on average, and the waiting stage lasts 1/(w*(1-theta)):
//
//   (c_sense/(1-theta) + c_transmit/mu) / (1/lambda + 1/(w*(1-theta)) + 1/mu)
//
// This is the accounting under which the game's energy constraint binds: the
// finite best response makes it equal the budget exactly. Strictly increasing
// in w for fixed theta. For w = infinity (and theta < 1) the waiting term
// vanishes; diverges as theta -> 1.
double budget_energy(double lambda, double mu, Rate w, double theta,
                     double c_sense, double c_transmit);

}  // namespace aoimfg
