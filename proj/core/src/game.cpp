#include "aoimfg/game.hpp"

#include <cassert>
#include <cmath>

#include "aoimfg/meanfield.hpp"

namespace aoimfg {

namespace {

double budget_slack_term(const SystemParams& p) {
    // (1/lambda + 1/mu) * C_hat, the per-cycle budget scaled by idle+service.
    return (1.0 / p.lambda + 1.0 / p.mu) * p.c_budget;
}

// Busy fraction of the stationary population under waiting rate w.
double induced_theta(Rate w, const SystemParams& params) {
    SystemParams p = params;
    p.w = w;
    return equilibrium(p).busy_fraction(params.gamma);
}

// Continuous limit of best_response as theta -> 1-. A saturated population
// (every channel busy) pushes the finite branch's numerator and denominator
// to the same 1/(1-theta) scale, leaving C_hat/C_s.
Rate saturated_best_response(const SystemParams& p) {
    return Rate(p.c_budget / p.c_sense);
}

bool rates_close(Rate a, Rate b, double rel_tol) {
    if (a.infinite() || b.infinite()) return a.infinite() && b.infinite();
    double va = a.value(), vb = b.value();
    return std::abs(va - vb) <= rel_tol * std::max(std::abs(va), std::abs(vb));
}

}  // namespace

Rate best_response(double theta, const SystemParams& params) {
    if (!(theta >= 0.0) || theta >= 1.0)
        throw DomainError("theta must be in [0, 1)");
    double lhs = params.c_sense / (1.0 - theta) + params.c_transmit / params.mu;
    double rhs = budget_slack_term(params);
    if (lhs > rhs)
        return Rate((params.c_budget / (1.0 - theta)) / (lhs - rhs));
    return Rate::infinity();
}

double theta_star(const SystemParams& params) {
    double b = params.gamma * params.c_budget + params.mu * params.c_sense +
               params.c_transmit;
    double disc = b * b - 4.0 * params.gamma * params.c_transmit * params.c_budget;
    // disc exceeds (gamma*C_hat + mu*C_s - C_t)^2 by 4*mu*C_s*C_t > 0.
    assert(disc > 0.0);
    // Smaller root of C_t*x^2 - b*x + gamma*C_hat = 0 via the stable form
    // 2c / (b + sqrt(disc)).
    return 2.0 * params.gamma * params.c_budget / (b + std::sqrt(disc));
}

MfeOutcome classify_mfe(const SystemParams& params) {
    double rhs = budget_slack_term(params);
    double transmit_term = params.c_transmit / params.mu;
    double m = std::max(0.0, 1.0 - params.gamma * params.lambda /
                                        (params.lambda + params.mu));

    MfeOutcome out;
    // Full-budget condition at the no-waiting busy fraction; m = 0 makes the
    // left side +infinity, so the first case is then unreachable.
    double lhs1 = m > 0.0
        ? params.c_sense / m + transmit_term
        : std::numeric_limits<double>::infinity();
    if (lhs1 <= rhs) {
        out.case_tag = MfeCase::CASE1;
        out.w_star = Rate::infinity();
        return out;
    }

    double ts = theta_star(params);
    double lhs2 = params.c_sense / (1.0 - ts) + transmit_term;
    if (lhs2 > rhs) {
        out.case_tag = MfeCase::CASE2;
        out.theta_star = ts;
        out.w_star = best_response(ts, params);
        return out;
    }

    // Remaining two-sided regime. Empty in exact arithmetic: lhs2 <= rhs is
    // equivalent to ts >= gamma*lambda/(lambda+mu), which makes lhs1 <= lhs2
    // <= rhs and lands in the first branch instead. Reaching here means a
    // floating-point boundary tie; report the printed oscillation pair.
    out.case_tag = MfeCase::CASE3;
    // Finite phase, written multiplied through by m so m = 0 stays finite;
    // the denominator is positive exactly when lhs1 > rhs.
    double denom = params.c_sense + m * (transmit_term - rhs);
    out.oscillation_lo = Rate(params.c_budget / denom);
    out.oscillation_hi = Rate::infinity();
    return out;
}

ConvergenceCheck convergence_condition(const SystemParams& params) {
    double rhs = budget_slack_term(params);
    double b = std::min(params.c_sense,
                        params.c_sense + params.c_transmit / params.mu - rhs);
    double value = (params.gamma * params.c_budget / (params.mu * b * b)) *
                   std::abs(params.c_transmit / params.mu - rhs);
    return ConvergenceCheck{value < 1.0, value, b};
}

IterationTrace fixed_point_iterate(const SystemParams& params, Rate w0,
                                   int max_iters) {
    if (!w0.infinite() && !(w0.raw() > 0.0))
        throw DomainError("w0 must be > 0");
    if (max_iters < 1) throw DomainError("max_iters must be >= 1");

    constexpr double kRelTol = 1e-9;

    IterationTrace trace;
    auto record = [&](int iter, Rate w) {
        double theta = induced_theta(w, params);
        IterationStep step;
        step.iter = iter;
        step.w = w;
        step.theta = theta;
        Rate k;
        if (!w.infinite()) {
            k = Rate(w.value() * (1.0 - theta));
        } else if (theta < 1.0) {
            k = Rate::infinity();
        } else {
            // Saturated limit: flow balance mu*x_S = k*x_W at x_S = 1/gamma.
            k = Rate(params.lambda * params.mu /
                     (params.lambda * params.gamma - params.lambda - params.mu));
        }
        step.aoi_wp = aoi(Scheme::WITH_PREEMPTION, params.lambda, params.mu, k);
        step.aoi_wop = aoi(Scheme::WITHOUT_PREEMPTION, params.lambda, params.mu, k);
        step.energy = budget_energy(params.lambda, params.mu, w, theta,
                                    params.c_sense, params.c_transmit);
        trace.steps.push_back(step);
        return theta;
    };

    Rate w = w0;
    double theta = record(0, w);
    for (int t = 0; t < max_iters; ++t) {
        Rate w_next = theta < 1.0 ? best_response(theta, params)
                                  : saturated_best_response(params);
        theta = record(t + 1, w_next);

        if (rates_close(w, w_next, kRelTol)) {
            trace.terminal = IterationTerminal::CONVERGED;
            trace.w_final = w_next;
            return trace;
        }
        size_t n = trace.steps.size();
        if (n >= 4) {
            Rate a = trace.steps[n - 4].w, b = trace.steps[n - 3].w;
            Rate c = trace.steps[n - 2].w, d = trace.steps[n - 1].w;
            if (rates_close(a, c, kRelTol) && rates_close(b, d, kRelTol) &&
                !rates_close(c, d, kRelTol)) {
                trace.terminal = IterationTerminal::OSCILLATING;
                // Report the finite phase first when there is one.
                if (d.infinite()) {
                    trace.oscillation_lo = c;
                    trace.oscillation_hi = d;
                } else if (c.infinite()) {
                    trace.oscillation_lo = d;
                    trace.oscillation_hi = c;
                } else {
                    trace.oscillation_lo = c.raw() < d.raw() ? c : d;
                    trace.oscillation_hi = c.raw() < d.raw() ? d : c;
                }
                trace.w_final = d;
                return trace;
            }
        }
        w = w_next;
    }
    trace.terminal = IterationTerminal::MAX_ITERS;
    trace.w_final = w;
    return trace;
}

Sensitivity sensitivity(Rate w, const SystemParams& params) {
    if (w.infinite() || !(w.raw() > 0.0))
        throw DomainError("sensitivity requires finite w > 0");
    double lambda = params.lambda, mu = params.mu, gamma = params.gamma;
    double wv = w.value();
    double theta = induced_theta(w, params);

    double stage = (lambda + mu) * wv * (1.0 - theta) + lambda * mu;
    double dtheta_dw = gamma * lambda * lambda * mu * (1.0 - theta) /
                       (stage * stage + gamma * lambda * lambda * mu * wv);

    double a = params.c_transmit / mu - budget_slack_term(params);
    double denom = params.c_sense + a * (1.0 - theta);
    double dw_dtheta = params.c_budget * a / (denom * denom);

    return Sensitivity{dtheta_dw, dw_dtheta, std::abs(dtheta_dw * dw_dtheta)};
}

}  // namespace aoimfg
