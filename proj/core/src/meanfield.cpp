#include "aoimfg/meanfield.hpp"

#include <cmath>

namespace aoimfg {

Drift drift(const MeanFieldState& state, const SystemParams& params) {
    if (params.w.infinite())
        throw DomainError("drift is undefined for w = infinity");
    double lambda = params.lambda, mu = params.mu, gamma = params.gamma;
    double w = params.w.value();
    double flow_in = lambda * state.x_idle;
    double flow_tx = w * (1.0 - gamma * state.x_service) * state.x_wait;
    double flow_out = mu * state.x_service;
    return Drift{-flow_in + flow_out, flow_in - flow_tx, flow_tx - flow_out};
}

MeanFieldState equilibrium(const SystemParams& params) {
    double lambda = params.lambda, mu = params.mu, gamma = params.gamma;

    if (params.w.infinite()) {
        double xs = std::min(lambda / (lambda + mu), 1.0 / gamma);
        MeanFieldState s;
        if (lambda / (lambda + mu) <= 1.0 / gamma) {
            s.x_idle = mu / (lambda + mu);
            s.x_wait = 0.0;
            s.x_service = xs;
        } else {
            // Saturated: the busy fraction pins at 1 and a positive waiting
            // mass remains even with instantaneous backoff.
            s.x_idle = mu / (lambda * gamma);
            s.x_wait = 1.0 - (lambda + mu) / (lambda * gamma);
            s.x_service = xs;
        }
        return s;
    }

    double w = params.w.value();
    double a = w * gamma * (lambda + mu);
    double b = w * (lambda + mu + lambda * gamma) + lambda * mu;
    double disc = b * b - 4.0 * a * (lambda * w);
    // b^2 - 4ac = (w(lambda+mu+lambda*gamma)+lambda*mu)^2
    //             - 4*lambda*(lambda+mu)*gamma*w^2 > 0 always.
    double root_big = (b + std::sqrt(disc)) / (2.0 * a);
    // Product of roots c/a = lambda/(gamma*(lambda+mu)); avoids the
    // catastrophic cancellation of the "b - sqrt(disc)" form.
    double xs = (lambda / (gamma * (lambda + mu))) / root_big;

    MeanFieldState s;
    s.x_idle = (mu / lambda) * xs;
    s.x_service = xs;
    s.x_wait = mu * xs / (w * (1.0 - gamma * xs));
    return s;
}

Trajectory integrate(const MeanFieldState& x0, const SystemParams& params,
                     double step, double horizon) {
    if (!(step > 0.0)) throw DomainError("step must be > 0");
    if (!(horizon >= step)) throw DomainError("horizon must be >= step");
    if (params.w.infinite())
        throw DomainError("integrate is undefined for w = infinity");

    auto rhs = [&params](const MeanFieldState& s) {
        return drift(s, params);
    };
    auto advance = [](const MeanFieldState& s, const Drift& d, double h) {
        MeanFieldState out;
        out.x_idle = s.x_idle + h * d.d_idle;
        out.x_wait = s.x_wait + h * d.d_wait;
        out.x_service = s.x_service + h * d.d_service;
        return out;
    };

    Trajectory traj;
    traj.step = step;
    long n_steps = static_cast<long>(std::floor(horizon / step + 1e-12));
    traj.samples.reserve(static_cast<size_t>(n_steps) + 1);

    MeanFieldState x = x0;
    traj.samples.push_back({0.0, x});
    for (long i = 1; i <= n_steps; ++i) {
        Drift k1 = rhs(x);
        Drift k2 = rhs(advance(x, k1, step / 2.0));
        Drift k3 = rhs(advance(x, k2, step / 2.0));
        Drift k4 = rhs(advance(x, k3, step));
        MeanFieldState next;
        next.x_idle = x.x_idle + step / 6.0 *
            (k1.d_idle + 2.0 * k2.d_idle + 2.0 * k3.d_idle + k4.d_idle);
        next.x_wait = x.x_wait + step / 6.0 *
            (k1.d_wait + 2.0 * k2.d_wait + 2.0 * k3.d_wait + k4.d_wait);
        next.x_service = x.x_service + step / 6.0 *
            (k1.d_service + 2.0 * k2.d_service + 2.0 * k3.d_service + k4.d_service);

        double sum = next.x_idle + next.x_wait + next.x_service;
        double lo = std::min({next.x_idle, next.x_wait, next.x_service});
        if (std::abs(sum - 1.0) > 1e-6 || lo < -1e-6)
            throw IntegrationError("state left the simplex; reduce the step");
        if (std::abs(sum - 1.0) > 0.0 && std::abs(sum - 1.0) < 1e-9) {
            next.x_idle /= sum;
            next.x_wait /= sum;
            next.x_service /= sum;
        }
        // Rounding can push a component epsilon-negative near the boundary.
        if (next.x_idle < 0.0) next.x_idle = 0.0;
        if (next.x_wait < 0.0) next.x_wait = 0.0;
        if (next.x_service < 0.0) next.x_service = 0.0;

        x = next;
        traj.samples.push_back({static_cast<double>(i) * step, x});

        Drift d = rhs(x);
        double mag = std::abs(d.d_idle) + std::abs(d.d_wait) + std::abs(d.d_service);
        if (mag < 1e-10) break;
    }
    return traj;
}

double stability_rate(const SystemParams& params) {
    if (params.w.infinite())
        throw DomainError("stability_rate is undefined for w = infinity");
    MeanFieldState eq = equilibrium(params);
    double w = params.w.value();
    double idle_channel = 1.0 - params.gamma * eq.x_service;
    return std::min({params.lambda, w * idle_channel,
                     w * params.gamma * eq.x_wait});
}

}  // namespace aoimfg
