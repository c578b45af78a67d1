#include "aoimfg/analytic.hpp"

namespace aoimfg {

Rate effective_rate(Rate w, double gamma, double x_service) {
    double busy = gamma * x_service;
    if (busy < 0.0 || std::isnan(busy))
        throw DomainError("gamma * x_service must be >= 0");
    if (busy > 1.0)
        throw DomainError("gamma * x_service must be <= 1");
    if (w.infinite())
        return busy < 1.0 ? Rate::infinity() : Rate(0.0);
    return Rate(w.value() * (1.0 - busy));
}

AoiPair aoi(Scheme scheme, double lambda, double mu, Rate k) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("lambda must be > 0");
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw DomainError("mu must be > 0");

    AoiPair out;
    if (k.infinite()) {
        if (scheme == Scheme::WITHOUT_PREEMPTION) {
            out.avg_aoi = 1.0 / lambda + 2.0 / mu - 1.0 / (lambda + mu);
            out.avg_peak_aoi = 1.0 / lambda + 2.0 / mu;
        } else {
            out.avg_aoi = 1.0 / lambda + 1.0 / mu;
            out.avg_peak_aoi = 1.0 / lambda + 1.0 / mu + 1.0 / (lambda + mu);
        }
        return out;
    }

    double kv = k.value();
    if (!(kv > 0.0))
        throw DomainError("k must be > 0");

    double penalty = (lambda + kv + mu) / (lambda * kv + kv * mu + lambda * mu);
    if (scheme == Scheme::WITHOUT_PREEMPTION) {
        out.avg_peak_aoi = 1.0 / lambda + 1.0 / kv + 2.0 / mu + 1.0 / (lambda + kv);
    } else {
        out.avg_peak_aoi = 1.0 / lambda + 1.0 / kv + 1.0 / mu +
                           (1.0 / (lambda + mu)) * (1.0 + mu / (lambda + kv));
    }
    out.avg_aoi = out.avg_peak_aoi - penalty;
    return out;
}

double energy_cost(double lambda, double mu, Rate k, double c_sense,
                   double c_transmit) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("lambda must be > 0");
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw DomainError("mu must be > 0");
    if (!(c_sense > 0.0) || !(c_transmit > 0.0))
        throw DomainError("costs must be > 0");

    if (k.infinite())
        return (c_transmit / mu) / (1.0 / lambda + 1.0 / mu);

    double kv = k.value();
    if (!(kv > 0.0))
        throw DomainError("k must be > 0");
    return (c_sense / kv + c_transmit / mu) /
           (1.0 / lambda + 1.0 / kv + 1.0 / mu);
}

double budget_energy(double lambda, double mu, Rate w, double theta,
                     double c_sense, double c_transmit) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("lambda must be > 0");
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw DomainError("mu must be > 0");
    if (!(c_sense > 0.0) || !(c_transmit > 0.0))
        throw DomainError("costs must be > 0");
    if (!(theta >= 0.0) || theta > 1.0)
        throw DomainError("theta must be in [0, 1]");

    if (theta == 1.0)
        return std::numeric_limits<double>::infinity();
    if (w.infinite())
        return (c_sense / (1.0 - theta) + c_transmit / mu) /
               (1.0 / lambda + 1.0 / mu);

    double kv = w.value() * (1.0 - theta);
    if (!(kv > 0.0))
        throw DomainError("w must be > 0");
    return (c_sense / (1.0 - theta) + c_transmit / mu) /
           (1.0 / lambda + 1.0 / kv + 1.0 / mu);
}

}  // namespace aoimfg
