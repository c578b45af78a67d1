#include "aoimfg/model.hpp"

namespace aoimfg {

SystemParams validate(const SystemParams& params) {
    if (!(params.lambda > 0.0) || !std::isfinite(params.lambda))
        throw DomainError("lambda must be > 0");
    if (!(params.mu > 0.0) || !std::isfinite(params.mu))
        throw DomainError("mu must be > 0");
    if (!(params.gamma > 0.0) || !std::isfinite(params.gamma))
        throw DomainError("gamma must be > 0");
    if (!(params.c_sense > 0.0) || !std::isfinite(params.c_sense))
        throw DomainError("c_sense must be > 0");
    if (!(params.c_transmit > 0.0) || !std::isfinite(params.c_transmit))
        throw DomainError("c_transmit must be > 0");
    if (!(params.c_budget > 0.0) || !std::isfinite(params.c_budget))
        throw DomainError("c_budget must be > 0");
    if (params.n_devices < 0 || params.m_channels < 0)
        throw DomainError("population sizes must be >= 0");
    if (params.n_devices > 0 && params.m_channels > 0) {
        double ratio = static_cast<double>(params.n_devices) /
                       static_cast<double>(params.m_channels);
        if (ratio != params.gamma)
            throw DomainError("gamma inconsistent with N/M");
    }
    if (!params.w.infinite() && !(params.w.raw() > 0.0))
        throw DomainError("w must be > 0");
    return params;
}

MeanFieldState make_state(double x_idle, double x_wait, double x_service) {
    if (std::isnan(x_idle) || std::isnan(x_wait) || std::isnan(x_service))
        throw DomainError("state components must not be NaN");
    if (x_idle < 0.0 || x_wait < 0.0 || x_service < 0.0)
        throw DomainError("state components must be >= 0");
    double sum = x_idle + x_wait + x_service;
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw DomainError("state components must have a positive finite sum");
    MeanFieldState s;
    s.x_idle = x_idle / sum;
    s.x_wait = x_wait / sum;
    s.x_service = x_service / sum;
    return s;
}

}  // namespace aoimfg
