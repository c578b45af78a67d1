#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace aoimfg {

// Invalid parameter or argument outside a formula's domain.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// ODE integration left the feasible region (step too large, bad state).
struct IntegrationError : std::runtime_error {
    explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

// A simulated channel count exceeded capacity. The sensing mechanism makes
// this unreachable; raising it indicates a bug in the event engine.
struct CapacityError : std::logic_error {
    explicit CapacityError(const std::string& what) : std::logic_error(what) {}
};

// Extended-real rate: a finite value >= 0 (per unit time) or infinity.
// Infinity is a first-class value, not a large sentinel; formulas downstream
// branch on it and apply their analytic limits (e.g. 1/k = 0 for k = inf).
class Rate {
  public:
    Rate() : v_(0.0) {}

    explicit Rate(double v) : v_(v) {
        if (std::isnan(v) || v < 0.0)
            throw DomainError("rate must be >= 0 or infinity");
    }

    static Rate infinity() {
        Rate r;
        r.v_ = std::numeric_limits<double>::infinity();
        return r;
    }

    bool infinite() const { return std::isinf(v_); }

    // Finite value; calling this on an infinite rate is a caller bug.
    double value() const {
        if (infinite()) throw DomainError("rate is infinite");
        return v_;
    }

    // IEEE view (+inf allowed), for formatting and comparisons.
    double raw() const { return v_; }

    friend bool operator==(Rate a, Rate b) { return a.v_ == b.v_; }
    friend bool operator!=(Rate a, Rate b) { return a.v_ != b.v_; }

  private:
    double v_;
};

// Packet management during service: an arrival either replaces the update
// currently being transmitted (generation timestamp refreshes) or is dropped.
enum class Scheme { WITHOUT_PREEMPTION, WITH_PREEMPTION };

inline const char* scheme_name(Scheme s) {
    return s == Scheme::WITH_PREEMPTION ? "wp" : "wop";
}

// All model constants plus the control w.
//   lambda    status-update arrival rate (per unit time)
//   mu        service (transmission) rate (per unit time)
//   gamma     device-to-channel ratio N/M (dimensionless)
//   n_devices / m_channels   population sizes; 0 means "not set"
//   c_sense   sensing cost C_s
//   c_transmit transmission cost per unit time C_t
//   c_budget  average energy budget per unit time
//   w         waiting (backoff) rate, possibly infinite
struct SystemParams {
    double lambda = 0.0;
    double mu = 0.0;
    double gamma = 0.0;
    long n_devices = 0;
    long m_channels = 0;
    double c_sense = 0.0;
    double c_transmit = 0.0;
    double c_budget = 0.0;
    Rate w;
};

// Returns params unchanged if every invariant holds, otherwise throws
// DomainError naming the first violated invariant. Downstream modules assume
// validated inputs so hot loops stay guard-free.
SystemParams validate(const SystemParams& params);

// Occupancy fractions of the three device states (idle, waiting, serving).
// Always on the probability simplex; see make_state for construction rules.
struct MeanFieldState {
    double x_idle = 1.0;
    double x_wait = 0.0;
    double x_service = 0.0;

    // Fraction of busy channels, theta = gamma * x_service.
    double busy_fraction(double gamma) const { return gamma * x_service; }
};

// Builds a state from a nonnegative triple: rejects negative components or a
// zero sum, normalizes the rest onto the simplex. The busy-fraction bound
// gamma*x_service <= 1 is checked where gamma enters (effective_rate etc.).
MeanFieldState make_state(double x_idle, double x_wait, double x_service);

}  // namespace aoimfg
