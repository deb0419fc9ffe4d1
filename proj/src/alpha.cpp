#include "riccati/alpha.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "riccati/errors.hpp"

namespace riccati {

AlphaEval TableAlpha::eval(double x, double /*tau*/, double phi) const {
    const auto s = table_->eval(phi);
    const double ex = epsilon_ * std::exp(-x);
    return {s.alpha - ex - rate_, ex, s.alpha_phi, s.clamped};
}

AlphaEval eval_alpha(const AlphaTable& table, double x, double tau, double phi,
                     const MarketModel& model) {
    return TableAlpha(table, model).eval(x, tau, phi);
}

ClosedAlpha eval_alpha_closed(double phi) {
    if (!(phi > kBenchmarkPhiMin)) {
        throw Error(ErrorCode::PhiOutOfDomain,
                    "phi = " + std::to_string(phi) + " is at or below the pole -2");
    }
    const double s = 1.0 / (phi + 2.0);
    return {phi - s, 1.0 + s * s, -2.0 * s * s * s};
}

AlphaEval BenchmarkAlpha::eval(double, double, double phi) const {
    bool clamped = false;
    if (phi <= kBenchmarkPhiMin) {
        phi = kBenchmarkPhiMin + 1e-12;
        clamped = true;
    }
    const auto a = eval_alpha_closed(phi);
    return {a.alpha, 0.0, a.alpha_phi, clamped};
}

double BenchmarkAlpha::phi_upper() const { return std::numeric_limits<double>::infinity(); }

double AffineAlpha::phi_lower() const { return -std::numeric_limits<double>::infinity(); }
double AffineAlpha::phi_upper() const { return std::numeric_limits<double>::infinity(); }

}  // namespace riccati
