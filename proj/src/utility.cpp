#include "riccati/utility.hpp"

#include <cmath>

#include "riccati/csv.hpp"
#include "riccati/errors.hpp"

namespace riccati {

double TerminalUtility::log_d1(double x) const { return std::log(d1(x)); }

CaraUtility::CaraUtility(double a) : a_(a) {
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidConfig, "CARA coefficient must be positive");
}
double CaraUtility::value(double x) const { return -std::exp(-a_ * x); }
double CaraUtility::d1(double x) const { return a_ * std::exp(-a_ * x); }
double CaraUtility::d2(double x) const { return -a_ * a_ * std::exp(-a_ * x); }
double CaraUtility::log_d1(double x) const { return std::log(a_) - a_ * x; }
std::string CaraUtility::describe() const { return "cara(a=" + csv::format(a_) + ")"; }

double ArctanUtility::value(double x) const { return std::atan(x); }
double ArctanUtility::d1(double x) const { return 1.0 / (1.0 + x * x); }
double ArctanUtility::d2(double x) const {
    const double q = 1.0 + x * x;
    return -2.0 * x / (q * q);
}
double ArctanUtility::risk_aversion(double x) const { return 2.0 * x / (1.0 + x * x); }

FunctionUtility::FunctionUtility(Fn value, Fn d1, Fn d2, Fn risk_aversion, std::string name)
    : value_(std::move(value)),
      d1_(std::move(d1)),
      d2_(std::move(d2)),
      risk_aversion_(std::move(risk_aversion)),
      name_(std::move(name)) {}

ExponentialIntertemporal::ExponentialIntertemporal(double kappa, double d, double rho,
                                                   double horizon)
    : kappa_(kappa), d_(d), rho_(rho), horizon_(horizon) {
    if (kappa < 0.0 || d < 0.0) {
        throw Error(ErrorCode::InvalidConfig, "intertemporal utility needs kappa, d >= 0");
    }
}

IntertemporalSample ExponentialIntertemporal::eval(double x, double t) const {
    if (kappa_ == 0.0) return {};
    const double e = kappa_ * std::exp(-d_ * x - rho_ * (horizon_ - t));
    return {-e, d_ * e, -d_ * d_ * e};
}

std::string ExponentialIntertemporal::describe() const {
    return "exponential(kappa=" + csv::format(kappa_) + ",d=" + csv::format(d_) +
           ",rho=" + csv::format(rho_) + ")";
}

}  // namespace riccati
