#pragma once

#include <functional>
#include <memory>
#include <string>

namespace riccati {

/// Increasing C^2 terminal utility u(x).
class TerminalUtility {
public:
    virtual ~TerminalUtility() = default;
    virtual double value(double x) const = 0;
    virtual double d1(double x) const = 0;
    virtual double d2(double x) const = 0;
    /// -u''/u', the initial risk-aversion field
    virtual double risk_aversion(double x) const { return -d2(x) / d1(x); }
    /// log u'(x); overridden where u' over/underflows
    virtual double log_d1(double x) const;
    virtual std::string describe() const = 0;
};

/// u(x) = -e^{-a x}
class CaraUtility final : public TerminalUtility {
public:
    explicit CaraUtility(double a);
    double value(double x) const override;
    double d1(double x) const override;
    double d2(double x) const override;
    double risk_aversion(double) const override { return a_; }
    double log_d1(double x) const override;
    std::string describe() const override;
    double a() const noexcept { return a_; }

private:
    double a_;
};

/// u(x) = arctan(x); risk aversion 2x/(1+x^2)
class ArctanUtility final : public TerminalUtility {
public:
    double value(double x) const override;
    double d1(double x) const override;
    double d2(double x) const override;
    double risk_aversion(double x) const override;
    std::string describe() const override { return "arctan"; }
};

/// User-supplied family with analytic value, derivatives and risk aversion.
class FunctionUtility final : public TerminalUtility {
public:
    using Fn = std::function<double(double)>;
    FunctionUtility(Fn value, Fn d1, Fn d2, Fn risk_aversion, std::string name);
    double value(double x) const override { return value_(x); }
    double d1(double x) const override { return d1_(x); }
    double d2(double x) const override { return d2_(x); }
    double risk_aversion(double x) const override { return risk_aversion_(x); }
    std::string describe() const override { return name_; }

private:
    Fn value_, d1_, d2_, risk_aversion_;
    std::string name_;
};

struct IntertemporalSample {
    double c = 0.0;
    double c_x = 0.0;
    double c_xx = 0.0;
};

/// Running utility c(x, t) in calendar time t, non-decreasing in x.
class IntertemporalUtility {
public:
    virtual ~IntertemporalUtility() = default;
    virtual IntertemporalSample eval(double x, double t) const = 0;
    /// True when c is identically zero (lets the scheme skip the non-local term).
    virtual bool is_zero() const { return false; }
    virtual std::string describe() const = 0;
};

class ZeroIntertemporal final : public IntertemporalUtility {
public:
    IntertemporalSample eval(double, double) const override { return {}; }
    bool is_zero() const override { return true; }
    std::string describe() const override { return "zero"; }
};

/// c(x,t) = -kappa e^{-d x - rho (T - t)} with kappa, d >= 0.
class ExponentialIntertemporal final : public IntertemporalUtility {
public:
    ExponentialIntertemporal(double kappa, double d, double rho, double horizon);
    IntertemporalSample eval(double x, double t) const override;
    bool is_zero() const override { return kappa_ == 0.0; }
    std::string describe() const override;

    double kappa() const noexcept { return kappa_; }
    double d() const noexcept { return d_; }
    double rho() const noexcept { return rho_; }

private:
    double kappa_, d_, rho_, horizon_;
};

}  // namespace riccati
