#pragma once

#include "riccati/alpha_table.hpp"
#include "riccati/market_model.hpp"

namespace riccati {

struct AlphaEval {
    double alpha = 0.0;
    double alpha_x = 0.0;    ///< partial derivative in x
    double alpha_phi = 0.0;  ///< partial derivative in phi, > 0
    bool clamped = false;    ///< phi was outside the supported range
};

/// Diffusion function alpha(x, tau, phi) of the transformed equation.
class AlphaFunction {
public:
    virtual ~AlphaFunction() = default;
    virtual AlphaEval eval(double x, double tau, double phi) const = 0;
    virtual double phi_lower() const = 0;
    virtual double phi_upper() const = 0;
};

/// Separable form alpha = alpha_table(phi) - epsilon e^{-x} - rate.
class TableAlpha final : public AlphaFunction {
public:
    TableAlpha(const AlphaTable& table, const MarketModel& model)
        : table_(&table), epsilon_(model.epsilon), rate_(model.rate) {}

    AlphaEval eval(double x, double tau, double phi) const override;
    double phi_lower() const override { return table_->phi_min_eff(); }
    double phi_upper() const override { return table_->phi_max(); }
    const AlphaTable& table() const noexcept { return *table_; }

private:
    const AlphaTable* table_;
    double epsilon_;
    double rate_;
};

/// Free-function form of TableAlpha::eval.
AlphaEval eval_alpha(const AlphaTable& table, double x, double tau, double phi,
                     const MarketModel& model);

/// alpha(phi) = phi - 1/(phi+2), used by the traveling-wave benchmark.
struct ClosedAlpha {
    double alpha;
    double alpha_phi;
    double alpha_phiphi;
};
inline constexpr double kBenchmarkPhiMin = -2.0 + 1e-6;

/// Throws PhiOutOfDomain for phi <= -2 + 1e-6.
ClosedAlpha eval_alpha_closed(double phi);

class BenchmarkAlpha final : public AlphaFunction {
public:
    AlphaEval eval(double x, double tau, double phi) const override;
    double phi_lower() const override { return kBenchmarkPhiMin; }
    double phi_upper() const override;
};

/// alpha(phi) = intercept + slope*phi with no x dependence. Exact on constant
/// fields; used for fixed-point checks and hand-assembled systems.
class AffineAlpha final : public AlphaFunction {
public:
    AffineAlpha(double intercept, double slope) : intercept_(intercept), slope_(slope) {}
    AlphaEval eval(double, double, double phi) const override {
        return {intercept_ + slope_ * phi, 0.0, slope_, false};
    }
    double phi_lower() const override;
    double phi_upper() const override;

private:
    double intercept_;
    double slope_;
};

}  // namespace riccati
