#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "riccati/market_model.hpp"

namespace riccati {

/// Per-period log-returns, one row per period, one column per asset.
struct ReturnsMatrix {
    std::vector<std::string> asset_names;
    Eigen::MatrixXd observations;
    double period_per_year = 1.0;
};

enum class InputKind { Prices, LogReturns };

struct ReturnsIngest {
    ReturnsMatrix returns;
    std::size_t dropped_rows = 0;  ///< rows with a missing value
};

/// CSV with a header row of asset names and one row per period. Empty cells,
/// NA, NaN and null count as missing; such rows are dropped. Prices are
/// converted to log-returns between consecutive kept rows.
ReturnsIngest read_returns_csv(std::istream& in, InputKind kind, double period_per_year);
ReturnsIngest read_returns_csv(const std::string& path, InputKind kind, double period_per_year);

/// mu = annualized sample mean, Sigma = annualized unbiased covariance,
/// optionally shrunk towards its diagonal by `shrinkage`. Throws
/// SingularCovariance when Sigma is not numerically positive definite.
MarketModel estimate_moments(const ReturnsMatrix& returns, double epsilon = 0.0,
                             double rate = 0.0, double shrinkage = 0.0);

/// (1 - lambda) Sigma + lambda diag(Sigma)
Eigen::MatrixXd shrink_covariance(const Eigen::MatrixXd& sigma, double lambda);

}  // namespace riccati
