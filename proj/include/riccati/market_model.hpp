#pragma once

#include <Eigen/Dense>

namespace riccati {

/// Asset universe plus cash-flow parameters.
///
/// mu and sigma_cov are per unit time (mean log-returns and covariance).
/// epsilon is the portfolio inflow rate and rate the risk-free rate; together
/// they give the state-dependent part of the drift, epsilon*e^{-x} + rate.
struct MarketModel {
    Eigen::VectorXd mu;
    Eigen::MatrixXd sigma_cov;
    double epsilon = 0.0;
    double rate = 0.0;

    Eigen::Index assets() const noexcept { return mu.size(); }

    /// Throws InvalidModel on shape/symmetry problems and NonConvex when the
    /// covariance is not positive definite.
    void validate() const;

    /// theta' Sigma theta
    double variance(const Eigen::VectorXd& theta) const { return theta.dot(sigma_cov * theta); }
};

/// Convenience constructor that validates on the way out.
MarketModel make_market(Eigen::VectorXd mu, Eigen::MatrixXd sigma, double epsilon = 0.0,
                        double rate = 0.0);

}  // namespace riccati
