#pragma once

#include <Eigen/Dense>
#include <vector>

#include "riccati/market_model.hpp"

namespace riccati {

/// Smallest admissible risk-aversion parameter for the quadratic family; the
/// quadratic coefficient (phi+1)/2 must stay positive.
inline constexpr double kQuadraticPhiMin = -1.0;
inline constexpr double kQuadraticDomainTol = 1e-9;

struct QpSolution {
    Eigen::VectorXd theta;
    double value = 0.0;
    std::vector<int> active_set;  ///< indices with theta_i > 0, ascending
    int iterations = 0;
    double kkt_residual = 0.0;    ///< max |grad_i - nu| over the support
};

struct QpOptions {
    int max_iterations = 0;  ///< 0 selects 10*n + 50
    double multiplier_tol = 1e-12;
};

/// Minimizes -mu'theta + ((phi+1)/2) theta'Sigma theta over the unit simplex.
///
/// Primal active-set method. Each iteration solves the equality-constrained
/// problem on the current support {i : theta_i free}; blocking steps drop an
/// index, negative multipliers release one. When several multipliers are
/// negative the most negative is released, ties going to the lowest index.
///
/// `warm` (optional) must be a feasible point; its support seeds the working
/// set. Throws PhiOutOfDomain for phi <= -1 + 1e-9 and NonConvex if Sigma is
/// not positive definite.
QpSolution solve_parametric_qp(const MarketModel& model, double phi,
                               const QpSolution* warm = nullptr, const QpOptions& opts = {});

/// The same objective, evaluated at an arbitrary theta.
double qp_objective(const MarketModel& model, double phi, const Eigen::VectorXd& theta);

}  // namespace riccati
