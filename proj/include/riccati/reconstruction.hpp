#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "riccati/alpha.hpp"
#include "riccati/alpha_table.hpp"
#include "riccati/solution.hpp"
#include "riccati/utility.hpp"

namespace riccati {

/// Integrates da/dtau = -gamma b + c(x_*, T - tau), a(0) = u(x_*), by forward
/// Euler over every layer, with gamma = alpha(x_*, tau, phi(x_*, tau)).
/// Stores the result in bundle.a_path and returns it.
std::vector<double> reconstruct_a(SolutionBundle& bundle, const AlphaFunction& alpha,
                                  const TerminalUtility& terminal,
                                  const IntertemporalUtility& c_util);

/// V(x, t) = a(t) + b(t) int_{x_*}^x e^{-int_{x_*}^xi phi} dxi on every node
/// and snapshot (trapezoid rule on the solver mesh). Requires a_path.
/// Throws MonotonicityViolation if a column fails to increase in x.
Eigen::MatrixXd reconstruct_V(SolutionBundle& bundle);

/// psi = e^{int_{x_*}^x phi} / b = 1 / V_x
Eigen::MatrixXd reconstruct_psi(SolutionBundle& bundle);

/// Optimal weights per snapshot (nodes x assets), interpolated from the table
/// and projected back onto the simplex.
std::vector<Eigen::MatrixXd> extract_weights(SolutionBundle& bundle, const AlphaTable& table);

/// Long-format exports: x,tau,V / x,tau,psi / x,tau,theta_1..theta_n.
void write_field_csv(const SolutionBundle& bundle, const Eigen::MatrixXd& field,
                     const char* column, std::ostream& out);
void write_weights_csv(const SolutionBundle& bundle, const std::vector<Eigen::MatrixXd>& weights,
                       std::ostream& out);

}  // namespace riccati
