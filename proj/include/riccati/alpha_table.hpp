#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "riccati/hermite.hpp"
#include "riccati/market_model.hpp"

namespace riccati {

/// Lower end of the tabulated domain when the requested range starts at -1.
inline constexpr double kTablePhiFloor = -1.0 + 1e-6;

/// Tabulated value function of the parametric simplex QP,
///   alpha(phi) = min_theta -mu'theta + ((phi+1)/2) theta'Sigma theta,
/// together with the envelope derivative 1/2 theta'Sigma theta and the
/// minimizers. Immutable once built; concurrent reads are safe.
class AlphaTable {
public:
    AlphaTable(std::vector<double> phi_grid, std::vector<double> alpha_vals,
               std::vector<double> alpha_prime_vals, Eigen::MatrixXd theta_rows);

    const std::vector<double>& phi_grid() const noexcept { return phi_grid_; }
    const std::vector<double>& alpha_vals() const noexcept { return alpha_vals_; }
    const std::vector<double>& alpha_prime_vals() const noexcept { return alpha_prime_vals_; }
    const Eigen::MatrixXd& theta_rows() const noexcept { return theta_rows_; }
    double phi_min_eff() const noexcept { return phi_grid_.front(); }
    double phi_max() const noexcept { return phi_grid_.back(); }
    std::size_t size() const noexcept { return phi_grid_.size(); }
    Eigen::Index assets() const noexcept { return theta_rows_.cols(); }

    struct Sample {
        double alpha;
        double alpha_phi;
        bool clamped;
    };

    /// Monotone Hermite interpolation of the tabulated alpha and its
    /// derivative. Out-of-range phi is clamped to the nearest end node.
    Sample eval(double phi) const noexcept;

    /// Interpolated minimizer, projected back onto the simplex.
    Eigen::VectorXd theta_at(double phi) const;

    /// Node indices adjacent to a change of the active set (support of the
    /// minimizer). Node i is listed when support(i) != support(i+1) or
    /// support(i) != support(i-1).
    std::vector<std::size_t> breakpoint_nodes(double weight_tol = 1e-10) const;

    /// Phi values (midpoints between nodes) where the support changes.
    std::vector<double> breakpoints(double weight_tol = 1e-10) const;

private:
    std::vector<double> phi_grid_;
    std::vector<double> alpha_vals_;
    std::vector<double> alpha_prime_vals_;
    Eigen::MatrixXd theta_rows_;
    MonotoneHermite alpha_interp_;
    std::vector<MonotoneHermite> theta_interp_;
};

/// Node grid phi_lo + i*h_phi, i = 0..ceil((hi-lo)/h_phi), last node pinned to
/// phi_hi and the first raised to kTablePhiFloor when phi_lo <= -1.
std::vector<double> alpha_table_grid(double phi_lo, double phi_hi, double h_phi);

/// Builds the table with warm-started active-set solves in ascending phi.
/// alpha_prime_vals come from the envelope identity, not differencing.
/// Throws TableMonotonicityViolation when tabulated alpha fails to increase.
AlphaTable build_alpha_table(const MarketModel& model, double phi_lo, double phi_hi, double h_phi);

/// CSV with header phi,alpha,alpha_prime,theta_1..theta_n, 17 significant digits.
void write_alpha_table_csv(const AlphaTable& table, std::ostream& out);
void write_alpha_table_csv(const AlphaTable& table, const std::string& path);
AlphaTable read_alpha_table_csv(std::istream& in);
AlphaTable read_alpha_table_csv(const std::string& path);

}  // namespace riccati
