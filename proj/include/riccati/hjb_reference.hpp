#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "riccati/alpha_table.hpp"
#include "riccati/grid.hpp"
#include "riccati/market_model.hpp"
#include "riccati/utility.hpp"

namespace riccati {

enum class ThetaSource { FromAlphaTable, PerNodeQp };

struct PolicyIterationConfig {
    SolverGrid grid;
    int max_policy_sweeps = 1;  ///< 1 is the plain fixed-policy method
    double policy_tol = 1e-10;  ///< max-norm change of theta that ends the sweeps
    ThetaSource theta_source = ThetaSource::FromAlphaTable;

    void validate() const;
};

/// Dirichlet data V(x_boundary, tau) for the direct solve.
using ValueBoundary = std::function<double(double x, double tau)>;

/// One implicit step backwards in t with the policy frozen:
///   V - k (mu(x,theta) D1 V + 1/2 sigma^2(theta) D2 V) = V_prev + k c(x, T - tau_j),
/// centered differences, Dirichlet values v_left/v_right at the end nodes.
/// theta_field is nodes x assets.
std::vector<double> policy_step(std::span<const double> V_prev, const Eigen::MatrixXd& theta_field,
                                const SolverGrid& grid, const MarketModel& model,
                                const IntertemporalUtility& c_util, double tau_j, double v_left,
                                double v_right);

struct PolicyUpdate {
    Eigen::MatrixXd theta;        ///< nodes x assets
    std::vector<double> phi_node;  ///< -D2V/D1V, NaN where flagged
    std::size_t nonmonotone = 0;  ///< interior nodes with D1V <= 0 (policy held)
};

/// theta_j = argmin over the simplex of -mu(x,theta) D1V - 1/2 sigma^2 D2V at
/// every interior node. End nodes copy their neighbour. `previous` supplies the
/// policy held at flagged nodes and may be empty on the first call; `table` is
/// required for ThetaSource::FromAlphaTable.
PolicyUpdate improve_policy(std::span<const double> V, const SolverGrid& grid,
                            const MarketModel& model, ThetaSource source,
                            const AlphaTable* table, const Eigen::MatrixXd& previous);

struct HjbSnapshot {
    std::size_t layer = 0;
    double tau = 0.0;
    std::vector<double> V;
};

struct HjbResult {
    std::vector<HjbSnapshot> snapshots;  ///< layers 0, m and any requested
    std::size_t nonmonotone_flags = 0;
    std::size_t total_sweeps = 0;
};

/// Direct solve of the HJB equation from V(., T) = u backwards to t = 0.
HjbResult solve_hjb(const PolicyIterationConfig& config, const MarketModel& model,
                    const AlphaTable* table, const TerminalUtility& terminal,
                    const IntertemporalUtility& c_util, const ValueBoundary& boundary,
                    const std::vector<double>& record_taus = {});

/// Discrete Riccati transform -D2V/D1V on interior nodes (ends copy neighbours).
std::vector<double> riccati_transform(std::span<const double> V, double h);

/// CSV x,V
void write_value_csv(const SolverGrid& grid, std::span<const double> V, std::ostream& out);

}  // namespace riccati
