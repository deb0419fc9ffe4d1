#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <vector>

#include "riccati/grid.hpp"

namespace riccati {

/// phi and its trapezoid antiderivative (from x_left) at one time layer.
struct Snapshot {
    std::size_t layer = 0;
    double tau = 0.0;
    std::vector<double> phi;
    std::vector<double> cumulative;
};

struct RunDiagnostics {
    std::size_t clamp_count = 0;        ///< alpha evaluations outside the table range
    std::size_t bounds_violations = 0;  ///< node-layer pairs outside the a-priori band
    double phi_min_seen = 0.0;
    double phi_max_seen = 0.0;
    double min_dominance_margin = 0.0;  ///< smallest row margin |d| - |l| - |u| seen
    double wall_seconds = 0.0;
};

/// Everything a finished run produces. a_path, V_field, psi_field and
/// theta_field are filled by the reconstruction functions.
struct SolutionBundle {
    SolverGrid grid;
    std::vector<Snapshot> snapshots;
    std::vector<double> phi_star_path;  ///< phi at the anchor node, every layer
    std::vector<double> log_b_path;     ///< log b^j, every layer
    std::vector<double> a_path;
    std::optional<Eigen::MatrixXd> V_field;    ///< nodes x snapshots
    std::optional<Eigen::MatrixXd> psi_field;  ///< nodes x snapshots
    std::vector<Eigen::MatrixXd> theta_field;  ///< per snapshot: nodes x assets
    RunDiagnostics diagnostics;

    double b(std::size_t layer) const;
    std::vector<double> b_path() const;
    const Snapshot* snapshot_at_layer(std::size_t layer) const noexcept;
};

}  // namespace riccati
