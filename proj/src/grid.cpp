#include "riccati/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "riccati/errors.hpp"

namespace riccati {

void SolverGrid::validate() const {
    if (!(x_right > x_left)) throw Error(ErrorCode::InvalidConfig, "grid needs x_left < x_right");
    if (n_interior < 1) throw Error(ErrorCode::InvalidConfig, "grid needs at least one interior node");
    if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidConfig, "horizon must be positive");
    if (m_steps < 1) throw Error(ErrorCode::InvalidConfig, "need at least one time step");
    if (i_star < 1 || i_star > n_interior) {
        throw Error(ErrorCode::InvalidConfig,
                    "anchor index " + std::to_string(i_star) + " is not an interior node");
    }
}

SolverGrid SolverGrid::from_steps(double x_left, double x_right, double h, double horizon, double k,
                                  double x_star) {
    if (!(h > 0.0) || !(k > 0.0)) throw Error(ErrorCode::InvalidConfig, "h and k must be positive");
    const double cells = std::round((x_right - x_left) / h);
    if (cells < 2.0) throw Error(ErrorCode::InvalidConfig, "domain shorter than two cells");
    SolverGrid g;
    g.x_left = x_left;
    g.x_right = x_right;
    g.n_interior = static_cast<std::size_t>(cells) - 1;
    g.horizon = horizon;
    g.m_steps = static_cast<std::size_t>(std::max(1.0, std::round(horizon / k)));
    const double pos = std::round((x_star - x_left) / g.h());
    if (pos < 1.0 || pos > static_cast<double>(g.n_interior)) {
        throw Error(ErrorCode::InvalidConfig, "x_star must lie strictly inside the domain");
    }
    g.i_star = static_cast<std::size_t>(pos);
    g.validate();
    return g;
}

}  // namespace riccati
