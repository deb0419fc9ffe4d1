#pragma once

#include <cstddef>

namespace riccati {

/// Uniform space-time mesh. Nodes x_i = x_left + i h for i = 0..n_interior+1;
/// time layers tau^j = j k for j = 0..m_steps.
struct SolverGrid {
    double x_left = 0.0;
    double x_right = 1.0;
    std::size_t n_interior = 1;
    double horizon = 1.0;
    std::size_t m_steps = 1;
    std::size_t i_star = 1;  ///< anchor node, 1 <= i_star <= n_interior

    double h() const noexcept { return (x_right - x_left) / static_cast<double>(n_interior + 1); }
    double k() const noexcept { return horizon / static_cast<double>(m_steps); }
    double x(std::size_t i) const noexcept { return x_left + static_cast<double>(i) * h(); }
    double tau(std::size_t j) const noexcept { return static_cast<double>(j) * k(); }
    double x_star() const noexcept { return x(i_star); }
    std::size_t nodes() const noexcept { return n_interior + 2; }

    /// Throws InvalidConfig when an invariant fails.
    void validate() const;

    /// Builds a grid from step sizes: n_interior = round((x_right-x_left)/h) - 1,
    /// m_steps = round(horizon/k), anchor = node nearest x_star.
    static SolverGrid from_steps(double x_left, double x_right, double h, double horizon, double k,
                                 double x_star);
};

}  // namespace riccati
