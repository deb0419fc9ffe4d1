#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "riccati/alpha.hpp"
#include "riccati/grid.hpp"
#include "riccati/solution.hpp"
#include "riccati/tridiagonal.hpp"
#include "riccati/utility.hpp"

namespace riccati {

struct BoundaryCondition {
    enum class Kind { NeumannZero, Dirichlet };
    using Fn = std::function<double(double x, double tau)>;

    Kind kind = Kind::NeumannZero;
    Fn dirichlet_eval;

    static BoundaryCondition neumann() { return {}; }
    static BoundaryCondition dirichlet(Fn fn) { return {Kind::Dirichlet, std::move(fn)}; }
    void validate() const;
};

/// Evolving field. phi has n_interior+2 entries; the end entries are the
/// boundary (Dirichlet) or ghost (Neumann) values.
struct SolverState {
    std::vector<double> phi;
    std::vector<double> cumulative;  ///< trapezoid antiderivative of phi from x_left
    double log_b = 0.0;              ///< b^j is carried in log form
    std::size_t j_step = 0;
    std::size_t clamp_count = 0;

    double b() const;
};

enum class BUpdateMode { Explicit, Implicit };

/// Treatment of the advective flux B = -alpha phi. Explicit takes it from the
/// old layer. Linearized adds B_phi (phi^{j+1} - phi^j) at each face, which
/// moves the advection into the matrix and removes the k < 2 alpha_phi / B_phi^2
/// restriction of the explicit form.
enum class FluxMode { Explicit, Linearized };

/// -u''/u' at every node; boundary entries follow the boundary condition.
/// Throws NonIncreasingUtility when u' <= 0 at a node.
std::vector<double> initial_condition(const TerminalUtility& utility, const SolverGrid& grid,
                                      const BoundaryCondition& bc = BoundaryCondition::neumann());

/// Initial field with b^0 = u'(x_*) and a fresh antiderivative.
SolverState make_initial_state(const TerminalUtility& utility, const SolverGrid& grid,
                               const BoundaryCondition& bc);

/// Phi_0 = 0, Phi_{i+1} = Phi_i + h/2 (phi_i + phi_{i+1}).
void refresh_cumulative(SolverState& state, const SolverGrid& grid);
std::vector<double> cumulative_trapezoid(std::span<const double> phi, double h);

/// J_i = -h e^{Phi_i - Phi_{i*}} / b (phi_i c_x + c_xx) at calendar time
/// T - tau_j; entries 0 and n+1 are zero. Throws NonpositiveB.
std::vector<double> nonlocal_term(const SolverState& state, const SolverGrid& grid,
                                  const IntertemporalUtility& c_util, double tau_j);

/// omega = alpha_x + alpha_phi (phi_{i*+1} - phi_{i*-1}) / 2h - alpha phi at the anchor.
double anchor_omega(const SolverState& state, const SolverGrid& grid, const AlphaFunction& alpha,
                    double tau_j);

struct BUpdate {
    double log_b;
    double omega;
    double b() const;
};

/// Next b from the current layer:
///   explicit: b' = (1 - k omega) b + k c_x(x_*, T - tau_j)
///   implicit: b' = (b + k c_x(x_*, T - tau_j)) / (1 + k omega)
/// Throws NonpositiveB when the result is not positive.
BUpdate update_b(const SolverState& state, const SolverGrid& grid, const AlphaFunction& alpha,
                 const IntertemporalUtility& c_util, BUpdateMode mode = BUpdateMode::Implicit);

/// Semi-implicit finite-volume system for the interior unknowns phi^{j+1}_1..n.
/// Face coefficients D, E, F use the old layer at arithmetic-mean face values;
/// the non-local term is explicit. Clamped alpha evaluations are added to
/// state.clamp_count.
TridiagonalSystem assemble_step(SolverState& state, const SolverGrid& grid,
                                const AlphaFunction& alpha, const IntertemporalUtility& c_util,
                                const BoundaryCondition& bc, double tau_j,
                                FluxMode flux = FluxMode::Explicit);

struct PhiBounds {
    double lower;
    double upper;
    double margin;
};

struct EvolveOptions {
    BUpdateMode b_mode = BUpdateMode::Implicit;
    FluxMode flux = FluxMode::Explicit;
    /// tau values to snapshot (nearest layer); layer 0 and the final layer are always kept
    std::vector<double> record_taus;
    std::optional<PhiBounds> bounds;
    /// called after every layer, including layer 0
    std::function<void(std::size_t layer, double tau, std::span<const double> phi)> observer;
};

SolutionBundle evolve(const SolverGrid& grid, const AlphaFunction& alpha,
                      const TerminalUtility& terminal, const IntertemporalUtility& c_util,
                      const BoundaryCondition& bc, const EvolveOptions& options = {});

}  // namespace riccati
