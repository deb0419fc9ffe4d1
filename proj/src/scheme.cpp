#include "riccati/scheme.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "riccati/csv.hpp"
#include "riccati/errors.hpp"
#include "riccati/log.hpp"

namespace riccati {

void BoundaryCondition::validate() const {
    if (kind == Kind::Dirichlet && !dirichlet_eval) {
        throw Error(ErrorCode::InvalidConfig, "Dirichlet boundary condition needs an evaluator");
    }
}

double SolverState::b() const { return std::exp(log_b); }
double BUpdate::b() const { return std::exp(log_b); }

std::vector<double> initial_condition(const TerminalUtility& utility, const SolverGrid& grid,
                                      const BoundaryCondition& bc) {
    grid.validate();
    bc.validate();
    const size_t nodes = grid.nodes();
    std::vector<double> phi(nodes);
    for (size_t i = 0; i < nodes; ++i) {
        const double x = grid.x(i);
        if (!(utility.d1(x) > 0.0) && !std::isfinite(utility.log_d1(x))) {
            throw Error(ErrorCode::NonIncreasingUtility,
                        "u'(" + csv::format(x) + ") <= 0 for " + utility.describe());
        }
        phi[i] = utility.risk_aversion(x);
    }
    if (bc.kind == BoundaryCondition::Kind::Dirichlet) {
        phi.front() = bc.dirichlet_eval(grid.x_left, 0.0);
        phi.back() = bc.dirichlet_eval(grid.x_right, 0.0);
    } else {
        phi.front() = phi[1];
        phi.back() = phi[nodes - 2];
    }
    return phi;
}

std::vector<double> cumulative_trapezoid(std::span<const double> phi, double h) {
    std::vector<double> out(phi.size(), 0.0);
    for (size_t i = 0; i + 1 < phi.size(); ++i) {
        out[i + 1] = out[i] + 0.5 * h * (phi[i] + phi[i + 1]);
    }
    return out;
}

void refresh_cumulative(SolverState& state, const SolverGrid& grid) {
    const double h = grid.h();
    state.cumulative.resize(state.phi.size());
    state.cumulative[0] = 0.0;
    for (size_t i = 0; i + 1 < state.phi.size(); ++i) {
        state.cumulative[i + 1] = state.cumulative[i] + 0.5 * h * (state.phi[i] + state.phi[i + 1]);
    }
}

SolverState make_initial_state(const TerminalUtility& utility, const SolverGrid& grid,
                               const BoundaryCondition& bc) {
    SolverState s;
    s.phi = initial_condition(utility, grid, bc);
    s.log_b = utility.log_d1(grid.x_star());
    if (!std::isfinite(s.log_b)) {
        throw Error(ErrorCode::NonpositiveB, "u'(x_*) is not positive");
    }
    refresh_cumulative(s, grid);
    return s;
}

std::vector<double> nonlocal_term(const SolverState& state, const SolverGrid& grid,
                                  const IntertemporalUtility& c_util, double tau_j) {
    if (!std::isfinite(state.log_b)) {
        throw Error(ErrorCode::NonpositiveB, "b is not a finite positive number");
    }
    const size_t nodes = grid.nodes();
    std::vector<double> j_term(nodes, 0.0);
    if (c_util.is_zero()) return j_term;

    const double h = grid.h();
    const double t = grid.horizon - tau_j;
    const double anchor = state.cumulative[grid.i_star];
    for (size_t i = 1; i + 1 < nodes; ++i) {
        const auto c = c_util.eval(grid.x(i), t);
        const double source = state.phi[i] * c.c_x + c.c_xx;
        if (source == 0.0) continue;
        j_term[i] = -h * std::exp(state.cumulative[i] - anchor - state.log_b) * source;
    }
    return j_term;
}

double anchor_omega(const SolverState& state, const SolverGrid& grid, const AlphaFunction& alpha,
                    double tau_j) {
    const size_t is = grid.i_star;
    const double phi_star = state.phi[is];
    const auto ev = alpha.eval(grid.x_star(), tau_j, phi_star);
    const double dphi = (state.phi[is + 1] - state.phi[is - 1]) / (2.0 * grid.h());
    return ev.alpha_x + ev.alpha_phi * dphi - ev.alpha * phi_star;
}

BUpdate update_b(const SolverState& state, const SolverGrid& grid, const AlphaFunction& alpha,
                 const IntertemporalUtility& c_util, BUpdateMode mode) {
    const double tau_j = grid.tau(state.j_step);
    const double k = grid.k();
    const double omega = anchor_omega(state, grid, alpha, tau_j);
    const double g = c_util.is_zero() ? 0.0 : c_util.eval(grid.x_star(), grid.horizon - tau_j).c_x;
    // k g / b, kept finite when b is astronomically large or small
    const double source = g == 0.0 ? 0.0 : k * g * std::exp(-state.log_b);

    BUpdate out{state.log_b, omega};
    if (mode == BUpdateMode::Explicit) {
        const double factor = 1.0 - k * omega + source;
        if (!(factor > 0.0)) {
            throw Error(ErrorCode::NonpositiveB, "explicit b update at layer " +
                                                     std::to_string(state.j_step) +
                                                     " gives factor " + csv::format(factor));
        }
        out.log_b += std::log(factor);
    } else {
        const double num = 1.0 + source;
        const double den = 1.0 + k * omega;
        if (!(num > 0.0) || !(den > 0.0)) {
            throw Error(ErrorCode::NonpositiveB, "implicit b update at layer " +
                                                     std::to_string(state.j_step) +
                                                     " is not positive (1 + k omega = " +
                                                     csv::format(den) + ")");
        }
        out.log_b += std::log1p(source) - std::log1p(k * omega);
    }
    if (!std::isfinite(out.log_b)) {
        throw Error(ErrorCode::NonpositiveB, "b left the representable range");
    }
    return out;
}

TridiagonalSystem assemble_step(SolverState& state, const SolverGrid& grid,
                                const AlphaFunction& alpha, const IntertemporalUtility& c_util,
                                const BoundaryCondition& bc, double tau_j, FluxMode flux) {
    const size_t n = grid.n_interior;
    const double h = grid.h();
    const double k = grid.k();
    const double r = k / (h * h);
    const double q = k / h;
    const auto& phi = state.phi;

    // faces f = 0..n sit between nodes f and f+1
    std::vector<double> d(n + 1), e(n + 1), f(n + 1), g(n + 1, 0.0), pface(n + 1);
    for (size_t face = 0; face <= n; ++face) {
        const double xf = grid.x_left + (static_cast<double>(face) + 0.5) * h;
        const double pf = 0.5 * (phi[face] + phi[face + 1]);
        const auto ev = alpha.eval(xf, tau_j, pf);
        if (ev.clamped) ++state.clamp_count;
        d[face] = ev.alpha_phi;
        e[face] = ev.alpha_x;
        f[face] = -ev.alpha * pf;
        pface[face] = pf;
        if (flux == FluxMode::Linearized) g[face] = -(ev.alpha + ev.alpha_phi * pf);
    }

    const std::vector<double> j_term = nonlocal_term(state, grid, c_util, tau_j);

    TridiagonalSystem sys(n);
    for (size_t i = 1; i <= n; ++i) {
        const size_t row = i - 1;
        sys.lower[row] = -r * d[i - 1];
        sys.upper[row] = -r * d[i];
        sys.diag[row] = 1.0 + r * (d[i] + d[i - 1]);
        sys.rhs[row] = q * (j_term[i] + e[i] - e[i - 1] + f[i] - f[i - 1]) + phi[i];
        if (flux == FluxMode::Linearized) {
            // new-layer part of g (phi_face^{j+1} - phi_face^j) on both faces
            sys.lower[row] += 0.5 * q * g[i - 1];
            sys.diag[row] += 0.5 * q * (g[i - 1] - g[i]);
            sys.upper[row] -= 0.5 * q * g[i];
            sys.rhs[row] -= q * (g[i] * pface[i] - g[i - 1] * pface[i - 1]);
        }
    }

    if (bc.kind == BoundaryCondition::Kind::NeumannZero) {
        // ghost values equal their interior neighbours
        sys.diag.front() += sys.lower.front();
        sys.diag.back() += sys.upper.back();
    } else {
        const double tau_next = tau_j + k;
        sys.rhs.front() -= sys.lower.front() * bc.dirichlet_eval(grid.x_left, tau_next);
        sys.rhs.back() -= sys.upper.back() * bc.dirichlet_eval(grid.x_right, tau_next);
    }
    sys.lower.front() = 0.0;
    sys.upper.back() = 0.0;
    return sys;
}

namespace {

std::set<size_t> snapshot_layers(const SolverGrid& grid, const std::vector<double>& taus) {
    std::set<size_t> layers{0, grid.m_steps};
    for (double tau : taus) {
        const double pos = std::round(tau / grid.k());
        layers.insert(static_cast<size_t>(std::clamp(pos, 0.0, static_cast<double>(grid.m_steps))));
    }
    return layers;
}

}  // namespace

SolutionBundle evolve(const SolverGrid& grid, const AlphaFunction& alpha,
                      const TerminalUtility& terminal, const IntertemporalUtility& c_util,
                      const BoundaryCondition& bc, const EvolveOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    grid.validate();
    bc.validate();

    SolutionBundle bundle;
    bundle.grid = grid;
    const auto layers = snapshot_layers(grid, options.record_taus);
    const size_t n = grid.n_interior;

    SolverState state = make_initial_state(terminal, grid, bc);
    auto& diag = bundle.diagnostics;
    diag.phi_min_seen = std::numeric_limits<double>::infinity();
    diag.phi_max_seen = -std::numeric_limits<double>::infinity();
    diag.min_dominance_margin = std::numeric_limits<double>::infinity();

    auto observe_layer = [&](size_t layer) {
        const double tau = grid.tau(layer);
        bundle.phi_star_path.push_back(state.phi[grid.i_star]);
        bundle.log_b_path.push_back(state.log_b);
        for (double v : state.phi) {
            diag.phi_min_seen = std::min(diag.phi_min_seen, v);
            diag.phi_max_seen = std::max(diag.phi_max_seen, v);
            if (options.bounds) {
                const auto& bd = *options.bounds;
                if (v < bd.lower - bd.margin || v > bd.upper + bd.margin) ++diag.bounds_violations;
            }
        }
        if (layers.count(layer) != 0) {
            bundle.snapshots.push_back({layer, tau, state.phi, state.cumulative});
        }
        if (options.observer) options.observer(layer, tau, state.phi);
    };

    bundle.phi_star_path.reserve(grid.m_steps + 1);
    bundle.log_b_path.reserve(grid.m_steps + 1);
    observe_layer(0);

    for (size_t j = 0; j < grid.m_steps; ++j) {
        const double tau = grid.tau(j);
        TridiagonalSystem sys = assemble_step(state, grid, alpha, c_util, bc, tau, options.flux);
        diag.min_dominance_margin = std::min(diag.min_dominance_margin, sys.dominance_margin());
        const BUpdate next_b = update_b(state, grid, alpha, c_util, options.b_mode);
        const std::vector<double> interior = thomas_solve(sys);

        std::copy(interior.begin(), interior.end(), state.phi.begin() + 1);
        if (bc.kind == BoundaryCondition::Kind::NeumannZero) {
            state.phi.front() = state.phi[1];
            state.phi.back() = state.phi[n];
        } else {
            const double tau_next = grid.tau(j + 1);
            state.phi.front() = bc.dirichlet_eval(grid.x_left, tau_next);
            state.phi.back() = bc.dirichlet_eval(grid.x_right, tau_next);
        }
        state.log_b = next_b.log_b;
        state.j_step = j + 1;
        refresh_cumulative(state, grid);
        observe_layer(j + 1);
    }

    diag.clamp_count = state.clamp_count;
    if (diag.clamp_count > 0) {
        log::warn("alpha evaluated outside its table range " + std::to_string(diag.clamp_count) +
                  " times (clamped)");
    }
    if (diag.bounds_violations > 0) {
        log::warn("phi left the a-priori band at " + std::to_string(diag.bounds_violations) +
                  " node-layer pairs");
    }
    diag.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return bundle;
}

}  // namespace riccati
