#include "riccati/hjb_reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <string>

#include "riccati/csv.hpp"
#include "riccati/errors.hpp"
#include "riccati/simplex_qp.hpp"
#include "riccati/tridiagonal.hpp"

namespace riccati {

void PolicyIterationConfig::validate() const {
    grid.validate();
    if (max_policy_sweeps < 1) throw Error(ErrorCode::InvalidConfig, "max_policy_sweeps must be >= 1");
    if (!(policy_tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "policy_tol must be positive");
}

std::vector<double> policy_step(std::span<const double> V_prev, const Eigen::MatrixXd& theta_field,
                                const SolverGrid& grid, const MarketModel& model,
                                const IntertemporalUtility& c_util, double tau_j, double v_left,
                                double v_right) {
    const size_t n = grid.n_interior;
    const double h = grid.h();
    const double k = grid.k();
    const double t = grid.horizon - tau_j;

    TridiagonalSystem sys(n);
    for (size_t i = 1; i <= n; ++i) {
        const size_t row = i - 1;
        const Eigen::VectorXd theta = theta_field.row(static_cast<Eigen::Index>(i)).transpose();
        const double var = model.variance(theta);
        const double x = grid.x(i);
        const double drift =
            model.mu.dot(theta) - 0.5 * var + model.epsilon * std::exp(-x) + model.rate;
        const double adv = k * drift / (2.0 * h);
        const double dif = k * 0.5 * var / (h * h);
        sys.lower[row] = adv - dif;
        sys.diag[row] = 1.0 + 2.0 * dif;
        sys.upper[row] = -adv - dif;
        const double c = c_util.is_zero() ? 0.0 : c_util.eval(x, t).c;
        sys.rhs[row] = V_prev[i] + k * c;
    }
    sys.rhs.front() -= sys.lower.front() * v_left;
    sys.rhs.back() -= sys.upper.back() * v_right;
    sys.lower.front() = 0.0;
    sys.upper.back() = 0.0;

    const std::vector<double> interior = thomas_solve(sys);
    std::vector<double> V(grid.nodes());
    V.front() = v_left;
    V.back() = v_right;
    std::copy(interior.begin(), interior.end(), V.begin() + 1);
    return V;
}

std::vector<double> riccati_transform(std::span<const double> V, double h) {
    const size_t nodes = V.size();
    std::vector<double> phi(nodes, std::numeric_limits<double>::quiet_NaN());
    for (size_t i = 1; i + 1 < nodes; ++i) {
        const double d1 = (V[i + 1] - V[i - 1]) / (2.0 * h);
        const double d2 = (V[i + 1] - 2.0 * V[i] + V[i - 1]) / (h * h);
        if (d1 > 0.0) phi[i] = -d2 / d1;
    }
    if (nodes >= 3) {
        phi.front() = phi[1];
        phi.back() = phi[nodes - 2];
    }
    return phi;
}

PolicyUpdate improve_policy(std::span<const double> V, const SolverGrid& grid,
                            const MarketModel& model, ThetaSource source,
                            const AlphaTable* table, const Eigen::MatrixXd& previous) {
    if (source == ThetaSource::FromAlphaTable && table == nullptr) {
        throw Error(ErrorCode::InvalidConfig, "theta_source from-alpha-table needs a table");
    }
    const size_t nodes = grid.nodes();
    const Eigen::Index n_assets = model.assets();
    PolicyUpdate out;
    out.phi_node = riccati_transform(V, grid.h());
    out.theta.resize(static_cast<Eigen::Index>(nodes), n_assets);
    const bool have_previous = previous.rows() == static_cast<Eigen::Index>(nodes);

    QpSolution warm;
    bool have_warm = false;
    for (size_t i = 1; i + 1 < nodes; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        const double phi = out.phi_node[i];
        if (std::isnan(phi)) {
            ++out.nonmonotone;
            out.theta.row(row) = have_previous
                                     ? Eigen::RowVectorXd(previous.row(row))
                                     : Eigen::RowVectorXd::Constant(n_assets, 1.0 / n_assets);
            continue;
        }
        if (source == ThetaSource::FromAlphaTable) {
            out.theta.row(row) = table->theta_at(phi).transpose();
        } else {
            const double p = std::max(phi, kTablePhiFloor);
            warm = solve_parametric_qp(model, p, have_warm ? &warm : nullptr);
            have_warm = true;
            out.theta.row(row) = warm.theta.transpose();
        }
    }
    out.theta.row(0) = out.theta.row(1);
    out.theta.row(static_cast<Eigen::Index>(nodes - 1)) =
        out.theta.row(static_cast<Eigen::Index>(nodes - 2));
    return out;
}

HjbResult solve_hjb(const PolicyIterationConfig& config, const MarketModel& model,
                    const AlphaTable* table, const TerminalUtility& terminal,
                    const IntertemporalUtility& c_util, const ValueBoundary& boundary,
                    const std::vector<double>& record_taus) {
    config.validate();
    model.validate();
    if (!boundary) throw Error(ErrorCode::InvalidConfig, "direct HJB solve needs boundary values");
    const SolverGrid& grid = config.grid;

    std::set<size_t> layers{0, grid.m_steps};
    for (double tau : record_taus) {
        const double pos = std::round(tau / grid.k());
        layers.insert(static_cast<size_t>(std::clamp(pos, 0.0, static_cast<double>(grid.m_steps))));
    }

    HjbResult result;
    std::vector<double> V(grid.nodes());
    for (size_t i = 0; i < V.size(); ++i) V[i] = terminal.value(grid.x(i));
    result.snapshots.push_back({0, 0.0, V});

    PolicyUpdate policy = improve_policy(V, grid, model, config.theta_source, table, {});
    result.nonmonotone_flags += policy.nonmonotone;

    for (size_t j = 1; j <= grid.m_steps; ++j) {
        const double tau = grid.tau(j);
        const double vl = boundary(grid.x_left, tau);
        const double vr = boundary(grid.x_right, tau);
        std::vector<double> next =
            policy_step(V, policy.theta, grid, model, c_util, tau, vl, vr);
        ++result.total_sweeps;

        // optional extra sweeps inside the layer; the last improvement also
        // serves as the frozen policy for the next layer
        PolicyUpdate improved =
            improve_policy(next, grid, model, config.theta_source, table, policy.theta);
        for (int s = 1; s < config.max_policy_sweeps; ++s) {
            const double change = (improved.theta - policy.theta).cwiseAbs().maxCoeff();
            if (change < config.policy_tol) break;
            policy = std::move(improved);
            next = policy_step(V, policy.theta, grid, model, c_util, tau, vl, vr);
            ++result.total_sweeps;
            improved = improve_policy(next, grid, model, config.theta_source, table, policy.theta);
        }
        policy = std::move(improved);
        result.nonmonotone_flags += policy.nonmonotone;
        V = std::move(next);
        if (layers.count(j) != 0 && j != 0) result.snapshots.push_back({j, tau, V});
    }
    return result;
}

void write_value_csv(const SolverGrid& grid, std::span<const double> V, std::ostream& out) {
    out << "x,V\n";
    for (size_t i = 0; i < V.size(); ++i) {
        out << csv::format(grid.x(i)) << ',' << csv::format(V[i]) << '\n';
    }
}

}  // namespace riccati
