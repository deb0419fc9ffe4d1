#include "riccati/reconstruction.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "riccati/csv.hpp"
#include "riccati/errors.hpp"

namespace riccati {

namespace {

void require_snapshots(const SolutionBundle& bundle) {
    if (bundle.snapshots.empty()) throw Error(ErrorCode::InvalidConfig, "bundle has no snapshots");
}

/// b(t) e^{-(Phi_i - Phi_*)} in log-safe form
std::vector<double> scaled_weights(const Snapshot& snap, double log_b, std::size_t i_star) {
    const double anchor = snap.cumulative[i_star];
    std::vector<double> w(snap.cumulative.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = std::exp(log_b - (snap.cumulative[i] - anchor));
    return w;
}

}  // namespace

std::vector<double> reconstruct_a(SolutionBundle& bundle, const AlphaFunction& alpha,
                                  const TerminalUtility& terminal,
                                  const IntertemporalUtility& c_util) {
    const SolverGrid& grid = bundle.grid;
    const size_t layers = grid.m_steps + 1;
    if (bundle.phi_star_path.size() != layers || bundle.log_b_path.size() != layers) {
        throw Error(ErrorCode::InvalidConfig, "bundle paths do not cover every layer");
    }
    const double xs = grid.x_star();
    const double k = grid.k();
    std::vector<double> a(layers);
    a[0] = terminal.value(xs);
    for (size_t j = 0; j + 1 < layers; ++j) {
        const double tau = grid.tau(j);
        const double gamma = alpha.eval(xs, tau, bundle.phi_star_path[j]).alpha;
        const double c = c_util.is_zero() ? 0.0 : c_util.eval(xs, grid.horizon - tau).c;
        a[j + 1] = a[j] - k * (gamma * std::exp(bundle.log_b_path[j]) - c);
    }
    bundle.a_path = a;
    return a;
}

Eigen::MatrixXd reconstruct_V(SolutionBundle& bundle) {
    require_snapshots(bundle);
    const SolverGrid& grid = bundle.grid;
    if (bundle.a_path.size() != grid.m_steps + 1) {
        throw Error(ErrorCode::InvalidConfig, "reconstruct_a must run before reconstruct_V");
    }
    const size_t nodes = grid.nodes();
    const size_t is = grid.i_star;
    const double h = grid.h();
    Eigen::MatrixXd field(nodes, bundle.snapshots.size());

    for (size_t s = 0; s < bundle.snapshots.size(); ++s) {
        const Snapshot& snap = bundle.snapshots[s];
        const std::vector<double> w = scaled_weights(snap, bundle.log_b_path[snap.layer], is);
        std::vector<double> bi(nodes, 0.0);  // b * int_{x_*}^{x_i}
        for (size_t i = is; i + 1 < nodes; ++i) bi[i + 1] = bi[i] + 0.5 * h * (w[i] + w[i + 1]);
        for (size_t i = is; i > 0; --i) bi[i - 1] = bi[i] - 0.5 * h * (w[i] + w[i - 1]);

        const double a = bundle.a_path[snap.layer];
        for (size_t i = 0; i < nodes; ++i) {
            field(i, s) = a + bi[i];
            if (!std::isfinite(field(i, s)) || (i > 0 && field(i, s) < field(i - 1, s))) {
                throw Error(ErrorCode::MonotonicityViolation,
                            "V is not increasing at x = " + csv::format(grid.x(i)) +
                                ", tau = " + csv::format(snap.tau));
            }
        }
    }
    bundle.V_field = field;
    return field;
}

Eigen::MatrixXd reconstruct_psi(SolutionBundle& bundle) {
    require_snapshots(bundle);
    const SolverGrid& grid = bundle.grid;
    Eigen::MatrixXd field(grid.nodes(), bundle.snapshots.size());
    for (size_t s = 0; s < bundle.snapshots.size(); ++s) {
        const Snapshot& snap = bundle.snapshots[s];
        const double anchor = snap.cumulative[grid.i_star];
        const double log_b = bundle.log_b_path[snap.layer];
        for (size_t i = 0; i < grid.nodes(); ++i) {
            field(i, s) = std::exp(snap.cumulative[i] - anchor - log_b);
        }
    }
    bundle.psi_field = field;
    return field;
}

std::vector<Eigen::MatrixXd> extract_weights(SolutionBundle& bundle, const AlphaTable& table) {
    require_snapshots(bundle);
    std::vector<Eigen::MatrixXd> out;
    out.reserve(bundle.snapshots.size());
    for (const Snapshot& snap : bundle.snapshots) {
        Eigen::MatrixXd m(static_cast<Eigen::Index>(snap.phi.size()), table.assets());
        for (size_t i = 0; i < snap.phi.size(); ++i) {
            m.row(static_cast<Eigen::Index>(i)) = table.theta_at(snap.phi[i]).transpose();
        }
        out.push_back(std::move(m));
    }
    bundle.theta_field = out;
    return out;
}

void write_field_csv(const SolutionBundle& bundle, const Eigen::MatrixXd& field,
                     const char* column, std::ostream& out) {
    out << "x,tau," << column << '\n';
    for (size_t s = 0; s < bundle.snapshots.size(); ++s) {
        const double tau = bundle.snapshots[s].tau;
        for (Eigen::Index i = 0; i < field.rows(); ++i) {
            out << csv::format(bundle.grid.x(static_cast<size_t>(i))) << ',' << csv::format(tau)
                << ',' << csv::format(field(i, static_cast<Eigen::Index>(s))) << '\n';
        }
    }
}

void write_weights_csv(const SolutionBundle& bundle, const std::vector<Eigen::MatrixXd>& weights,
                       std::ostream& out) {
    const Eigen::Index n = weights.empty() ? 0 : weights.front().cols();
    out << "x,tau";
    for (Eigen::Index a = 0; a < n; ++a) out << ",theta_" << (a + 1);
    out << '\n';
    for (size_t s = 0; s < weights.size(); ++s) {
        const double tau = bundle.snapshots[s].tau;
        for (Eigen::Index i = 0; i < weights[s].rows(); ++i) {
            out << csv::format(bundle.grid.x(static_cast<size_t>(i))) << ',' << csv::format(tau);
            for (Eigen::Index a = 0; a < n; ++a) out << ',' << csv::format(weights[s](i, a));
            out << '\n';
        }
    }
}

}  // namespace riccati
