#include "riccati/simplex_qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "riccati/errors.hpp"

namespace riccati {

namespace {

struct EqpResult {
    Eigen::VectorXd theta_free;
    double nu = 0.0;
};

// min -mu_F'x + 1/2 x'Q_FF x  s.t. 1'x = 1, via x = Q^{-1}(mu + nu 1).
EqpResult solve_on_support(const Eigen::MatrixXd& q, const Eigen::VectorXd& mu,
                           const std::vector<int>& support) {
    const auto m = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd qf(m, m);
    Eigen::VectorXd mf(m);
    for (Eigen::Index a = 0; a < m; ++a) {
        mf(a) = mu(support[a]);
        for (Eigen::Index b = 0; b < m; ++b) qf(a, b) = q(support[a], support[b]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(qf);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NonConvex, "reduced Hessian is not positive definite");
    }
    const Eigen::VectorXd qinv_mu = llt.solve(mf);
    const Eigen::VectorXd qinv_one = llt.solve(Eigen::VectorXd::Ones(m));
    EqpResult r;
    r.nu = (1.0 - qinv_mu.sum()) / qinv_one.sum();
    r.theta_free = qinv_mu + r.nu * qinv_one;
    return r;
}

}  // namespace

double qp_objective(const MarketModel& model, double phi, const Eigen::VectorXd& theta) {
    return -model.mu.dot(theta) + 0.5 * (phi + 1.0) * model.variance(theta);
}

QpSolution solve_parametric_qp(const MarketModel& model, double phi, const QpSolution* warm,
                               const QpOptions& opts) {
    if (!(phi > kQuadraticPhiMin + kQuadraticDomainTol)) {
        throw Error(ErrorCode::PhiOutOfDomain,
                    "phi = " + std::to_string(phi) + " must exceed -1 for the quadratic family");
    }
    model.validate();

    const auto n = model.assets();
    const Eigen::MatrixXd q = (phi + 1.0) * model.sigma_cov;
    const Eigen::VectorXd& mu = model.mu;

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
    std::vector<bool> free(static_cast<size_t>(n), false);

    if (warm != nullptr && warm->theta.size() == n) {
        theta = warm->theta.cwiseMax(0.0);
        theta /= theta.sum();
        for (Eigen::Index i = 0; i < n; ++i) free[i] = theta(i) > 0.0;
    } else {
        // best vertex
        Eigen::Index best = 0;
        double best_val = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < n; ++i) {
            const double v = -mu(i) + 0.5 * q(i, i);
            if (v < best_val) {
                best_val = v;
                best = i;
            }
        }
        theta(best) = 1.0;
        free[best] = true;
    }

    const int max_iter = opts.max_iterations > 0 ? opts.max_iterations : 10 * static_cast<int>(n) + 50;
    QpSolution out;
    double nu = 0.0;
    bool converged = false;

    for (int iter = 0; iter < max_iter; ++iter) {
        out.iterations = iter + 1;
        std::vector<int> support;
        for (Eigen::Index i = 0; i < n; ++i)
            if (free[i]) support.push_back(static_cast<int>(i));

        const EqpResult eqp = solve_on_support(q, mu, support);
        nu = eqp.nu;

        const bool feasible = eqp.theta_free.minCoeff() >= 0.0;
        if (feasible) {
            theta.setZero();
            for (size_t a = 0; a < support.size(); ++a) theta(support[a]) = eqp.theta_free(a);

            const Eigen::VectorXd grad = -mu + q * theta;
            const double scale = 1.0 + grad.cwiseAbs().maxCoeff();
            int release = -1;
            double most_negative = -opts.multiplier_tol * scale;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (free[i]) continue;
                const double lambda = grad(i) - nu;
                if (lambda < most_negative) {
                    most_negative = lambda;
                    release = static_cast<int>(i);
                }
            }
            if (release < 0) {
                converged = true;
                break;
            }
            free[release] = true;
            continue;
        }

        // Step toward the EQP solution until the first support weight hits zero.
        double step = 1.0;
        int blocking = -1;
        for (size_t a = 0; a < support.size(); ++a) {
            const int i = support[a];
            const double p = eqp.theta_free(a) - theta(i);
            if (p < 0.0) {
                const double t = theta(i) / (-p);
                if (t < step) {
                    step = t;
                    blocking = i;
                }
            }
        }
        for (size_t a = 0; a < support.size(); ++a) {
            const int i = support[a];
            theta(i) += step * (eqp.theta_free(a) - theta(i));
        }
        if (blocking >= 0) {
            theta(blocking) = 0.0;
            free[blocking] = false;
        }
    }

    if (!converged) {
        throw Error(ErrorCode::NonConvex,
                    "active-set iteration did not converge at phi = " + std::to_string(phi));
    }

    theta = theta.cwiseMax(0.0);
    theta /= theta.sum();
    out.theta = theta;
    out.value = qp_objective(model, phi, theta);

    const Eigen::VectorXd grad = -mu + q * theta;
    double resid = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (theta(i) > 0.0) {
            out.active_set.push_back(static_cast<int>(i));
            resid = std::max(resid, std::abs(grad(i) - nu));
        }
    }
    out.kkt_residual = resid;
    return out;
}

}  // namespace riccati
