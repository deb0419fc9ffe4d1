#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "riccati/alpha.hpp"
#include "riccati/alpha_table.hpp"
#include "riccati/errors.hpp"
#include "riccati/market_model.hpp"
#include "riccati/reconstruction.hpp"
#include "riccati/scheme.hpp"

using namespace riccati;

namespace {

// Single asset Merton case with exact affine alpha.
struct MertonRun {
    double a = 2.0, mu = 0.1, s2 = 0.04;
    AffineAlpha alpha{-mu + 0.5 * s2, 0.5 * s2};
    CaraUtility u{a};
    SolverGrid grid = SolverGrid::from_steps(-1, 2, 0.01, 1, 1e-3, 0.5);
    SolutionBundle bundle;

    explicit MertonRun(std::vector<double> taus = {0.5}) {
        EvolveOptions o;
        o.record_taus = std::move(taus);
        bundle = evolve(grid, alpha, u, ZeroIntertemporal{}, BoundaryCondition::neumann(), o);
        reconstruct_a(bundle, alpha, u, ZeroIntertemporal{});
        reconstruct_V(bundle);
        reconstruct_psi(bundle);
    }
    double alpha_at_a() const { return -mu + 0.5 * (a + 1) * s2; }
};

SolutionBundle manual_bundle(const SolverGrid& g, double phi, double log_b) {
    SolutionBundle b;
    b.grid = g;
    b.phi_star_path.assign(g.m_steps + 1, phi);
    b.log_b_path.assign(g.m_steps + 1, log_b);
    Snapshot s;
    s.layer = g.m_steps;
    s.tau = g.horizon;
    s.phi.assign(g.nodes(), phi);
    s.cumulative = cumulative_trapezoid(s.phi, g.h());
    b.snapshots.push_back(s);
    return b;
}

}  // namespace

TEST(ReconstructA, ConstantWithoutDrivers) {
    // alpha(a) = 0 keeps gamma at zero along the constant solution
    const double a = 3.0;
    const AffineAlpha alpha(-0.1 * a, 0.1);
    const CaraUtility u(a);
    const auto g = SolverGrid::from_steps(-1, 1, 0.05, 0.5, 0.01, 0.2);
    SolutionBundle b = evolve(g, alpha, u, ZeroIntertemporal{}, BoundaryCondition::neumann());
    const auto path = reconstruct_a(b, alpha, u, ZeroIntertemporal{});
    ASSERT_EQ(path.size(), g.m_steps + 1);
    for (double v : path) EXPECT_DOUBLE_EQ(v, u.value(g.x_star()));
}

TEST(ReconstructA, LinearInTauForConstantGammaAndB) {
    const auto g = SolverGrid::from_steps(-1, 1, 0.1, 1.0, 0.01, 0.0);
    const double gam = 0.3, B = 2.0;
    SolutionBundle b = manual_bundle(g, 1.0, std::log(B));
    const CaraUtility u(1.0);
    const auto path = reconstruct_a(b, AffineAlpha(gam, 0.0), u, ZeroIntertemporal{});
    for (size_t j = 0; j < path.size(); ++j) {
        EXPECT_NEAR(path[j], u.value(g.x_star()) - gam * B * g.tau(j), 1e-13);
    }
}

TEST(ReconstructA, IntertemporalSourceAddsIntegral) {
    const auto g = SolverGrid::from_steps(-1, 1, 0.1, 1.0, 1e-4, 0.0);
    SolutionBundle b = manual_bundle(g, 1.0, 0.0);
    const ExponentialIntertemporal c(1.0, 1.0, 0.5, 1.0);
    const CaraUtility u(1.0);
    const auto path = reconstruct_a(b, AffineAlpha(0.0, 0.0), u, c);
    // int_0^1 c(0, T - tau) dtau = -int_0^1 e^{-0.5 tau} dtau
    const double integral = -(1.0 - std::exp(-0.5)) / 0.5;
    EXPECT_NEAR(path.back(), u.value(0.0) + integral, 1e-4);
}

TEST(ReconstructV, AnchorValueIsA) {
    const MertonRun r;
    const auto& V = *r.bundle.V_field;
    for (size_t s = 0; s < r.bundle.snapshots.size(); ++s) {
        EXPECT_EQ(V(static_cast<Eigen::Index>(r.grid.i_star), static_cast<Eigen::Index>(s)),
                  r.bundle.a_path[r.bundle.snapshots[s].layer]);
    }
}

TEST(ReconstructV, MatchesClosedFormIntegralForConstantPhi) {
    const MertonRun r;
    const auto& V = *r.bundle.V_field;
    const double h = r.grid.h();
    for (size_t s = 0; s < r.bundle.snapshots.size(); ++s) {
        const auto layer = r.bundle.snapshots[s].layer;
        const double a_t = r.bundle.a_path[layer];
        const double b_t = std::exp(r.bundle.log_b_path[layer]);
        for (size_t i = 0; i < r.grid.nodes(); ++i) {
            const double dx = r.grid.x(i) - r.grid.x_star();
            const double closed = a_t + b_t * (1.0 - std::exp(-r.a * dx)) / r.a;
            // trapezoid error: b |int| (a h)^2 / 12
            const double tol = std::abs(b_t * (1.0 - std::exp(-r.a * dx)) / r.a) * r.a * r.a * h * h / 12.0 * 1.01 + 1e-14;
            EXPECT_NEAR(V(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)), closed, tol);
        }
    }
}

TEST(ReconstructV, MertonValueFunction) {
    // V(x, tau) = -exp(-a x + a alpha(a) tau); Euler in tau and trapezoid in x
    const MertonRun r;
    const auto& V = *r.bundle.V_field;
    const auto last = static_cast<Eigen::Index>(r.bundle.snapshots.size() - 1);
    for (size_t i = 0; i < r.grid.nodes(); i += 10) {
        const double x = r.grid.x(i);
        const double exact = -std::exp(-r.a * x + r.a * r.alpha_at_a() * 1.0);
        EXPECT_NEAR(V(static_cast<Eigen::Index>(i), last) / exact, 1.0, 2e-3) << x;
    }
}

TEST(ReconstructV, TerminalTimeReproducesUtility) {
    const MertonRun r;
    const auto& V = *r.bundle.V_field;
    const double tol = 5 * r.grid.h() * r.grid.h();
    for (size_t i = 0; i < r.grid.nodes(); ++i) {
        EXPECT_NEAR(V(static_cast<Eigen::Index>(i), 0), r.u.value(r.grid.x(i)), tol);
    }
}

TEST(ReconstructV, NonFiniteFieldIsRejected) {
    const auto g = SolverGrid::from_steps(-1, 1, 0.1, 1.0, 0.5, 0.0);
    SolutionBundle b = manual_bundle(g, 1.0, 800.0);
    reconstruct_a(b, AffineAlpha(0.0, 0.0), CaraUtility(1.0), ZeroIntertemporal{});
    try {
        reconstruct_V(b);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MonotonicityViolation);
    }
}

TEST(ReconstructV, RequiresAPath) {
    const auto g = SolverGrid::from_steps(-1, 1, 0.1, 1.0, 0.5, 0.0);
    SolutionBundle b = manual_bundle(g, 1.0, 0.0);
    EXPECT_THROW(reconstruct_V(b), Error);
}

TEST(ReconstructPsi, AnchorAndInitialValues) {
    const MertonRun r;
    const auto& psi = *r.bundle.psi_field;
    for (size_t s = 0; s < r.bundle.snapshots.size(); ++s) {
        const double b = std::exp(r.bundle.log_b_path[r.bundle.snapshots[s].layer]);
        EXPECT_NEAR(psi(static_cast<Eigen::Index>(r.grid.i_star), static_cast<Eigen::Index>(s)) * b, 1.0, 1e-14);
    }
    // tau = 0: psi = 1/u'(x) = e^{a x}/a, exact for constant phi
    for (size_t i = 0; i < r.grid.nodes(); ++i) {
        EXPECT_NEAR(psi(static_cast<Eigen::Index>(i), 0) * r.u.d1(r.grid.x(i)), 1.0, 1e-12);
    }
}

TEST(ReconstructPsi, InverseOfVSlope) {
    const MertonRun r;
    const auto& V = *r.bundle.V_field;
    const auto& psi = *r.bundle.psi_field;
    const double h = r.grid.h();
    for (Eigen::Index s = 0; s < V.cols(); ++s) {
        for (Eigen::Index i = 1; i + 1 < V.rows(); ++i) {
            const double dv = (V(i + 1, s) - V(i - 1, s)) / (2 * h);
            EXPECT_NEAR(psi(i, s) * dv, 1.0, 0.02);
        }
    }
}

TEST(ExtractWeights, SingleAssetIsFullyInvested) {
    const MarketModel m = make_market(Eigen::VectorXd::Constant(1, 0.1), Eigen::MatrixXd::Constant(1, 1, 0.04));
    const AlphaTable t = build_alpha_table(m, -1, 15, 0.05);
    MertonRun r;
    const auto w = extract_weights(r.bundle, t);
    ASSERT_EQ(w.size(), r.bundle.snapshots.size());
    for (const auto& m2 : w) {
        ASSERT_EQ(m2.cols(), 1);
        EXPECT_EQ(m2.minCoeff(), 1.0);
        EXPECT_EQ(m2.maxCoeff(), 1.0);
    }
}

TEST(ExtractWeights, TwoAssetKktPoint) {
    Eigen::VectorXd mu(2);
    mu << 0.1, 0.2;
    const AlphaTable t = build_alpha_table(make_market(mu, Eigen::MatrixXd::Identity(2, 2)), -1, 15, 0.05);
    const auto g = SolverGrid::from_steps(-1, 1, 0.1, 1.0, 0.5, 0.0);
    SolutionBundle b = manual_bundle(g, 1.0, 0.0);
    const auto w = extract_weights(b, t);
    for (Eigen::Index i = 0; i < w[0].rows(); ++i) {
        EXPECT_NEAR(w[0](i, 0), 0.475, 1e-12);
        EXPECT_NEAR(w[0](i, 1), 0.525, 1e-12);
    }
}

TEST(Export, CsvHeadersAndRows) {
    MertonRun r;
    std::ostringstream v, th;
    write_field_csv(r.bundle, *r.bundle.V_field, "V", v);
    EXPECT_EQ(v.str().substr(0, 9), "x,tau,V\n-");
    const MarketModel m = make_market(Eigen::VectorXd::Constant(1, 0.1), Eigen::MatrixXd::Constant(1, 1, 0.04));
    const AlphaTable t = build_alpha_table(m, -1, 15, 0.05);
    write_weights_csv(r.bundle, extract_weights(r.bundle, t), th);
    std::istringstream in(th.str());
    std::string line;
    size_t rows = 0;
    std::getline(in, line);
    EXPECT_EQ(line, "x,tau,theta_1");
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, r.grid.nodes() * r.bundle.snapshots.size());
}
