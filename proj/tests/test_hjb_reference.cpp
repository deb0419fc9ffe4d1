#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "riccati/alpha_table.hpp"
#include "riccati/errors.hpp"
#include "riccati/hjb_reference.hpp"
#include "riccati/simplex_qp.hpp"
#include "riccati/utility.hpp"

using namespace riccati;

namespace {

MarketModel one_asset(double mu, double s2, double eps = 0.0) {
    return make_market(Eigen::VectorXd::Constant(1, mu), Eigen::MatrixXd::Constant(1, 1, s2), eps);
}

MarketModel two_assets() {
    Eigen::VectorXd mu(2);
    mu << 0.08, 0.12;
    Eigen::MatrixXd s(2, 2);
    s << 0.04, 0.01, 0.01, 0.09;
    return make_market(mu, s);
}

}  // namespace

TEST(PolicyStep, IdentityWithoutDriftOrVolatility) {
    const auto g = SolverGrid::from_steps(-1, 1, 0.1, 1, 0.01, 0);
    const MarketModel m = one_asset(0.1, 0.04);
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.nodes()), 1);
    std::vector<double> prev;
    for (size_t i = 0; i < g.nodes(); ++i) prev.push_back(std::sin(g.x(i)));
    const auto next = policy_step(prev, zero, g, m, ZeroIntertemporal{}, 0.01, prev.front(), prev.back());
    for (size_t i = 0; i < g.nodes(); ++i) EXPECT_NEAR(next[i], prev[i], 1e-15);
}

TEST(PolicyStep, HeatStepMatchesDenseSolve) {
    // drift mu - s/2 vanishes for mu = s/2
    const double s2 = 0.09, k = 0.02;
    const auto g = SolverGrid::from_steps(0, 1, 0.05, 1, k, 0.5);
    const MarketModel m = one_asset(0.5 * s2, s2);
    const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(g.nodes()), 1);
    std::vector<double> prev;
    for (size_t i = 0; i < g.nodes(); ++i) prev.push_back(g.x(i) * g.x(i) * g.x(i));
    const double vl = 0.1, vr = 1.3;
    const auto next = policy_step(prev, ones, g, m, ZeroIntertemporal{}, k, vl, vr);

    const size_t n = g.n_interior;
    const double r = k * 0.5 * s2 / (g.h() * g.h());
    std::vector<double> lo(n, -r), di(n, 1 + 2 * r), up(n, -r), rhs(n);
    for (size_t i = 0; i < n; ++i) rhs[i] = prev[i + 1];
    rhs.front() += r * vl;
    rhs.back() += r * vr;
    const Eigen::VectorXd ref = oracle::dense_tridiagonal_solve(lo, di, up, rhs);
    EXPECT_EQ(next.front(), vl);
    EXPECT_EQ(next.back(), vr);
    for (size_t i = 0; i < n; ++i) EXPECT_NEAR(next[i + 1], ref(static_cast<Eigen::Index>(i)), 1e-10);
}

TEST(ImprovePolicy, CaraValueGivesConstantPhi) {
    const double a = 4.0;
    const auto g = SolverGrid::from_steps(-1, 1, 0.01, 1, 0.01, 0);
    const CaraUtility u(a);
    std::vector<double> V;
    for (size_t i = 0; i < g.nodes(); ++i) V.push_back(u.value(g.x(i)));
    const MarketModel m = two_assets();
    const AlphaTable t = build_alpha_table(m, -1, 15, 0.05);
    const PolicyUpdate p = improve_policy(V, g, m, ThetaSource::FromAlphaTable, &t, {});
    // centred differences of an exponential: -D2/D1 = (2/h) tanh(a h / 2)
    const double discrete = 2.0 / g.h() * std::tanh(0.5 * a * g.h());
    EXPECT_EQ(p.nonmonotone, 0u);
    for (size_t i = 1; i + 1 < g.nodes(); ++i) {
        EXPECT_NEAR(p.phi_node[i], discrete, 1e-8);
        EXPECT_NEAR(p.phi_node[i], a, a * a * a * g.h() * g.h() / 12 * 1.01);
    }
    for (Eigen::Index i = 1; i < p.theta.rows(); ++i) {
        EXPECT_LT((p.theta.row(i) - p.theta.row(0)).cwiseAbs().maxCoeff(), 1e-9);
    }
    const PolicyUpdate q = improve_policy(V, g, m, ThetaSource::PerNodeQp, nullptr, {});
    const QpSolution direct = solve_parametric_qp(m, discrete);
    EXPECT_LT((q.theta.row(5).transpose() - direct.theta).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((q.theta.row(5) - p.theta.row(5)).cwiseAbs().maxCoeff(), 1e-4);
}

TEST(ImprovePolicy, SingleAssetIsAlwaysFullyInvested) {
    const auto g = SolverGrid::from_steps(-2, 2, 0.1, 1, 0.01, 0);
    const ArctanUtility u;
    std::vector<double> V;
    for (size_t i = 0; i < g.nodes(); ++i) V.push_back(u.value(g.x(i)));
    const PolicyUpdate p = improve_policy(V, g, one_asset(0.1, 0.04), ThetaSource::PerNodeQp, nullptr, {});
    EXPECT_EQ(p.theta.minCoeff(), 1.0);
    EXPECT_EQ(p.theta.maxCoeff(), 1.0);
}

TEST(ImprovePolicy, ArctanRiskAversion) {
    const auto g = SolverGrid::from_steps(-3, 3, 0.01, 1, 0.01, 0);
    const ArctanUtility u;
    std::vector<double> V;
    for (size_t i = 0; i < g.nodes(); ++i) V.push_back(u.value(g.x(i)));
    const auto phi = riccati_transform(V, g.h());
    for (size_t i = 1; i + 1 < g.nodes(); ++i) {
        const double x = g.x(i);
        EXPECT_NEAR(phi[i], 2 * x / (1 + x * x), 1e-4);
    }
    EXPECT_EQ(phi.front(), phi[1]);
}

TEST(ImprovePolicy, FlagsDecreasingValueAndHoldsPolicy) {
    const auto g = SolverGrid::from_steps(0, 1, 0.1, 1, 0.01, 0.5);
    std::vector<double> V;
    for (size_t i = 0; i < g.nodes(); ++i) V.push_back(-g.x(i));
    const MarketModel m = two_assets();
    const PolicyUpdate first = improve_policy(V, g, m, ThetaSource::PerNodeQp, nullptr, {});
    EXPECT_EQ(first.nonmonotone, g.n_interior);
    EXPECT_NEAR(first.theta(3, 0), 0.5, 1e-15);
    Eigen::MatrixXd prev = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.nodes()), 2);
    prev.col(1).setOnes();
    const PolicyUpdate held = improve_policy(V, g, m, ThetaSource::PerNodeQp, nullptr, prev);
    EXPECT_EQ(held.theta(3, 1), 1.0);
    EXPECT_TRUE(std::isnan(held.phi_node[3]));
}

TEST(ImprovePolicy, TableSourceNeedsTable) {
    const auto g = SolverGrid::from_steps(0, 1, 0.1, 1, 0.01, 0.5);
    std::vector<double> V(g.nodes(), 0.0);
    EXPECT_THROW(improve_policy(V, g, two_assets(), ThetaSource::FromAlphaTable, nullptr, {}), Error);
}

TEST(PolicyIterationConfig, Validation) {
    PolicyIterationConfig c;
    c.grid = SolverGrid::from_steps(0, 1, 0.1, 1, 0.01, 0.5);
    EXPECT_NO_THROW(c.validate());
    c.max_policy_sweeps = 0;
    EXPECT_THROW(c.validate(), Error);
}

TEST(SolveHjb, MertonValueFunction) {
    const double a = 3.0;
    const MarketModel m = two_assets();
    const AlphaTable t = build_alpha_table(m, -1, 15, 0.05);
    const double alpha_a = t.eval(a).alpha;
    const auto exact = [&](double x, double tau) { return -std::exp(-a * x + a * alpha_a * tau); };
    PolicyIterationConfig c;
    c.grid = SolverGrid::from_steps(-1, 2, 0.01, 1, 1e-3, 0.5);
    for (auto src : {ThetaSource::FromAlphaTable, ThetaSource::PerNodeQp}) {
        c.theta_source = src;
        const HjbResult r = solve_hjb(c, m, &t, CaraUtility(a), ZeroIntertemporal{}, exact, {0.5});
        ASSERT_EQ(r.snapshots.size(), 3u);
        EXPECT_EQ(r.snapshots[1].layer, 500u);
        EXPECT_EQ(r.nonmonotone_flags, 0u);
        EXPECT_EQ(r.total_sweeps, c.grid.m_steps);
        const auto& V = r.snapshots.back().V;
        for (size_t i = 0; i < c.grid.nodes(); ++i) {
            EXPECT_NEAR(V[i] / exact(c.grid.x(i), 1.0), 1.0, 2e-3);
        }
    }
}

TEST(SolveHjb, ExtraSweepsStopOnceThePolicySettles) {
    const double a = 3.0;
    const MarketModel m = two_assets();
    const AlphaTable t = build_alpha_table(m, -1, 15, 0.05);
    const double alpha_a = t.eval(a).alpha;
    const auto exact = [&](double x, double tau) { return -std::exp(-a * x + a * alpha_a * tau); };
    PolicyIterationConfig c;
    c.grid = SolverGrid::from_steps(-1, 2, 0.02, 0.1, 1e-3, 0.5);
    c.max_policy_sweeps = 5;
    c.policy_tol = 1e-8;
    const HjbResult r = solve_hjb(c, m, &t, CaraUtility(a), ZeroIntertemporal{}, exact);
    EXPECT_GE(r.total_sweeps, c.grid.m_steps);
    EXPECT_LT(r.total_sweeps, 5 * c.grid.m_steps);
}

TEST(SolveHjb, ValueCsv) {
    const auto g = SolverGrid::from_steps(0, 1, 0.5, 1, 0.5, 0.5);
    std::ostringstream out;
    write_value_csv(g, std::vector<double>{1.0, 2.0, 3.0}, out);
    EXPECT_EQ(out.str(), "x,V\n0,1\n0.5,2\n1,3\n");
}
