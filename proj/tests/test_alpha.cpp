#include <gtest/gtest.h>

#include <cmath>

#include "riccati/alpha.hpp"
#include "riccati/alpha_table.hpp"
#include "riccati/errors.hpp"
#include "riccati/market_model.hpp"

using namespace riccati;

namespace {

MarketModel two_assets(double eps, double rate) {
    Eigen::VectorXd mu(2);
    mu << 0.1, 0.2;
    return make_market(mu, Eigen::MatrixXd::Identity(2, 2), eps, rate);
}

}  // namespace

TEST(Alpha, NoInflowEqualsTable) {
    const MarketModel m = two_assets(0.0, 0.0);
    const AlphaTable t = build_alpha_table(m, 0.0, 4.0, 0.5);
    for (double x : {-3.0, 0.0, 2.5}) {
        const AlphaEval e = eval_alpha(t, x, 0.3, 1.7, m);
        EXPECT_DOUBLE_EQ(e.alpha, t.eval(1.7).alpha);
        EXPECT_DOUBLE_EQ(e.alpha_x, 0.0);
        EXPECT_DOUBLE_EQ(e.alpha_phi, t.eval(1.7).alpha_phi);
    }
}

TEST(Alpha, UnitInflowAtOriginShiftsByOne) {
    const MarketModel m = two_assets(1.0, 0.0);
    const AlphaTable t = build_alpha_table(m, 0.0, 4.0, 0.5);
    const TableAlpha a(t, m);
    const AlphaEval e = a.eval(0.0, 0.0, 1.0);
    EXPECT_NEAR(e.alpha, t.alpha_vals()[2] - 1.0, 1e-15);
    EXPECT_NEAR(e.alpha_x, 1.0, 1e-15);
}

TEST(Alpha, InflowAndRateTerms) {
    const MarketModel m = two_assets(0.5, 0.03);
    const AlphaTable t = build_alpha_table(m, 0.0, 4.0, 0.5);
    const AlphaEval e = eval_alpha(t, -1.0, 0.0, 2.0, m);
    EXPECT_NEAR(e.alpha, t.alpha_vals()[4] - 0.5 * std::exp(1.0) - 0.03, 1e-14);
    EXPECT_NEAR(e.alpha_x, 0.5 * std::exp(1.0), 1e-14);
}

TEST(Alpha, ClosedFormBenchmarkValues) {
    const ClosedAlpha a0 = eval_alpha_closed(0.0);
    EXPECT_DOUBLE_EQ(a0.alpha, -0.5);
    EXPECT_DOUBLE_EQ(a0.alpha_phi, 1.25);
    const ClosedAlpha am = eval_alpha_closed(-1.0);
    EXPECT_DOUBLE_EQ(am.alpha, -2.0);
    EXPECT_DOUBLE_EQ(am.alpha_phi, 2.0);
    EXPECT_NEAR(eval_alpha_closed(1.0).alpha, 2.0 / 3.0, 1e-15);
    // second derivative -2/(phi+2)^3
    EXPECT_NEAR(eval_alpha_closed(0.0).alpha_phiphi, -0.25, 1e-15);
}

TEST(Alpha, ClosedFormRejectsPole) {
    EXPECT_THROW(eval_alpha_closed(-2.0), Error);
    EXPECT_THROW(eval_alpha_closed(-3.0), Error);
    EXPECT_NO_THROW(eval_alpha_closed(-1.99));
}

TEST(Alpha, BenchmarkAlphaWrapper) {
    const BenchmarkAlpha b;
    const AlphaEval e = b.eval(3.0, 0.1, 1.0);
    EXPECT_NEAR(e.alpha, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(e.alpha_phi, 1.0 + 1.0 / 9.0, 1e-15);
    EXPECT_DOUBLE_EQ(e.alpha_x, 0.0);
}
