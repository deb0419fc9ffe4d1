#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "riccati/errors.hpp"
#include "riccati/pipeline.hpp"
#include "riccati/scenario.hpp"

using namespace riccati;

TEST(Scenario, DefaultsCoverEveryKey) {
    const ScenarioConfig c;
    EXPECT_EQ(c.values().size(), ScenarioConfig::defaults().size());
    EXPECT_EQ(c.get_double("grid.h"), 0.01);
    EXPECT_EQ(c.get_int("crosscheck.max_policy_sweeps"), 1);
    EXPECT_EQ(c.get_list("portfolio.d_values"), (std::vector<double>{0, 8, 11}));
    EXPECT_TRUE(c.get_list("assets.mu").empty());
}

TEST(Scenario, ParsesStreamWithCommentsAndOverrides) {
    std::istringstream in("# comment\n\n  utility.a = 4.5  \nassets.mu=0.1,0.2\n");
    ScenarioConfig c = ScenarioConfig::from_stream(in);
    EXPECT_EQ(c.get_double("utility.a"), 4.5);
    EXPECT_EQ(c.get_list("assets.mu"), (std::vector<double>{0.1, 0.2}));
    c.apply("utility.a=7");
    EXPECT_EQ(c.get_double("utility.a"), 7.0);
}

TEST(Scenario, RejectsUnknownKeysAndBadValues) {
    ScenarioConfig c;
    EXPECT_THROW(c.apply("grid.hh=1"), Error);
    EXPECT_THROW(c.apply("no equals sign"), Error);
    c.set("grid.h", "abc");
    EXPECT_THROW(c.get_double("grid.h"), Error);
    c.set("crosscheck.max_policy_sweeps", "1.5");
    EXPECT_THROW(c.get_int("crosscheck.max_policy_sweeps"), Error);
    std::istringstream in("utility.a=1\nbogus=2\n");
    try {
        ScenarioConfig::from_stream(in, "f.cfg");
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
        EXPECT_NE(std::string(e.what()).find("f.cfg:2"), std::string::npos);
    }
}

TEST(Scenario, ManifestListsEveryValue) {
    ScenarioConfig c;
    c.set("utility.a", "3");
    std::ostringstream out;
    write_manifest(c, out);
    EXPECT_NE(out.str().find("utility.a=3\n"), std::string::npos);
    size_t lines = 0;
    for (char ch : out.str()) lines += ch == '\n';
    EXPECT_EQ(lines, c.values().size());
}

TEST(Pipeline, ShippedConfigsParse) {
    for (const char* name : {"merton", "portfolio", "benchmark", "crosscheck_merton", "crosscheck_synthetic"}) {
        EXPECT_NO_THROW(ScenarioConfig::from_file(oracle::data_path(std::string("configs/") + name + ".cfg"))) << name;
    }
}

TEST(Pipeline, BuildersFromConfig) {
    ScenarioConfig c;
    c.set("assets.mu", "0.08,0.12");
    c.set("assets.sigma", "0.04,0.01;0.01,0.09");
    const MarketModel m = market_from_config(c);
    EXPECT_EQ(m.assets(), 2);
    EXPECT_EQ(m.sigma_cov(1, 0), 0.01);
    c.set("assets.sigma", "0.04,0.01");
    EXPECT_THROW(market_from_config(c), Error);
    c.set("utility.terminal", "log");
    EXPECT_THROW(terminal_from_config(c), Error);
    c.set("utility.terminal", "arctan");
    EXPECT_EQ(terminal_from_config(c)->describe(), "arctan");
    EXPECT_TRUE(intertemporal_from_config(c)->is_zero());
    const SolverGrid g = grid_from_config(c);
    EXPECT_EQ(g.n_interior, 1199u);
    EXPECT_EQ(g.m_steps, 20000u);
    EXPECT_NEAR(g.x_star(), -2.01, 1e-12);
}

TEST(Pipeline, AprioriBand) {
    ScenarioConfig c;
    c.set("utility.kappa", "1");
    c.set("utility.d", "11");
    const SolverGrid g = grid_from_config(c);
    const PhiBounds b = apriori_bounds(c, g, CaraUtility(9));
    EXPECT_EQ(b.lower, -1.0);
    EXPECT_EQ(b.upper, 11.0);
    EXPECT_EQ(b.margin, 0.1);
    c.set("utility.d", "0");
    EXPECT_EQ(apriori_bounds(c, g, CaraUtility(9)).upper, 9.0);
}

TEST(Pipeline, ExactModeMertonRunIsConstant) {
    ScenarioConfig c;
    c.set("assets.mu", "0.1");
    c.set("assets.sigma", "0.04");
    c.set("alpha.mode", "exact");
    c.set("grid.h", "0.05");
    c.set("grid.k", "0.001");
    c.set("grid.T", "0.1");
    const PipelineResult r = run_pipeline(c);
    for (const auto& s : r.bundle.snapshots)
        for (double v : s.phi) EXPECT_NEAR(v, 9.0, 1e-10);
    EXPECT_TRUE(r.bundle.V_field.has_value());
    EXPECT_FALSE(r.table);
    c.set("assets.mu", "0.1,0.2");
    c.set("assets.sigma", "1,0;0,1");
    EXPECT_THROW(run_pipeline(c), Error);
}
