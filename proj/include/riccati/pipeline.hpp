#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "riccati/alpha.hpp"
#include "riccati/alpha_table.hpp"
#include "riccati/grid.hpp"
#include "riccati/hjb_reference.hpp"
#include "riccati/market_model.hpp"
#include "riccati/scenario.hpp"
#include "riccati/scheme.hpp"
#include "riccati/solution.hpp"
#include "riccati/utility.hpp"

namespace riccati {

/// Market from assets.mu/assets.sigma, or estimated from assets.returns_csv.
MarketModel market_from_config(const ScenarioConfig& cfg);
std::unique_ptr<TerminalUtility> terminal_from_config(const ScenarioConfig& cfg);
std::unique_ptr<IntertemporalUtility> intertemporal_from_config(const ScenarioConfig& cfg);
SolverGrid grid_from_config(const ScenarioConfig& cfg);
AlphaTable table_from_config(const ScenarioConfig& cfg, const MarketModel& model);

/// Band [min(-1, min u-risk-aversion), max(max u-risk-aversion, d if kappa > 0)]
/// the solution is expected to stay in.
PhiBounds apriori_bounds(const ScenarioConfig& cfg, const SolverGrid& grid,
                         const TerminalUtility& terminal);

struct PipelineResult {
    MarketModel model;
    std::shared_ptr<const AlphaTable> table;  ///< null in exact mode
    std::shared_ptr<const AlphaFunction> alpha;
    PhiBounds bounds;
    SolutionBundle bundle;
};

/// Table, evolution and reconstruction of a, V, psi and (table mode) theta.
/// `every_layer` snapshots all layers instead of output.taus.
PipelineResult run_pipeline(const ScenarioConfig& cfg, bool every_layer = false);

struct CrosscheckReport {
    double v_rel_max = 0.0;    ///< max |V_hjb - V_ric| / |V_ric|, central half, tau = T
    double phi_abs_max = 0.0;  ///< max |phi(V_hjb) - phi_ric|, central half, tau = T
    std::size_t nonmonotone_flags = 0;
    double tolerance = 0.0;
    bool passed = false;
    std::vector<double> x;
    std::vector<double> v_riccati;
    std::vector<double> v_direct;
};

/// Riccati pipeline and the direct HJB solve on the same scenario. The direct
/// solve takes its boundary values from the reconstructed V.
CrosscheckReport run_crosscheck(const ScenarioConfig& cfg);

}  // namespace riccati
