#include "riccati/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "riccati/csv.hpp"
#include "riccati/errors.hpp"
#include "riccati/market_io.hpp"
#include "riccati/reconstruction.hpp"

namespace riccati {

namespace {

Eigen::MatrixXd parse_matrix(const std::string& text, const std::string& key) {
    std::vector<std::vector<double>> rows;
    for (const auto& row : csv::split(text, ';')) {
        std::vector<double> r;
        for (const auto& cell : csv::split(row)) r.push_back(csv::parse_double(csv::trim(cell), key));
        rows.push_back(std::move(r));
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(rows[static_cast<size_t>(i)].size()) != n) {
            throw Error(ErrorCode::InvalidConfig, key + " must be a square matrix");
        }
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
}

}  // namespace

MarketModel market_from_config(const ScenarioConfig& cfg) {
    const double eps = cfg.get_double("model.epsilon");
    const double rate = cfg.get_double("model.rate");
    const double shrink = cfg.get_double("assets.shrinkage");
    const std::string& csv_path = cfg.get("assets.returns_csv");
    if (!csv_path.empty()) {
        const std::string& kind_text = cfg.get("assets.input_kind");
        InputKind kind;
        if (kind_text == "prices") {
            kind = InputKind::Prices;
        } else if (kind_text == "log_returns") {
            kind = InputKind::LogReturns;
        } else {
            throw Error(ErrorCode::InvalidConfig, "assets.input_kind must be prices or log_returns");
        }
        const ReturnsIngest ingest =
            read_returns_csv(csv_path, kind, cfg.get_double("assets.period_per_year"));
        return estimate_moments(ingest.returns, eps, rate, shrink);
    }
    const std::vector<double> mu = cfg.get_list("assets.mu");
    if (mu.empty()) throw Error(ErrorCode::InvalidConfig, "set assets.mu or assets.returns_csv");
    Eigen::MatrixXd sigma = parse_matrix(cfg.get("assets.sigma"), "assets.sigma");
    return make_market(Eigen::Map<const Eigen::VectorXd>(mu.data(), static_cast<Eigen::Index>(mu.size())),
                       shrink_covariance(sigma, shrink), eps, rate);
}

std::unique_ptr<TerminalUtility> terminal_from_config(const ScenarioConfig& cfg) {
    const std::string& kind = cfg.get("utility.terminal");
    if (kind == "cara") return std::make_unique<CaraUtility>(cfg.get_double("utility.a"));
    if (kind == "arctan") return std::make_unique<ArctanUtility>();
    throw Error(ErrorCode::InvalidConfig, "utility.terminal must be cara or arctan");
}

std::unique_ptr<IntertemporalUtility> intertemporal_from_config(const ScenarioConfig& cfg) {
    const double kappa = cfg.get_double("utility.kappa");
    if (kappa == 0.0) return std::make_unique<ZeroIntertemporal>();
    return std::make_unique<ExponentialIntertemporal>(kappa, cfg.get_double("utility.d"),
                                                      cfg.get_double("utility.rho"),
                                                      cfg.get_double("grid.T"));
}

SolverGrid grid_from_config(const ScenarioConfig& cfg) {
    return SolverGrid::from_steps(cfg.get_double("grid.x_left"), cfg.get_double("grid.x_right"),
                                  cfg.get_double("grid.h"), cfg.get_double("grid.T"),
                                  cfg.get_double("grid.k"), cfg.get_double("grid.x_star"));
}

AlphaTable table_from_config(const ScenarioConfig& cfg, const MarketModel& model) {
    return build_alpha_table(model, cfg.get_double("alpha.phi_lo"), cfg.get_double("alpha.phi_hi"),
                             cfg.get_double("alpha.h_phi"));
}

PhiBounds apriori_bounds(const ScenarioConfig& cfg, const SolverGrid& grid,
                         const TerminalUtility& terminal) {
    double lo = -1.0;
    double hi = -1.0;
    for (size_t i = 0; i < grid.nodes(); ++i) {
        const double ra = terminal.risk_aversion(grid.x(i));
        lo = std::min(lo, ra);
        hi = std::max(hi, ra);
    }
    if (cfg.get_double("utility.kappa") > 0.0) hi = std::max(hi, cfg.get_double("utility.d"));
    return {lo, hi, cfg.get_double("solver.bound_margin")};
}

PipelineResult run_pipeline(const ScenarioConfig& cfg, bool every_layer) {
    PipelineResult out;
    out.model = market_from_config(cfg);
    const SolverGrid grid = grid_from_config(cfg);
    const auto terminal = terminal_from_config(cfg);
    const auto c_util = intertemporal_from_config(cfg);

    const std::string& mode = cfg.get("alpha.mode");
    if (mode == "table") {
        out.table = std::make_shared<const AlphaTable>(table_from_config(cfg, out.model));
        out.alpha = std::make_shared<const TableAlpha>(*out.table, out.model);
    } else if (mode == "exact") {
        if (out.model.assets() != 1 || out.model.epsilon != 0.0) {
            throw Error(ErrorCode::InvalidConfig, "alpha.mode=exact needs one asset and epsilon = 0");
        }
        const double mu = out.model.mu(0);
        const double s2 = out.model.sigma_cov(0, 0);
        out.alpha = std::make_shared<const AffineAlpha>(-mu + 0.5 * s2 - out.model.rate, 0.5 * s2);
    } else {
        throw Error(ErrorCode::InvalidConfig, "alpha.mode must be table or exact");
    }

    BoundaryCondition bc;
    const std::string& bc_kind = cfg.get("solver.bc");
    if (bc_kind == "neumann") {
        bc = BoundaryCondition::neumann();
    } else if (bc_kind == "dirichlet") {
        const TerminalUtility* u = terminal.get();
        bc = BoundaryCondition::dirichlet([u](double x, double) { return u->risk_aversion(x); });
    } else {
        throw Error(ErrorCode::InvalidConfig, "solver.bc must be neumann or dirichlet");
    }

    EvolveOptions opts;
    const std::string& b_mode = cfg.get("solver.b_mode");
    if (b_mode == "implicit") {
        opts.b_mode = BUpdateMode::Implicit;
    } else if (b_mode == "explicit") {
        opts.b_mode = BUpdateMode::Explicit;
    } else {
        throw Error(ErrorCode::InvalidConfig, "solver.b_mode must be implicit or explicit");
    }
    const std::string& flux = cfg.get("solver.flux");
    if (flux == "explicit") {
        opts.flux = FluxMode::Explicit;
    } else if (flux == "linearized") {
        opts.flux = FluxMode::Linearized;
    } else {
        throw Error(ErrorCode::InvalidConfig, "solver.flux must be explicit or linearized");
    }
    if (every_layer) {
        for (size_t j = 0; j <= grid.m_steps; ++j) opts.record_taus.push_back(grid.tau(j));
    } else {
        opts.record_taus = cfg.get_list("output.taus");
    }
    out.bounds = apriori_bounds(cfg, grid, *terminal);
    opts.bounds = out.bounds;

    out.bundle = evolve(grid, *out.alpha, *terminal, *c_util, bc, opts);
    reconstruct_a(out.bundle, *out.alpha, *terminal, *c_util);
    reconstruct_V(out.bundle);
    reconstruct_psi(out.bundle);
    if (out.table) extract_weights(out.bundle, *out.table);
    return out;
}

CrosscheckReport run_crosscheck(const ScenarioConfig& cfg) {
    const PipelineResult ric = run_pipeline(cfg, true);
    const SolutionBundle& bundle = ric.bundle;
    const SolverGrid& grid = bundle.grid;
    const Eigen::MatrixXd& V = *bundle.V_field;
    const auto last = static_cast<Eigen::Index>(V.cols() - 1);

    PolicyIterationConfig pic;
    pic.grid = grid;
    pic.max_policy_sweeps = cfg.get_int("crosscheck.max_policy_sweeps");
    pic.policy_tol = cfg.get_double("crosscheck.policy_tol");
    const std::string& src = cfg.get("crosscheck.theta_source");
    if (src == "from-alpha-table") {
        pic.theta_source = ThetaSource::FromAlphaTable;
    } else if (src == "per-node-qp") {
        pic.theta_source = ThetaSource::PerNodeQp;
    } else {
        throw Error(ErrorCode::InvalidConfig,
                    "crosscheck.theta_source must be from-alpha-table or per-node-qp");
    }
    if (pic.theta_source == ThetaSource::FromAlphaTable && !ric.table) {
        throw Error(ErrorCode::InvalidConfig, "from-alpha-table needs alpha.mode=table");
    }

    // boundary values mirror the reconstructed V; every layer is a snapshot
    const size_t end = grid.nodes() - 1;
    const ValueBoundary boundary = [&](double x, double tau) {
        const auto col = static_cast<Eigen::Index>(std::llround(tau / grid.k()));
        return x <= grid.x_left ? V(0, col) : V(static_cast<Eigen::Index>(end), col);
    };
    const auto terminal = terminal_from_config(cfg);
    const auto c_util = intertemporal_from_config(cfg);
    const HjbResult hjb =
        solve_hjb(pic, ric.model, ric.table.get(), *terminal, *c_util, boundary);
    const std::vector<double>& vd = hjb.snapshots.back().V;

    CrosscheckReport rep;
    rep.nonmonotone_flags = hjb.nonmonotone_flags;
    rep.tolerance = cfg.get_double("crosscheck.tolerance");
    const std::vector<double> phi_direct = riccati_transform(vd, grid.h());
    const std::vector<double>& phi_ric = bundle.snapshots.back().phi;
    const double quarter = 0.25 * (grid.x_right - grid.x_left);
    for (size_t i = 1; i < end; ++i) {
        const double x = grid.x(i);
        const double vr = V(static_cast<Eigen::Index>(i), last);
        rep.x.push_back(x);
        rep.v_riccati.push_back(vr);
        rep.v_direct.push_back(vd[i]);
        if (x < grid.x_left + quarter || x > grid.x_right - quarter) continue;
        rep.v_rel_max = std::max(rep.v_rel_max, std::abs(vd[i] - vr) / std::abs(vr));
        rep.phi_abs_max = std::max(rep.phi_abs_max, std::abs(phi_direct[i] - phi_ric[i]));
    }
    rep.passed = rep.v_rel_max < rep.tolerance;
    return rep;
}

}  // namespace riccati
