#include "riccati/scenario.hpp"

#include <istream>
#include <ostream>

#include "riccati/csv.hpp"
#include "riccati/errors.hpp"

namespace riccati {

const std::vector<ScenarioConfig::Entry>& ScenarioConfig::defaults() {
    static const std::vector<Entry> table = {
        {"assets.mu", "", "comma-separated expected log-returns per year"},
        {"assets.sigma", "", "covariance, rows separated by ';', entries by ','"},
        {"assets.returns_csv", "", "estimate mu and sigma from this CSV instead"},
        {"assets.input_kind", "log_returns", "log_returns | prices"},
        {"assets.period_per_year", "252", "annualization factor for the CSV"},
        {"assets.shrinkage", "0", "covariance shrinkage towards its diagonal, in [0,1]"},
        {"model.epsilon", "0", "inflow rate epsilon"},
        {"model.rate", "0", "risk-free rate r"},
        {"utility.terminal", "cara", "cara | arctan"},
        {"utility.a", "9", "CARA risk aversion"},
        {"utility.kappa", "0", "intertemporal weight kappa"},
        {"utility.d", "0", "intertemporal risk aversion d"},
        {"utility.rho", "0", "intertemporal discount rho"},
        {"grid.x_left", "-4", "left end of the log-wealth domain"},
        {"grid.x_right", "8", "right end of the log-wealth domain"},
        {"grid.h", "0.01", "spatial step"},
        {"grid.k", "0.00005", "time step"},
        {"grid.T", "1", "investment horizon"},
        {"grid.x_star", "-2.01", "anchor for b(t) (nearest node is used)"},
        {"alpha.mode", "table", "table | exact (exact requires one asset)"},
        {"alpha.phi_lo", "-1", "lower end of the alpha table"},
        {"alpha.phi_hi", "15", "upper end of the alpha table"},
        {"alpha.h_phi", "0.05", "alpha table step"},
        {"solver.bc", "neumann", "neumann | dirichlet (terminal values held at both ends)"},
        {"solver.b_mode", "implicit", "implicit | explicit update of b"},
        {"solver.flux", "explicit", "explicit | linearized treatment of the advective flux"},
        {"solver.bound_margin", "0.1", "slack for the a-priori phi band check"},
        {"output.dir", "out", "run directory"},
        {"output.taus", "0,0.25,0.5,0.75,1", "snapshot times tau"},
        {"portfolio.d_values", "0,8,11", "intertemporal d values swept by 'portfolio'"},
        {"benchmark.h_ladder", "0.05,0.025,0.0125", "spatial steps of the convergence study"},
        {"benchmark.k_factor", "1", "k = k_factor h^2"},
        {"benchmark.speed", "5", "wave speed v"},
        {"benchmark.T", "1", "benchmark horizon"},
        {"benchmark.x_left", "-20", "benchmark domain left end"},
        {"benchmark.x_right", "20", "benchmark domain right end"},
        {"benchmark.x_star", "-19.5", "benchmark anchor"},
        {"benchmark.eoc_min", "1.80", "lowest acceptable EOC"},
        {"benchmark.eoc_max", "2.05", "highest acceptable EOC"},
        {"crosscheck.theta_source", "from-alpha-table", "from-alpha-table | per-node-qp"},
        {"crosscheck.max_policy_sweeps", "1", "policy sweeps per time layer"},
        {"crosscheck.policy_tol", "1e-10", "policy change that ends the sweeps"},
        {"crosscheck.tolerance", "0.01", "max relative V discrepancy on the central half"},
    };
    return table;
}

ScenarioConfig::ScenarioConfig() {
    for (const auto& e : defaults()) values_[e.key] = e.value;
}

void ScenarioConfig::set(const std::string& key, const std::string& value) {
    const auto it = values_.find(key);
    if (it == values_.end()) throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
    it->second = value;
}

void ScenarioConfig::apply(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw Error(ErrorCode::InvalidConfig,
                    "expected key=value, got '" + std::string(assignment) + "'");
    }
    set(csv::trim(assignment.substr(0, eq)), csv::trim(assignment.substr(eq + 1)));
}

ScenarioConfig ScenarioConfig::from_stream(std::istream& in, const std::string& origin) {
    ScenarioConfig cfg;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = csv::trim(line);
        if (t.empty() || t.front() == '#') continue;
        try {
            cfg.apply(t);
        } catch (const Error& e) {
            throw Error(e.code(), origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
    auto in = csv::open_in(path);
    return from_stream(in, path);
}

const std::string& ScenarioConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
    return it->second;
}

double ScenarioConfig::get_double(const std::string& key) const {
    return csv::parse_double(get(key), key);
}

int ScenarioConfig::get_int(const std::string& key) const {
    const double v = get_double(key);
    if (v != static_cast<double>(static_cast<int>(v))) {
        throw Error(ErrorCode::InvalidConfig, key + " must be an integer");
    }
    return static_cast<int>(v);
}

bool ScenarioConfig::get_bool(const std::string& key) const {
    const std::string& v = get(key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw Error(ErrorCode::InvalidConfig, key + " must be true or false");
}

std::vector<double> ScenarioConfig::get_list(const std::string& key) const {
    std::vector<double> out;
    const std::string& v = get(key);
    if (csv::trim(v).empty()) return out;
    for (const auto& part : csv::split(v)) out.push_back(csv::parse_double(csv::trim(part), key));
    return out;
}

void write_manifest(const ScenarioConfig& config, std::ostream& out) {
    for (const auto& [key, value] : config.values()) out << key << '=' << value << '\n';
}

}  // namespace riccati
