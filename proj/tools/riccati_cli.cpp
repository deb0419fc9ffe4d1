#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "riccati/benchmark.hpp"
#include "riccati/csv.hpp"
#include "riccati/errors.hpp"
#include "riccati/hjb_reference.hpp"
#include "riccati/log.hpp"
#include "riccati/pipeline.hpp"
#include "riccati/reconstruction.hpp"
#include "riccati/scenario.hpp"

namespace fs = std::filesystem;
using namespace riccati;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitAcceptance = 4;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    bool quiet = false;
};

ScenarioConfig load_config(const CommonArgs& args) {
    ScenarioConfig cfg = args.config_path.empty() ? ScenarioConfig()
                                                  : ScenarioConfig::from_file(args.config_path);
    for (const auto& o : args.overrides) cfg.apply(o);
    if (!args.out_dir.empty()) cfg.set("output.dir", args.out_dir);
    return cfg;
}

fs::path run_dir(const ScenarioConfig& cfg) {
    fs::path dir = cfg.get("output.dir");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
    return dir;
}

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_manifest_file(const ScenarioConfig& cfg, const fs::path& dir, const std::string& command,
                         const std::vector<std::pair<std::string, std::string>>& extra) {
    auto out = csv::open_out((dir / "manifest.txt").string());
    out << "command=" << command << '\n';
    write_manifest(cfg, out);
    for (const auto& [k, v] : extra) out << k << '=' << v << '\n';
}

std::vector<std::pair<std::string, std::string>> diagnostics_entries(const SolutionBundle& b) {
    const auto& d = b.diagnostics;
    return {{"result.nodes", std::to_string(b.grid.nodes())},
            {"result.steps", std::to_string(b.grid.m_steps)},
            {"result.i_star", std::to_string(b.grid.i_star)},
            {"result.x_star", csv::format(b.grid.x_star())},
            {"result.clamp_count", std::to_string(d.clamp_count)},
            {"result.bounds_violations", std::to_string(d.bounds_violations)},
            {"result.phi_min_seen", csv::format(d.phi_min_seen)},
            {"result.phi_max_seen", csv::format(d.phi_max_seen)},
            {"result.min_dominance_margin", csv::format(d.min_dominance_margin)},
            {"result.wall_seconds", csv::format(d.wall_seconds)}};
}

void export_solution(const PipelineResult& r, const fs::path& dir) {
    const SolutionBundle& b = r.bundle;
    for (const auto& s : b.snapshots) {
        auto out = csv::open_out((dir / ("phi_tau_" + short_num(s.tau) + ".csv")).string());
        out << "x,phi\n";
        for (size_t i = 0; i < s.phi.size(); ++i) {
            out << csv::format(b.grid.x(i)) << ',' << csv::format(s.phi[i]) << '\n';
        }
    }
    {
        auto out = csv::open_out((dir / "paths.csv").string());
        out << "tau,phi_star,b,a\n";
        for (size_t j = 0; j < b.log_b_path.size(); ++j) {
            out << csv::format(b.grid.tau(j)) << ',' << csv::format(b.phi_star_path[j]) << ','
                << csv::format(b.b(j)) << ',' << csv::format(b.a_path[j]) << '\n';
        }
    }
    {
        auto out = csv::open_out((dir / "V.csv").string());
        write_field_csv(b, *b.V_field, "V", out);
    }
    {
        auto out = csv::open_out((dir / "psi.csv").string());
        write_field_csv(b, *b.psi_field, "psi", out);
    }
    if (!b.theta_field.empty()) {
        auto out = csv::open_out((dir / "theta.csv").string());
        write_weights_csv(b, b.theta_field, out);
    }
}

int cmd_alpha_table(const CommonArgs& args) {
    const ScenarioConfig cfg = load_config(args);
    const fs::path dir = run_dir(cfg);
    const MarketModel model = market_from_config(cfg);
    const AlphaTable table = table_from_config(cfg, model);
    write_alpha_table_csv(table, (dir / "alpha_table.csv").string());
    const auto bps = table.breakpoints();
    std::cout << "alpha table: " << table.size() << " nodes on [" << csv::format(table.phi_min_eff())
              << ", " << csv::format(table.phi_max()) << "], " << model.assets() << " assets\n";
    std::cout << "active-set breakpoints:";
    for (double p : bps) std::cout << ' ' << short_num(p);
    std::cout << (bps.empty() ? " none\n" : "\n");
    write_manifest_file(cfg, dir, "alpha-table",
                        {{"result.table_nodes", std::to_string(table.size())},
                         {"result.breakpoints", std::to_string(bps.size())}});
    return kExitOk;
}

int cmd_solve(const CommonArgs& args) {
    const ScenarioConfig cfg = load_config(args);
    const fs::path dir = run_dir(cfg);
    const PipelineResult r = run_pipeline(cfg);
    export_solution(r, dir);
    if (r.table) write_alpha_table_csv(*r.table, (dir / "alpha_table.csv").string());
    write_manifest_file(cfg, dir, "solve", diagnostics_entries(r.bundle));
    const auto& last = r.bundle.snapshots.back().phi;
    const auto [mn, mx] = std::minmax_element(last.begin(), last.end());
    std::cout << "solved " << r.bundle.grid.m_steps << " steps on " << r.bundle.grid.nodes()
              << " nodes; final phi in [" << short_num(*mn) << ", " << short_num(*mx) << "]\n";
    return kExitOk;
}

int cmd_portfolio(const CommonArgs& args) {
    const ScenarioConfig base = load_config(args);
    const fs::path dir = run_dir(base);
    const std::vector<double> ds = base.get_list("portfolio.d_values");
    if (ds.empty()) throw Error(ErrorCode::InvalidConfig, "portfolio.d_values is empty");

    std::vector<ScenarioConfig> cfgs;
    for (double d : ds) {
        ScenarioConfig c = base;
        c.set("utility.d", csv::format(d));
        c.set("output.dir", (dir / ("d_" + short_num(d))).string());
        cfgs.push_back(std::move(c));
    }
    std::vector<std::future<PipelineResult>> jobs;
    for (const auto& c : cfgs) {
        jobs.push_back(std::async(std::launch::async, [&c] { return run_pipeline(c); }));
    }

    auto summary = csv::open_out((dir / "summary.csv").string());
    summary << "d,phi_min_final,phi_max_final,range_final,monotone_all_snapshots,bounds_violations\n";
    for (size_t i = 0; i < jobs.size(); ++i) {
        const PipelineResult r = jobs[i].get();
        const fs::path sub = run_dir(cfgs[i]);
        export_solution(r, sub);
        write_manifest_file(cfgs[i], sub, "portfolio", diagnostics_entries(r.bundle));
        bool monotone = true;
        for (const auto& s : r.bundle.snapshots) {
            for (size_t k = 1; k < s.phi.size(); ++k) monotone = monotone && s.phi[k] >= s.phi[k - 1];
        }
        const auto& last = r.bundle.snapshots.back().phi;
        const auto [mn, mx] = std::minmax_element(last.begin(), last.end());
        summary << csv::format(ds[i]) << ',' << csv::format(*mn) << ',' << csv::format(*mx) << ','
                << csv::format(*mx - *mn) << ',' << (monotone ? 1 : 0) << ','
                << r.bundle.diagnostics.bounds_violations << '\n';
        std::cout << "d=" << short_num(ds[i]) << ": final phi range " << short_num(*mx - *mn)
                  << (monotone ? ", monotone in x" : "") << '\n';
    }
    write_manifest_file(base, dir, "portfolio", {});
    return kExitOk;
}

int cmd_benchmark(const CommonArgs& args) {
    const ScenarioConfig cfg = load_config(args);
    const fs::path dir = run_dir(cfg);
    TravelingWaveCase wave;
    wave.speed_v = cfg.get_double("benchmark.speed");
    wave.horizon = cfg.get_double("benchmark.T");
    wave.x_left = cfg.get_double("benchmark.x_left");
    wave.x_right = cfg.get_double("benchmark.x_right");
    wave.x_star = cfg.get_double("benchmark.x_star");
    const std::vector<double> ladder = cfg.get_list("benchmark.h_ladder");
    if (ladder.empty()) throw Error(ErrorCode::InvalidConfig, "benchmark.h_ladder is empty");
    const double eoc_min = cfg.get_double("benchmark.eoc_min");
    const double eoc_max = cfg.get_double("benchmark.eoc_max");

    std::vector<BenchmarkRun> runs;
    const auto rows = run_eoc_ladder(wave, ladder, cfg.get_double("benchmark.k_factor"), &runs);
    {
        auto out = csv::open_out((dir / "benchmark_table.csv").string());
        write_benchmark_table(rows, out);
    }
    for (const auto& r : runs) {
        auto out = csv::open_out((dir / ("error_profile_h" + short_num(r.h) + ".csv")).string());
        out << "x,error\n";
        for (size_t i = 0; i < r.final_x.size(); ++i) {
            out << csv::format(r.final_x[i]) << ',' << csv::format(r.final_error[i]) << '\n';
        }
    }
    write_benchmark_table(rows, std::cout);
    if (rows.size() < 2) log::warn("single-h ladder: no EOC pairs");

    bool ok = true;
    for (size_t i = 1; i < rows.size(); ++i) {
        for (double e : {rows[i].eoc_l2, rows[i].eoc_linf}) ok = ok && e >= eoc_min && e <= eoc_max;
    }
    write_manifest_file(cfg, dir, "benchmark", {{"result.eoc_within_bounds", ok ? "1" : "0"}});
    if (!ok) {
        std::cerr << "EOC outside [" << short_num(eoc_min) << ", " << short_num(eoc_max) << "]\n";
        return kExitAcceptance;
    }
    return kExitOk;
}

int cmd_crosscheck(const CommonArgs& args) {
    const ScenarioConfig cfg = load_config(args);
    const fs::path dir = run_dir(cfg);
    const CrosscheckReport rep = run_crosscheck(cfg);
    {
        auto out = csv::open_out((dir / "crosscheck.csv").string());
        out << "x,V_riccati,V_direct\n";
        for (size_t i = 0; i < rep.x.size(); ++i) {
            out << csv::format(rep.x[i]) << ',' << csv::format(rep.v_riccati[i]) << ','
                << csv::format(rep.v_direct[i]) << '\n';
        }
    }
    write_manifest_file(cfg, dir, "crosscheck",
                        {{"result.v_rel_max", csv::format(rep.v_rel_max)},
                         {"result.phi_abs_max", csv::format(rep.phi_abs_max)},
                         {"result.nonmonotone_flags", std::to_string(rep.nonmonotone_flags)},
                         {"result.passed", rep.passed ? "1" : "0"}});
    std::cout << "central-half relative V discrepancy " << short_num(rep.v_rel_max)
              << " (tolerance " << short_num(rep.tolerance) << "), max |phi difference| "
              << short_num(rep.phi_abs_max) << '\n';
    return rep.passed ? kExitOk : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riccati-transform solver for HJB portfolio optimization"};
    app.require_subcommand(1, 1);
    CommonArgs args;

    auto add_common = [&args](CLI::App* sub) {
        sub->add_option("-c,--config", args.config_path, "key=value scenario file");
        sub->add_option("-s,--set", args.overrides, "override, key=value (repeatable)");
        sub->add_option("-o,--out", args.out_dir, "run directory (overrides output.dir)");
        sub->add_flag("-q,--quiet", args.quiet, "suppress warnings");
    };
    struct Command {
        const char* name;
        const char* help;
        int (*run)(const CommonArgs&);
    };
    const Command commands[] = {
        {"alpha-table", "build and write the alpha table", cmd_alpha_table},
        {"solve", "evolve phi and reconstruct V, psi and weights", cmd_solve},
        {"benchmark", "traveling-wave convergence study", cmd_benchmark},
        {"portfolio", "solve for every portfolio.d_values entry in parallel", cmd_portfolio},
        {"crosscheck", "compare against the direct HJB policy-iteration solve", cmd_crosscheck},
    };
    std::vector<std::pair<CLI::App*, int (*)(const CommonArgs&)>> subs;
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_common(sub);
        subs.emplace_back(sub, c.run);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }
    log::set_level(args.quiet ? log::Level::Quiet : log::Level::Warn);

    try {
        for (const auto& [sub, run] : subs) {
            if (sub->parsed()) return run(args);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.category() == ErrorCategory::Config ? kExitConfig : kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitConfig;
}
