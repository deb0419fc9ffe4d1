#include "riccati/benchmark.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <string>

#include "riccati/alpha.hpp"
#include "riccati/csv.hpp"
#include "riccati/errors.hpp"
#include "riccati/scheme.hpp"

namespace riccati {

namespace {

double wave_profile(double xi) { return 2.0 * xi / (1.0 + xi * xi); }

}  // namespace

double TravelingWaveCase::phi_exact(double x, double tau) const {
    return wave_profile(x - speed_v * tau);
}

IntertemporalSample forcing_c(double x, double t, const TravelingWaveCase& wave) {
    const double v = wave.speed_v;
    const double xi = x - v * (wave.horizon - t);
    const double q = 1.0 + xi * xi;
    const double q2 = q * q;
    const double q3 = q2 * q;

    // risk aversion a(xi) = 2 xi / q and its derivatives
    const double a = 2.0 * xi / q;
    const double a1 = 2.0 * (1.0 - xi * xi) / q2;
    const double a2 = 4.0 * xi * (xi * xi - 3.0) / q3;

    // u'(xi) = 1/q and derivatives
    const double p = 1.0 / q;
    const double p1 = -2.0 * xi / q2;
    const double p2 = (6.0 * xi * xi - 2.0) / q3;

    // |a| <= 1 keeps alpha well away from its pole at -2
    const ClosedAlpha al = eval_alpha_closed(a);
    const double g = -v + al.alpha;
    const double g1 = al.alpha_phi * a1;
    const double g2 = al.alpha_phiphi * a1 * a1 + al.alpha_phi * a2;

    return {g * p, g1 * p + g * p1, g2 * p + 2.0 * g1 * p1 + g * p2};
}

std::string TravelingWaveForcing::describe() const {
    return "traveling-wave(v=" + csv::format(wave_.speed_v) + ")";
}

ErrorAccumulator::ErrorAccumulator(const SolverGrid& grid, ExactField exact)
    : grid_(grid), exact_(std::move(exact)) {}

void ErrorAccumulator::add_layer(double tau, std::span<const double> phi) {
    double sum_sq = 0.0;
    double max_abs = 0.0;
    for (size_t i = 0; i < phi.size(); ++i) {
        const double e = phi[i] - exact_(grid_.x(i), tau);
        sum_sq += e * e;
        max_abs = std::max(max_abs, std::abs(e));
    }
    norms_.l2 = std::max(norms_.l2, std::sqrt(grid_.h() * sum_sq));
    norms_.linf = std::max(norms_.linf, max_abs);
    ++layers_;
}

ErrorNorms error_norms(std::span<const std::pair<double, std::vector<double>>> layers,
                       const ExactField& exact, const SolverGrid& grid) {
    ErrorAccumulator acc(grid, exact);
    for (const auto& [tau, phi] : layers) acc.add_layer(tau, phi);
    return acc.norms();
}

std::vector<double> eoc(std::span<const RefinementLevel> levels) {
    std::vector<double> out;
    for (const auto& lv : levels) {
        if (!(lv.error > 0.0)) {
            throw Error(ErrorCode::NonpositiveError,
                        "error " + csv::format(lv.error) + " at h = " + csv::format(lv.h));
        }
    }
    for (size_t j = 0; j + 1 < levels.size(); ++j) {
        if (!(levels[j + 1].h < levels[j].h) || !(levels[j + 1].h > 0.0)) {
            throw Error(ErrorCode::InvalidConfig, "h ladder must be positive and strictly decreasing");
        }
        out.push_back(std::log(levels[j + 1].error / levels[j].error) /
                      std::log(levels[j + 1].h / levels[j].h));
    }
    return out;
}

BenchmarkRun run_traveling_wave(const TravelingWaveCase& wave, double h, double k_factor) {
    const auto start = std::chrono::steady_clock::now();
    const double k = k_factor * h * h;
    const SolverGrid grid = SolverGrid::from_steps(wave.x_left, wave.x_right, h, wave.horizon, k,
                                                   wave.x_star);

    const BenchmarkAlpha alpha;
    const ArctanUtility terminal;
    const TravelingWaveForcing forcing(wave);
    const auto exact = [wave](double x, double tau) { return wave.phi_exact(x, tau); };
    const auto bc = BoundaryCondition::dirichlet(exact);

    ErrorAccumulator acc(grid, exact);
    EvolveOptions opts;
    opts.observer = [&acc](std::size_t, double tau, std::span<const double> phi) {
        acc.add_layer(tau, phi);
    };
    const SolutionBundle bundle = evolve(grid, alpha, terminal, forcing, bc, opts);

    BenchmarkRun run;
    run.h = grid.h();
    run.k = grid.k();
    run.errors = acc.norms();
    const Snapshot& last = bundle.snapshots.back();
    for (size_t i = 0; i < last.phi.size(); ++i) {
        const double x = grid.x(i);
        run.final_x.push_back(x);
        run.final_error.push_back(last.phi[i] - wave.phi_exact(x, last.tau));
    }
    run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

std::vector<BenchmarkTableRow> run_eoc_ladder(const TravelingWaveCase& wave,
                                              std::span<const double> h_ladder, double k_factor,
                                              std::vector<BenchmarkRun>* runs) {
    std::vector<std::future<BenchmarkRun>> jobs;
    jobs.reserve(h_ladder.size());
    for (double h : h_ladder) {
        jobs.push_back(std::async(std::launch::async,
                                  [wave, h, k_factor] { return run_traveling_wave(wave, h, k_factor); }));
    }
    std::vector<BenchmarkRun> results;
    for (auto& job : jobs) results.push_back(job.get());

    std::vector<RefinementLevel> l2, linf;
    for (const auto& r : results) {
        l2.push_back({r.h, r.errors.l2});
        linf.push_back({r.h, r.errors.linf});
    }
    const auto eoc_l2 = eoc(l2);
    const auto eoc_linf = eoc(linf);

    std::vector<BenchmarkTableRow> rows;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (size_t i = 0; i < results.size(); ++i) {
        rows.push_back({results[i].h, results[i].errors.l2, i == 0 ? nan : eoc_l2[i - 1],
                        results[i].errors.linf, i == 0 ? nan : eoc_linf[i - 1]});
    }
    if (runs != nullptr) *runs = std::move(results);
    return rows;
}

void write_benchmark_table(std::span<const BenchmarkTableRow> rows, std::ostream& out) {
    auto cell = [](double v) { return std::isnan(v) ? std::string() : csv::format(v); };
    out << "h,errL2,eocL2,errLinf,eocLinf\n";
    for (const auto& r : rows) {
        out << csv::format(r.h) << ',' << csv::format(r.err_l2) << ',' << cell(r.eoc_l2) << ','
            << csv::format(r.err_linf) << ',' << cell(r.eoc_linf) << '\n';
    }
}

}  // namespace riccati
