#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "riccati/grid.hpp"
#include "riccati/utility.hpp"

namespace riccati {

/// Exact traveling wave phi(x, tau) = a(x - v tau), a(xi) = 2 xi / (1 + xi^2),
/// for u = arctan and alpha(phi) = phi - 1/(phi + 2).
struct TravelingWaveCase {
    double speed_v = 5.0;
    double horizon = 1.0;
    double x_left = -20.0;
    double x_right = 20.0;
    /// Anchor for b and the non-local integral. Sits in the flat left tail of
    /// the wave and is a mesh node for every h dividing 0.5.
    double x_star = -19.5;

    double phi_exact(double x, double tau) const;
};

/// Forcing c(x, t) = W(x - v (T - t)), W(xi) = (-v + alpha(a(xi))) u'(xi), and
/// its first two x-derivatives, all in closed form.
IntertemporalSample forcing_c(double x, double t, const TravelingWaveCase& wave);

class TravelingWaveForcing final : public IntertemporalUtility {
public:
    explicit TravelingWaveForcing(TravelingWaveCase wave) : wave_(wave) {}
    IntertemporalSample eval(double x, double t) const override { return forcing_c(x, t, wave_); }
    std::string describe() const override;

private:
    TravelingWaveCase wave_;
};

struct ErrorNorms {
    double l2 = 0.0;    ///< max over layers of sqrt(h sum_i e_i^2)
    double linf = 0.0;  ///< max over layers of max_i |e_i|
};

using ExactField = std::function<double(double x, double tau)>;

/// Space-time error of one layer folded into a running maximum.
class ErrorAccumulator {
public:
    ErrorAccumulator(const SolverGrid& grid, ExactField exact);
    void add_layer(double tau, std::span<const double> phi);
    const ErrorNorms& norms() const noexcept { return norms_; }
    std::size_t layers() const noexcept { return layers_; }

private:
    SolverGrid grid_;
    ExactField exact_;
    ErrorNorms norms_;
    std::size_t layers_ = 0;
};

/// Norms over a list of (tau, phi) layers.
ErrorNorms error_norms(std::span<const std::pair<double, std::vector<double>>> layers,
                       const ExactField& exact, const SolverGrid& grid);

struct RefinementLevel {
    double h;
    double error;
};

/// EOC_j = ln(err_{j+1}/err_j) / ln(h_{j+1}/h_j). Throws NonpositiveError for
/// non-positive errors and InvalidConfig unless h strictly decreases.
std::vector<double> eoc(std::span<const RefinementLevel> levels);

struct BenchmarkRun {
    double h = 0.0;
    double k = 0.0;
    ErrorNorms errors;
    std::vector<double> final_x;
    std::vector<double> final_error;  ///< numeric - exact at tau = T
    double wall_seconds = 0.0;
};

/// One traveling-wave solve with k = k_factor h^2 and Dirichlet data from the
/// exact solution. The anchor is the interior node nearest wave.x_star.
BenchmarkRun run_traveling_wave(const TravelingWaveCase& wave, double h, double k_factor = 1.0);

struct BenchmarkTableRow {
    double h;
    double err_l2;
    double eoc_l2;  ///< NaN for the first row
    double err_linf;
    double eoc_linf;
};

/// Runs the ladder (concurrently) and assembles the convergence table.
std::vector<BenchmarkTableRow> run_eoc_ladder(const TravelingWaveCase& wave,
                                              std::span<const double> h_ladder,
                                              double k_factor = 1.0,
                                              std::vector<BenchmarkRun>* runs = nullptr);

/// CSV h,errL2,eocL2,errLinf,eocLinf
void write_benchmark_table(std::span<const BenchmarkTableRow> rows, std::ostream& out);

}  // namespace riccati
