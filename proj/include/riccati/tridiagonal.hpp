#pragma once

#include <span>
#include <vector>

namespace riccati {

/// Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i];
/// lower[0] and upper[n-1] are ignored.
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;

    explicit TridiagonalSystem(std::size_t n = 0) : lower(n), diag(n), upper(n), rhs(n) {}
    std::size_t size() const noexcept { return diag.size(); }
    /// min_i (|diag_i| - |lower_i| - |upper_i|), ignoring the unused corners
    double dominance_margin() const noexcept;
};

/// Thomas algorithm without pivoting. Throws ZeroPivot on a vanishing pivot.
std::vector<double> thomas_solve(std::span<const double> lower, std::span<const double> diag,
                                 std::span<const double> upper, std::span<const double> rhs);

inline std::vector<double> thomas_solve(const TridiagonalSystem& s) {
    return thomas_solve(s.lower, s.diag, s.upper, s.rhs);
}

}  // namespace riccati
