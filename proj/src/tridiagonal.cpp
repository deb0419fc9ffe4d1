#include "riccati/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "riccati/errors.hpp"

namespace riccati {

double TridiagonalSystem::dominance_margin() const noexcept {
    double margin = std::numeric_limits<double>::infinity();
    const size_t n = diag.size();
    for (size_t i = 0; i < n; ++i) {
        const double lo = i > 0 ? std::abs(lower[i]) : 0.0;
        const double up = i + 1 < n ? std::abs(upper[i]) : 0.0;
        margin = std::min(margin, std::abs(diag[i]) - lo - up);
    }
    return margin;
}

std::vector<double> thomas_solve(std::span<const double> lower, std::span<const double> diag,
                                 std::span<const double> upper, std::span<const double> rhs) {
    const size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n) {
        throw Error(ErrorCode::InvalidConfig, "tridiagonal bands have mismatched lengths");
    }
    std::vector<double> c(n), x(n);
    if (n == 0) return x;

    constexpr double tiny = std::numeric_limits<double>::min();
    double pivot = diag[0];
    if (std::abs(pivot) <= tiny) throw Error(ErrorCode::ZeroPivot, "pivot 0 vanished");
    c[0] = n > 1 ? upper[0] / pivot : 0.0;
    x[0] = rhs[0] / pivot;
    for (size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i] * c[i - 1];
        if (std::abs(pivot) <= tiny) {
            throw Error(ErrorCode::ZeroPivot, "pivot " + std::to_string(i) + " vanished");
        }
        c[i] = i + 1 < n ? upper[i] / pivot : 0.0;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
    }
    for (size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

}  // namespace riccati
