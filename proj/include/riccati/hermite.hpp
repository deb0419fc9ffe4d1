#pragma once

#include <span>
#include <vector>

namespace riccati {

/// Piecewise-cubic Hermite interpolant on a strictly increasing grid.
///
/// Node slopes are supplied by the caller (tabulated derivatives) or estimated
/// with the Fritsch-Butland harmonic mean (`from_values`). Either way they are
/// passed through the Fritsch-Carlson limiter so that monotone data yields a
/// monotone interpolant.
class MonotoneHermite {
public:
    MonotoneHermite() = default;
    MonotoneHermite(std::vector<double> knots, std::vector<double> values, std::vector<double> slopes);

    static MonotoneHermite from_values(std::vector<double> knots, std::vector<double> values);

    struct Sample {
        double value;
        double derivative;
    };

    /// Evaluates inside [front, back]; callers clamp beforehand.
    Sample eval(double x) const noexcept;

    /// Interval index i with knots[i] <= x <= knots[i+1].
    std::size_t locate(double x) const noexcept;

    std::span<const double> knots() const noexcept { return knots_; }
    std::span<const double> slopes() const noexcept { return slopes_; }
    bool empty() const noexcept { return knots_.empty(); }

private:
    std::vector<double> knots_;
    std::vector<double> values_;
    std::vector<double> slopes_;
    double uniform_step_ = 0.0;  ///< spacing of knots_[1..]; first interval may be shorter
};

}  // namespace riccati
