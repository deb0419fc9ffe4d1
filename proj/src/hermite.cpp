#include "riccati/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riccati {

namespace {

void limit_slopes(std::span<const double> x, std::span<const double> y, std::span<double> d) {
    for (size_t i = 0; i + 1 < x.size(); ++i) {
        const double delta = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        if (delta == 0.0) {
            d[i] = 0.0;
            d[i + 1] = 0.0;
            continue;
        }
        // slopes of the wrong sign would break monotonicity on this interval
        if (d[i] / delta < 0.0) d[i] = 0.0;
        if (d[i + 1] / delta < 0.0) d[i + 1] = 0.0;
        const double a = d[i] / delta;
        const double b = d[i + 1] / delta;
        const double r2 = a * a + b * b;
        if (r2 > 9.0) {
            const double t = 3.0 / std::sqrt(r2);
            d[i] = t * a * delta;
            d[i + 1] = t * b * delta;
        }
    }
}

}  // namespace

MonotoneHermite::MonotoneHermite(std::vector<double> knots, std::vector<double> values,
                                 std::vector<double> slopes)
    : knots_(std::move(knots)), values_(std::move(values)), slopes_(std::move(slopes)) {
    if (knots_.size() < 2 || values_.size() != knots_.size() || slopes_.size() != knots_.size()) {
        throw std::invalid_argument("MonotoneHermite: need >= 2 knots with matching values/slopes");
    }
    for (size_t i = 0; i + 1 < knots_.size(); ++i) {
        if (!(knots_[i + 1] > knots_[i])) {
            throw std::invalid_argument("MonotoneHermite: knots must be strictly increasing");
        }
    }
    limit_slopes(knots_, values_, slopes_);
    if (knots_.size() > 2) {
        uniform_step_ = (knots_.back() - knots_[1]) / static_cast<double>(knots_.size() - 2);
    }
}

MonotoneHermite MonotoneHermite::from_values(std::vector<double> knots, std::vector<double> values) {
    const size_t n = knots.size();
    std::vector<double> d(n, 0.0);
    if (n >= 2) {
        std::vector<double> delta(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            delta[i] = (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]);
        }
        d.front() = delta.front();
        d.back() = delta.back();
        for (size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] > 0.0) {
                d[i] = 2.0 * delta[i - 1] * delta[i] / (delta[i - 1] + delta[i]);
            }
        }
    }
    return MonotoneHermite(std::move(knots), std::move(values), std::move(d));
}

std::size_t MonotoneHermite::locate(double x) const noexcept {
    const size_t last = knots_.size() - 2;
    if (x <= knots_[1]) return 0;
    if (x >= knots_[last]) return last;
    if (uniform_step_ > 0.0) {
        auto i = static_cast<size_t>((x - knots_[1]) / uniform_step_) + 1;
        i = std::min(i, last);
        while (i > 0 && knots_[i] > x) --i;
        while (i < last && knots_[i + 1] < x) ++i;
        return i;
    }
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    return static_cast<size_t>(std::distance(knots_.begin(), it)) - 1;
}

MonotoneHermite::Sample MonotoneHermite::eval(double x) const noexcept {
    const size_t i = locate(x);
    const double h = knots_[i + 1] - knots_[i];
    const double t = (x - knots_[i]) / h;
    const double y0 = values_[i];
    const double y1 = values_[i + 1];
    const double m0 = slopes_[i] * h;
    const double m1 = slopes_[i + 1] * h;

    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    const double value = h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1;

    const double d00 = 6.0 * t2 - 6.0 * t;
    const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
    const double d01 = -d00;
    const double d11 = 3.0 * t2 - 2.0 * t;
    const double derivative = (d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1) / h;
    return {value, derivative};
}

}  // namespace riccati
