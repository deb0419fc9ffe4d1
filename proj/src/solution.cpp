#include "riccati/solution.hpp"

#include <cmath>

#include "riccati/errors.hpp"

namespace riccati {

double SolutionBundle::b(std::size_t layer) const {
    if (layer >= log_b_path.size()) {
        throw Error(ErrorCode::InvalidConfig, "layer " + std::to_string(layer) + " not recorded");
    }
    return std::exp(log_b_path[layer]);
}

std::vector<double> SolutionBundle::b_path() const {
    std::vector<double> out(log_b_path.size());
    for (size_t j = 0; j < out.size(); ++j) out[j] = std::exp(log_b_path[j]);
    return out;
}

const Snapshot* SolutionBundle::snapshot_at_layer(std::size_t layer) const noexcept {
    for (const auto& s : snapshots)
        if (s.layer == layer) return &s;
    return nullptr;
}

}  // namespace riccati
