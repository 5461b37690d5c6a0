#include "actp/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "actp/kernels.hpp"

namespace actp {

double AlphaVector::dot(const Belief& b) const {
    return kernels::ops().dot(values.data(), b.data(), values.size());
}

bool is_distribution(const std::vector<double>& v, double tol) {
    double total = 0.0;
    for (double x : v) {
        if (!(x >= -tol) || !std::isfinite(x)) return false;
        total += x;
    }
    return std::abs(total - 1.0) <= tol;
}

SensorSet make_sensor_set(std::vector<int> indices, int num_sensors) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    for (int i : indices) {
        if (i < 0 || i >= num_sensors)
            throw std::invalid_argument("sensor index out of range: " + std::to_string(i));
    }
    return indices;
}

bool observation_matches_action(const JointObservation& z, const SensorSet& selected) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const bool chosen = k < selected.size() && selected[k] == static_cast<int>(i);
        if (chosen) {
            if (z[i] == kNullSymbol) return false;
            ++k;
        } else if (z[i] != kNullSymbol) {
            return false;
        }
    }
    return k == selected.size();
}

}  // namespace actp
