#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace actp {

// Probability vector over hidden states.
using Belief = std::vector<double>;

// Sorted, duplicate-free set of selected sensor indices (0-based).
using SensorSet = std::vector<int>;

// A joint observation: one symbol index per sensor, kNullSymbol where the
// sensor was not selected.
inline constexpr int kNullSymbol = -1;
using JointObservation = std::vector<int>;

struct AlphaVector {
    std::vector<double> values;             // one entry per state
    SensorSet normal_action;                // sensors annotated on this vector
    std::optional<int> prediction_action;   // column index, when reward is IR

    double dot(const Belief& b) const;
};

// Checks entries >= -tol and |sum-1| <= tol.
bool is_distribution(const std::vector<double>& v, double tol = 1e-9);

// Canonicalizes (sorts, dedups) and validates indices against num_sensors.
SensorSet make_sensor_set(std::vector<int> indices, int num_sensors);

// True when z has a non-null symbol exactly on the sensors in `selected`.
bool observation_matches_action(const JointObservation& z, const SensorSet& selected);

}  // namespace actp
