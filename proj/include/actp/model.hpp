#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "actp/types.hpp"

namespace actp {

// Reward given directly on beliefs through a set of vectors; rho(b) is the
// max dot product over the set. `tangent_points` records where entropy
// tangents were taken (empty for sets built from an IR matrix).
struct TangentRewardSet {
    std::vector<AlphaVector> vectors;
    std::vector<Belief> tangent_points;
};

// R(s, a_p): one column per prediction action, row-major |S| x |A_p|.
struct IRRewardMatrix {
    int num_predictions = 0;
    std::vector<double> values;  // values[s * num_predictions + p]

    double at(int s, int p) const { return values[static_cast<std::size_t>(s) * num_predictions + p]; }
    std::vector<double> column(int p) const;
};

// State-based reward for the coverage baseline: R(s, a) is the max of the
// per-sensor entries over the selected sensors (0 for the empty set).
struct StateReward {
    std::vector<double> sensor_values;  // values[s * num_sensors + i]
    int num_sensors = 0;

    double at(int s, const SensorSet& a) const;
    std::vector<double> vector_for(const SensorSet& a, int num_states) const;
};

using Reward = std::variant<TangentRewardSet, IRRewardMatrix, StateReward>;

// One sensor's observation channel: row-stochastic |S| x num_symbols matrix
// over the sensor's non-null domain. When the sensor is not selected it
// deterministically emits the null symbol instead.
struct ObservationChannel {
    int num_symbols = 0;
    std::vector<double> probs;  // probs[s * num_symbols + z]

    double at(int s, int z) const { return probs[static_cast<std::size_t>(s) * num_symbols + z]; }
};

class ActivePerceptionModel {
  public:
    int num_states = 0;
    int num_sensors = 0;
    int budget = 1;  // max sensors selected per step (K)
    double discount = 1.0;
    int horizon = 1;
    Belief initial_belief;
    std::vector<double> transition;  // row-stochastic |S| x |S|, used by the empty action
    // Transition used by non-empty sensor sets. Equal to `transition` except in
    // budget-augmented models, where sensing decrements the budget counter.
    std::vector<double> transition_active;
    std::vector<ObservationChannel> channels;  // one per sensor
    Reward reward;

    const std::vector<double>& transition_for(const SensorSet& a) const {
        return a.empty() ? transition : transition_active;
    }
    double trans(const std::vector<double>& t, int s, int s2) const {
        return t[static_cast<std::size_t>(s) * num_states + s2];
    }
    bool has_action_dependent_transition() const { return transition != transition_active; }

    // Throws std::invalid_argument when a row fails to sum to one, a
    // dimension disagrees, or the initial belief is not a distribution.
    void validate() const;
};

// All sensor subsets with size <= budget, ordered by size then
// lexicographically; index 0 is always the empty set.
std::vector<SensorSet> enumerate_actions(int num_sensors, int budget);

const char* reward_kind_name(const Reward& r);

}  // namespace actp
