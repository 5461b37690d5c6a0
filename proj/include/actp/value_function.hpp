#pragma once

#include <vector>

#include "actp/model.hpp"
#include "actp/types.hpp"

namespace actp {

// PWLC value function: the upper surface of a set of alpha vectors.
struct ValueFunction {
    int stage = 0;
    std::vector<AlphaVector> vectors;

    double evaluate(const Belief& b) const;
    // First-best vector under strict > comparison (deterministic ties).
    const AlphaVector& best_vector(const Belief& b) const;
};

// Stage-0 value function: the reward vectors themselves (IR columns, the
// tangent set, or one vector per action for state rewards).
ValueFunction initial_value_function(const ActivePerceptionModel& m);

// Sampled belief set for point-based backups.
struct BeliefSet {
    std::vector<Belief> beliefs;  // beliefs[0] is the initial belief
    std::uint64_t seed = 0;
    std::string method = "random-walk";
};

}  // namespace actp
