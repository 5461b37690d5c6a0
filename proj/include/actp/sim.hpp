#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "actp/gridworld.hpp"
#include "actp/model.hpp"
#include "actp/types.hpp"
#include "actp/value_function.hpp"

namespace actp {

enum class SimPolicy {
    value_function,  // exact one-step lookahead against a solved value function
    greedy_vf,       // greedy subset construction against a solved value function
    myopic,          // maximize expected immediate prediction reward; treats the
                     // state as static while sensing, so it ignores where the
                     // person may move during the observation
    rotate,          // camera (step mod N)
};

struct SimOptions {
    int episodes = 100;
    int steps = 50;
    std::uint64_t seed = 7;
    // For budget-style models: number of augmented levels per cell, so the
    // reported max-belief marginalizes over them. 1 means states are cells.
    int levels_per_cell = 1;
};

struct StepRecord {
    int episode;
    int step;
    int true_state;
    int predicted;  // prediction-action index (IR), best tangent peak, or argmax cell
    bool correct;
    double max_belief;
    SensorSet sensors;
};

struct SimResult {
    std::vector<StepRecord> rows;           // episode-major, step-minor
    std::vector<double> episode_reward;     // sum of model reward at the true state
    std::vector<double> episode_correct;    // count of correct predictions
    double mean_reward = 0.0;
    double mean_correct = 0.0;
    double stderr_correct = 0.0;

    void finalize();
};

// Simulates the tracked chain with observation noise shared across policy
// variants: the state path and the per-(step, sensor) noise draws depend only
// on (seed, episode), never on the selected sensors, so runs with different
// policies are paired. The agent tracks the Bayes belief, predicts each step
// (immediate-reward argmax), and accrues the model reward at the true state.
// `vf` may be null for rotate/myopic policies.
SimResult simulate(const ActivePerceptionModel& m, const ValueFunction* vf, SimPolicy policy,
                   const SimOptions& options);

// Multi-person tracking with a shared per-person model and value function:
// per-person chains and observations are independent, the sensor set is
// chosen once per step by maximizing the summed per-person Q (exactly, or
// greedily when `greedy` is set).
SimResult simulate_multi(const ActivePerceptionModel& m, const ValueFunction& vf, int persons,
                         bool greedy, const SimOptions& options);

// Factored value and action selection over persons sharing one model.
double factored_value(const ValueFunction& vf, const std::vector<Belief>& persons);
SensorSet factored_action(const ActivePerceptionModel& m, const ValueFunction& vf,
                          const std::vector<Belief>& persons, bool greedy);

// CSV with columns episode,step,true_state,predicted,correct,max_belief,sensors
// (sensors joined with ';').
std::string metrics_to_csv(const SimResult& result);

}  // namespace actp
