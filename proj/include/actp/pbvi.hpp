#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "actp/model.hpp"
#include "actp/types.hpp"
#include "actp/value_function.hpp"

namespace actp {

enum class Backend { naive_ir, decomposed_ir, crosssum_rho, state_reward, greedy };

Backend backend_from_name(const std::string& name);
const char* backend_name(Backend b);

// Per-stage wall-clock of the backup loops, excluding model/belief setup.
struct SolveStats {
    std::vector<double> stage_seconds;
    std::vector<double> value_at_b0;
};

// The initial belief plus beliefs reached by a seeded random walk (uniform
// random actions, observations sampled from the model), deduplicated under
// L1 distance 1e-9 and truncated to `count`. walk_len = 0 picks 15 * horizon.
BeliefSet sample_beliefs(const ActivePerceptionModel& m, int count, std::uint64_t seed,
                         int walk_len = 0);

// One point-based backup stage. Requirements on the model's reward:
//   backup_naive_ir / backup_decomposed_ir: IRRewardMatrix
//   backup_crosssum_rho: TangentRewardSet (decomposed form; the full
//     cross-sum over observation subsets is kept as a test oracle only)
//   backup_state_reward: StateReward
// Naive IR iterates the |A_n| x |A_p| joint action space and rebuilds the
// projected vectors per joint action; decomposed IR picks the reward vector
// and the normal action independently and must produce the same values.
ValueFunction backup_naive_ir(const ActivePerceptionModel& m, const ValueFunction& prev,
                              const BeliefSet& beliefs);
ValueFunction backup_decomposed_ir(const ActivePerceptionModel& m, const ValueFunction& prev,
                                   const BeliefSet& beliefs);
ValueFunction backup_crosssum_rho(const ActivePerceptionModel& m, const ValueFunction& prev,
                                  const BeliefSet& beliefs);
ValueFunction backup_state_reward(const ActivePerceptionModel& m, const ValueFunction& prev,
                                  const BeliefSet& beliefs);

// Iterates the selected backup from the stage-0 reward vectors, horizon
// stages. Backend::greedy is implemented in greedy.hpp and accepted here for
// CLI convenience.
std::vector<ValueFunction> solve(const ActivePerceptionModel& m, const BeliefSet& beliefs,
                                 Backend backend, SolveStats* stats = nullptr);

// Exact one-step lookahead argmax over all sensor subsets of size <= budget,
// using V as the continuation. Returns the chosen set and, for IR rewards,
// the immediate-reward-maximizing prediction.
std::pair<SensorSet, std::optional<int>> greedy_policy_action(const ActivePerceptionModel& m,
                                                              const ValueFunction& v,
                                                              const Belief& b);

// Expected immediate reward term of Q(b, a): the reward argmax decomposed
// from the normal action (IR column / tangent vector), or b . R(., a) for
// state rewards.
double reward_term(const ActivePerceptionModel& m, const Belief& b, const SensorSet& a);

// Exact one-step-lookahead executor with the per-action projections built
// once up front; call sites run it per simulation step.
class ExecutionPolicy {
  public:
    ExecutionPolicy(const ActivePerceptionModel& m, const ValueFunction& v);
    ~ExecutionPolicy();
    ExecutionPolicy(ExecutionPolicy&&) noexcept;
    ExecutionPolicy& operator=(ExecutionPolicy&&) noexcept;

    SensorSet action(const Belief& b) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// gamma * sum_z max_alpha of the projected continuation for one action.
double continuation_value(const ActivePerceptionModel& m, const ValueFunction& prev,
                          const Belief& b, const SensorSet& a);

}  // namespace actp
