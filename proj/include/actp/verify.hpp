#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "actp/model.hpp"
#include "actp/types.hpp"

namespace actp {

// Reward used by the exhaustive recursions. The theorem checks use the exact
// negative belief entropy (optionally shifted by +ln|S| so rewards are
// non-negative), never the tangent approximation, unless the model's own
// reward is requested.
enum class ExactReward { model, neg_entropy, neg_entropy_shifted };

struct ExactOptions {
    ExactReward reward = ExactReward::model;
    bool greedy_actions = false;  // greedy instead of exact maximization at every step
    long max_nodes = 80'000'000;
};

// Exact V_t(b) by full recursion over all sensor subsets within budget and
// all observations; no point-based approximation. Throws when the expansion
// exceeds options.max_nodes.
double exact_value(const ActivePerceptionModel& m, int t, const Belief& b,
                   const ExactOptions& options = {});

// Q_t(b, a) with the continuation of exact_value. The first action may exceed
// the budget (the submodularity property quantifies over all of A+).
double exact_q(const ActivePerceptionModel& m, int t, const Belief& b, const SensorSet& a,
               const ExactOptions& options = {});

// Q_t(b, a) when steps 1.. follow a fixed per-depth action sequence
// (open-loop continuation). This instantiates the theorem premise that the
// observation features are conditionally independent given the state: with
// factored channels it holds exactly when the continuation is open-loop and
// the state is static.
double open_loop_q(const ActivePerceptionModel& m, int t, const Belief& b, const SensorSet& a,
                   const std::vector<SensorSet>& continuation,
                   ExactReward reward = ExactReward::neg_entropy);

struct SubmodularityWitness {
    std::size_t belief_index;
    SensorSet set_small;
    SensorSet set_large;
    int element;
};

struct SubmodularityReport {
    bool passed = true;
    double worst_violation = 0.0;
    std::optional<SubmodularityWitness> witness;  // present iff failed
    long comparisons = 0;
};

struct CheckReport {
    std::string name;
    bool passed = true;
    double worst = 0.0;
    std::string detail;
};

// Enumerates every a_M subseteq a_N subseteq A+ and element outside a_N and
// compares marginal gains of Q computed by exact expansion with the chosen
// reward. An empty continuation uses the optimal (adaptive) continuation.
SubmodularityReport check_submodularity(const ActivePerceptionModel& m, int t,
                                        const std::vector<Belief>& beliefs,
                                        const std::vector<SensorSet>& open_loop_continuation,
                                        ExactReward reward = ExactReward::neg_entropy,
                                        double tolerance = 1e-9);

// Q(b, a_M) <= Q(b, a_N) + tol for every nested pair, optimal continuation.
CheckReport check_monotonicity(const ActivePerceptionModel& m, int t,
                               const std::vector<Belief>& beliefs, double tolerance = 1e-9);

// With the +ln|S| shift, Q >= -tol everywhere.
CheckReport check_nonnegativity(const ActivePerceptionModel& m, int t,
                                const std::vector<Belief>& beliefs, double tolerance = 1e-9);

// V^G_t(b) >= (1 - 1/e)^{2t} V*_t(b) - tol, shifted entropy reward.
CheckReport check_theorem4_bound(const ActivePerceptionModel& m, int t_max,
                                 const std::vector<Belief>& beliefs, double tolerance = 1e-9);

// Sampled sup-norm gap between the exact-entropy optimal value and the
// tangent-approximated optimal value; asserts the gap is non-increasing as the
// (nested) tangent density doubles. Returns one report per density.
std::vector<CheckReport> check_tangent_gap(const ActivePerceptionModel& m, int t,
                                           const std::vector<Belief>& beliefs,
                                           const std::vector<int>& densities);

// Lemma-level identities on exhaustive tables.
CheckReport check_conditional_entropy_identity(const ActivePerceptionModel& m,
                                               const std::vector<Belief>& beliefs,
                                               double tolerance = 1e-9);
CheckReport check_entropy_submodularity(const ActivePerceptionModel& m, const Belief& b,
                                        double tolerance = 1e-9);
CheckReport check_epsilon_submodularity_transfer(const ActivePerceptionModel& m_tangent, int t,
                                                 const std::vector<Belief>& beliefs,
                                                 const std::vector<SensorSet>& continuation);

// Named suites used by the CLI and the acceptance tests; each builds its own
// seeded premise-conformant models.
std::vector<CheckReport> suite_submodularity(std::uint64_t seed);
std::vector<CheckReport> suite_monotonicity(std::uint64_t seed);
std::vector<CheckReport> suite_bounds(std::uint64_t seed);
std::vector<CheckReport> suite_equivalence(std::uint64_t seed);
std::vector<CheckReport> suite_lemmas(std::uint64_t seed);

}  // namespace actp
