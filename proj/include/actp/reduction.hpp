#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "actp/model.hpp"
#include "actp/types.hpp"

namespace actp {

// Normal-action policy as an explicit belief -> sensor-set table with
// nearest-point (L1) fallback, total on the simplex. The prediction component
// of an IR policy is always the immediate-reward argmax (lowest index on
// ties), which is the form the equivalence theorems quantify over.
class Policy {
  public:
    void add(const Belief& b, SensorSet action);
    const SensorSet& normal_action(const Belief& b) const;
    std::size_t size() const { return entries_.size(); }

  private:
    struct Entry {
        Belief belief;
        SensorSet action;
    };
    static std::string key(const Belief& b);
    std::vector<Entry> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Expands the exact belief tree reachable from each root within `depth` steps
// and assigns every node a seeded random action, so that a rho-model and its
// reduction visit identical beliefs under the same table.
Policy random_tree_policy(const ActivePerceptionModel& m, const std::vector<Belief>& roots,
                          int depth, std::uint64_t seed);

// Immediate-reward argmax prediction (Definition-2 form), lowest index wins ties.
int ir_prediction(const IRRewardMatrix& ir, const Belief& b);

// Model reductions. States, observations, dynamics, initial belief and
// horizon are untouched; only the reward representation changes.
ActivePerceptionModel reduce_rho_to_ir(const ActivePerceptionModel& m_rho);
ActivePerceptionModel reduce_ir_to_rho(const ActivePerceptionModel& m_ir);

// Policy reductions: rho -> IR pairs the table's normal action with the
// argmax prediction; IR -> rho keeps only the normal action. Both directions
// share the Policy table, so these are provided for interface completeness.
struct IRAction {
    SensorSet normal;
    int prediction;
};
IRAction reduce_policy_rho_to_ir(const Policy& pi, const IRRewardMatrix& ir, const Belief& b);
SensorSet reduce_policy_ir_to_rho(const Policy& pi, const Belief& b);

// Exact V_t^pi(b) by recursive expansion over all observations. The base case
// V_0 is the reward term (rho(b) for tangent rewards, the prediction argmax
// for IR). Zero-probability branches contribute nothing. Throws when the
// expansion exceeds `max_nodes`.
double policy_value(const ActivePerceptionModel& m, const Policy& pi, int t, const Belief& b,
                    long max_nodes = 50'000'000);

// Builds the reduced model and returns max_b |V_t^IR(b) - V_t^rho(b)|.
// `m` may be either a tangent-reward or an IR-reward model; the reduction runs
// in the corresponding direction.
double equivalence_check(const ActivePerceptionModel& m, const Policy& pi, int t,
                         const std::vector<Belief>& beliefs);

}  // namespace actp
