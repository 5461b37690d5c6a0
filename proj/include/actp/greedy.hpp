#pragma once

#include <functional>
#include <map>
#include <vector>

#include "actp/model.hpp"
#include "actp/pbvi.hpp"
#include "actp/types.hpp"
#include "actp/value_function.hpp"

namespace actp {

// Set function over sensor subsets with memoized evaluations. Greedy subset
// construction re-queries overlapping subsets; the cache keeps the semantics
// exact while avoiding recomputation.
class SetFunction {
  public:
    explicit SetFunction(std::function<double(const SensorSet&)> fn) : fn_(std::move(fn)) {}

    double operator()(const SensorSet& a) const {
        auto it = cache_.find(a);
        if (it != cache_.end()) return it->second;
        const double v = fn_(a);
        cache_.emplace(a, v);
        return v;
    }

    std::size_t evaluations() const { return cache_.size(); }

  private:
    std::function<double(const SensorSet&)> fn_;
    mutable std::map<SensorSet, double> cache_;
};

// K rounds of marginal-gain argmax over the ground set; ties go to the lowest
// sensor index. Evaluates Q on candidate subsets only (the base Q(Y) cancels
// inside each round), K*N - K(K-1)/2 evaluations in total.
// With `lazy` set, stale marginal gains are kept in a priority queue and only
// re-evaluated when they top it (same result for submodular Q, fewer
// evaluations; off by default since the runtime claims are about plain greedy).
SensorSet greedy_argmax(const SetFunction& q, const std::vector<int>& ground, int k,
                        bool lazy = false);

// Q(b, .) of Eq-3 shape against a fixed continuation value function:
// reward term decomposed from the normal action plus the discounted
// per-observation best-alpha continuation. Defined for any subset of the
// ground set, not only those within budget.
SetFunction q_from_gamma(const ActivePerceptionModel& m, const ValueFunction& prev,
                         const Belief& b);

// The decomposed point-based backup with the exact action argmax replaced by
// greedy subset construction per belief.
ValueFunction backup_greedy(const ActivePerceptionModel& m, const ValueFunction& prev,
                            const BeliefSet& beliefs, bool lazy = false);

std::vector<ValueFunction> greedy_solve(const ActivePerceptionModel& m, const BeliefSet& beliefs,
                                        SolveStats* stats = nullptr, bool lazy = false);

// Execution-time greedy sensor selection against a solved value function.
SensorSet greedy_execution_action(const ActivePerceptionModel& m, const ValueFunction& v,
                                  const Belief& b);

}  // namespace actp
