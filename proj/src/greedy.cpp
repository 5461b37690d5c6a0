#include "actp/greedy.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <memory>
#include <queue>
#include <stdexcept>

#include "actp/belief_ops.hpp"
#include "actp/detail/backup_core.hpp"
#include "actp/kernels.hpp"
#include "actp/parallel.hpp"

namespace actp {

namespace {

using detail::FlatGamma;
using detail::ScanScratch;

// Per-belief Q evaluator over sensor subsets. Uses the same scan arithmetic
// as the exact backups, so greedy and exact agree bitwise wherever they pick
// the same subset.
class QEval {
  public:
    QEval(const ActivePerceptionModel& m, const FlatGamma& flat, const Belief& b)
        : m_(m), flat_(flat), b_(b) {
        pre_idle_ = detail::propagate(m, m.transition, b);
        if (m.has_action_dependent_transition())
            pre_active_ = detail::propagate(m, m.transition_active, b);
        scratch_.resize(m.num_states);
    }

    const std::vector<double>& pre_for(const SensorSet& a) const {
        return (a.empty() || pre_active_.empty()) ? pre_idle_ : pre_active_;
    }

    double q(const SensorSet& a) const {
        const auto obs = detail::observations_unbounded(m_, a);
        return reward_term(m_, b_, a) +
               detail::weighted_scan(m_, flat_, pre_for(a), a, obs, scratch_);
    }

    ScanScratch& scratch() const { return scratch_; }

  private:
    const ActivePerceptionModel& m_;
    const FlatGamma& flat_;
    const Belief& b_;
    std::vector<double> pre_idle_;
    std::vector<double> pre_active_;
    mutable ScanScratch scratch_;
};

SensorSet with_element(const SensorSet& a, int e) {
    SensorSet out = a;
    out.insert(std::lower_bound(out.begin(), out.end(), e), e);
    return out;
}

SensorSet plain_greedy(const SetFunction& q, const std::vector<int>& ground, int k) {
    SensorSet chosen;
    std::vector<int> remaining = ground;
    std::sort(remaining.begin(), remaining.end());
    for (int round = 0; round < k && !remaining.empty(); ++round) {
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            const double v = q(with_element(chosen, remaining[i]));
            if (v > best) {
                best = v;
                best_i = i;
            }
        }
        chosen = with_element(chosen, remaining[best_i]);
        remaining.erase(remaining.begin() + best_i);
    }
    return chosen;
}

SensorSet lazy_greedy(const SetFunction& q, const std::vector<int>& ground, int k) {
    struct Entry {
        double gain;
        int element;
        int round;
    };
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.gain != b.gain) return a.gain < b.gain;
        return a.element > b.element;  // lowest index on top for ties
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    std::vector<int> sorted = ground;
    std::sort(sorted.begin(), sorted.end());
    const double q_empty = q({});
    double q_chosen = q_empty;
    SensorSet chosen;
    for (int e : sorted) heap.push({q({e}) - q_empty, e, 0});
    for (int round = 0; round < k && !heap.empty(); ++round) {
        while (true) {
            Entry top = heap.top();
            heap.pop();
            if (top.round == round) {
                chosen = with_element(chosen, top.element);
                q_chosen += top.gain;
                break;
            }
            top.gain = q(with_element(chosen, top.element)) - q_chosen;
            top.round = round;
            heap.push(top);
        }
    }
    return chosen;
}

std::vector<int> ground_set(int num_sensors) {
    std::vector<int> g(num_sensors);
    for (int i = 0; i < num_sensors; ++i) g[i] = i;
    return g;
}

}  // namespace

SensorSet greedy_argmax(const SetFunction& q, const std::vector<int>& ground, int k, bool lazy) {
    if (k > static_cast<int>(ground.size()))
        throw std::invalid_argument("greedy_argmax: k exceeds the ground set size");
    return lazy ? lazy_greedy(q, ground, k) : plain_greedy(q, ground, k);
}

SetFunction q_from_gamma(const ActivePerceptionModel& m, const ValueFunction& prev,
                         const Belief& b) {
    auto flat = std::make_shared<FlatGamma>(prev);
    auto eval = std::make_shared<QEval>(m, *flat, b);
    return SetFunction([flat, eval](const SensorSet& a) { return eval->q(a); });
}

ValueFunction backup_greedy(const ActivePerceptionModel& m, const ValueFunction& prev,
                            const BeliefSet& beliefs, bool lazy) {
    const auto& B = beliefs.beliefs;
    const FlatGamma flat(prev);
    const auto ground = ground_set(m.num_sensors);

    struct Out {
        std::vector<double> alpha;
        SensorSet action;
        std::optional<int> prediction;
    };
    std::vector<Out> outs(B.size());

    // Singleton observation lists shared across beliefs (the first greedy
    // round always probes singletons; later rounds enumerate on the fly).
    std::vector<std::vector<JointObservation>> singleton_obs;
    singleton_obs.reserve(ground.size());
    for (int e : ground) singleton_obs.push_back(enumerate_observations(m, {e}));
    const bool action_independent_reward = !std::holds_alternative<StateReward>(m.reward);

    parallel_for(B.size(), [&](std::size_t i) {
        const Belief& b = B[i];
        QEval eval(m, flat, b);
        Out& out = outs[i];

        SensorSet chosen;
        std::vector<JointObservation> chosen_obs;
        std::vector<std::size_t> chosen_winners;
        if (!lazy) {
            // Plain greedy, allocation-light: every candidate subset is
            // evaluated exactly once, and the winning scan of each round is
            // kept so the final subset needs no re-scan.
            const double shared_reward =
                action_independent_reward ? reward_term(m, b, {}) : 0.0;
            std::vector<int> remaining = ground;
            for (int round = 0; round < m.budget && !remaining.empty(); ++round) {
                double best = -std::numeric_limits<double>::infinity();
                std::size_t best_i = 0;
                std::vector<JointObservation> obs_storage;
                for (std::size_t r = 0; r < remaining.size(); ++r) {
                    const auto cand = with_element(chosen, remaining[r]);
                    const std::vector<JointObservation>* obs = &singleton_obs[remaining[r]];
                    if (round > 0) {
                        obs_storage = detail::observations_unbounded(m, cand);
                        obs = &obs_storage;
                    }
                    const double reward_part = action_independent_reward
                                                   ? shared_reward
                                                   : reward_term(m, b, cand);
                    const double q =
                        reward_part + detail::weighted_scan(m, flat, eval.pre_for(cand), cand,
                                                            *obs, eval.scratch());
                    if (q > best) {
                        best = q;
                        best_i = r;
                        chosen_winners = eval.scratch().winners;
                        if (round > 0) chosen_obs = *obs;
                    }
                }
                chosen = with_element(chosen, remaining[best_i]);
                if (chosen.size() == 1) chosen_obs = singleton_obs[chosen[0]];
                remaining.erase(remaining.begin() + best_i);
            }
        } else {
            SetFunction q([&](const SensorSet& a) { return eval.q(a); });
            chosen = greedy_argmax(q, ground, m.budget, true);
            chosen_obs = detail::observations_unbounded(m, chosen);
            detail::weighted_scan(m, flat, eval.pre_for(chosen), chosen, chosen_obs,
                                  eval.scratch());
            chosen_winners = eval.scratch().winners;
        }
        out.action = chosen;

        if (const auto* ir = std::get_if<IRRewardMatrix>(&m.reward)) {
            double best = -std::numeric_limits<double>::infinity();
            int best_p = 0;
            for (int p = 0; p < ir->num_predictions; ++p) {
                double v = 0.0;
                for (std::size_t s = 0; s < b.size(); ++s)
                    v += b[s] * ir->at(static_cast<int>(s), p);
                if (v > best) {
                    best = v;
                    best_p = p;
                }
            }
            out.alpha = ir->column(best_p);
            out.prediction = best_p;
        } else if (const auto* tr = std::get_if<TangentRewardSet>(&m.reward)) {
            std::size_t best_j = 0;
            double best = tr->vectors[0].dot(b);
            for (std::size_t j = 1; j < tr->vectors.size(); ++j) {
                const double v = tr->vectors[j].dot(b);
                if (v > best) {
                    best = v;
                    best_j = j;
                }
            }
            out.alpha = tr->vectors[best_j].values;
        } else {
            out.alpha = std::get<StateReward>(m.reward).vector_for(chosen, m.num_states);
        }
        detail::assemble_winners(m, prev, chosen, chosen_obs, chosen_winners, eval.scratch(),
                                 out.alpha);
    });

    ValueFunction vf;
    vf.stage = prev.stage + 1;
    for (auto& o : outs) {
        bool dup = false;
        for (const auto& kept : vf.vectors) {
            double linf = 0.0;
            for (int s = 0; s < m.num_states; ++s)
                linf = std::max(linf, std::abs(kept.values[s] - o.alpha[s]));
            if (linf < 1e-12) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            AlphaVector a;
            a.values = std::move(o.alpha);
            a.normal_action = std::move(o.action);
            a.prediction_action = o.prediction;
            vf.vectors.push_back(std::move(a));
        }
    }
    return vf;
}

std::vector<ValueFunction> greedy_solve(const ActivePerceptionModel& m, const BeliefSet& beliefs,
                                        SolveStats* stats, bool lazy) {
    ValueFunction current = initial_value_function(m);
    std::vector<ValueFunction> out;
    for (int t = 1; t <= m.horizon; ++t) {
        const auto begin = std::chrono::steady_clock::now();
        current = backup_greedy(m, current, beliefs, lazy);
        const auto end = std::chrono::steady_clock::now();
        if (stats != nullptr) {
            stats->stage_seconds.push_back(std::chrono::duration<double>(end - begin).count());
            stats->value_at_b0.push_back(current.evaluate(m.initial_belief));
        }
        out.push_back(current);
    }
    return out;
}

SensorSet greedy_execution_action(const ActivePerceptionModel& m, const ValueFunction& v,
                                  const Belief& b) {
    const auto q = q_from_gamma(m, v, b);
    return greedy_argmax(q, ground_set(m.num_sensors), m.budget);
}

}  // namespace actp
