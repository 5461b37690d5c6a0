#include "actp/pbvi.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "actp/belief_ops.hpp"
#include "actp/detail/backup_core.hpp"
#include "actp/kernels.hpp"
#include "actp/parallel.hpp"
#include "actp/rng.hpp"

namespace actp {

namespace {

using detail::FlatGamma;
using detail::ScanScratch;
using kernels::ops;

// Propagated beliefs for the whole set, one row per belief and transition
// class; shared by every action in a backup stage.
struct PreBeliefs {
    std::vector<std::vector<double>> idle;
    std::vector<std::vector<double>> active;  // empty unless the model needs it

    PreBeliefs(const ActivePerceptionModel& m, const std::vector<Belief>& beliefs) {
        idle.reserve(beliefs.size());
        for (const auto& b : beliefs) idle.push_back(detail::propagate(m, m.transition, b));
        if (m.has_action_dependent_transition()) {
            active.reserve(beliefs.size());
            for (const auto& b : beliefs)
                active.push_back(detail::propagate(m, m.transition_active, b));
        }
    }
    const std::vector<double>& for_action(const SensorSet& a, std::size_t i) const {
        return (a.empty() || active.empty()) ? idle[i] : active[i];
    }
};

struct Candidate {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<double> alpha;
    SensorSet action;
    std::optional<int> prediction;
};

ValueFunction finish_stage(const ActivePerceptionModel& m, std::vector<Candidate>& cands,
                           int stage) {
    ValueFunction vf;
    vf.stage = stage;
    for (auto& c : cands) {
        bool dup = false;
        for (const auto& kept : vf.vectors) {
            double linf = 0.0;
            for (int s = 0; s < m.num_states; ++s)
                linf = std::max(linf, std::abs(kept.values[s] - c.alpha[s]));
            if (linf < 1e-12) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            AlphaVector a;
            a.values = std::move(c.alpha);
            a.normal_action = std::move(c.action);
            a.prediction_action = c.prediction;
            vf.vectors.push_back(std::move(a));
        }
    }
    return vf;
}

// Best prediction column per belief (IR rewards), lowest index on ties.
void best_predictions(const IRRewardMatrix& ir, const std::vector<Belief>& beliefs,
                      std::vector<int>& pick, std::vector<double>& value) {
    const int ap = ir.num_predictions;
    pick.resize(beliefs.size());
    value.resize(beliefs.size());
    for (std::size_t i = 0; i < beliefs.size(); ++i) {
        const Belief& b = beliefs[i];
        double best = -std::numeric_limits<double>::infinity();
        int best_p = 0;
        for (int p = 0; p < ap; ++p) {
            double v = 0.0;
            for (std::size_t s = 0; s < b.size(); ++s) v += b[s] * ir.at(static_cast<int>(s), p);
            if (v > best) {
                best = v;
                best_p = p;
            }
        }
        pick[i] = best_p;
        value[i] = best;
    }
}

// Generic stage: for each action, scan every belief, and keep the per-belief
// best candidate. `base_value`/`base_alpha` provide the reward part (which may
// depend on the belief index and on the action for state rewards);
// `base_pred` annotates the prediction action, when there is one.
template <typename BaseValue, typename BaseAlpha, typename BasePred>
ValueFunction backup_stage(const ActivePerceptionModel& m, const ValueFunction& prev,
                           const BeliefSet& beliefs, BaseValue&& base_value,
                           BaseAlpha&& base_alpha, BasePred&& base_pred) {
    const auto& B = beliefs.beliefs;
    const FlatGamma flat(prev);
    const PreBeliefs pres(m, B);
    std::vector<Candidate> cands(B.size());
    std::vector<ScanScratch> scratch(B.size());
    for (auto& s : scratch) s.resize(m.num_states);
    for (const auto& a : enumerate_actions(m.num_sensors, m.budget)) {
        const auto obs = enumerate_observations(m, a);
        parallel_for(B.size(), [&](std::size_t i) {
            const double total =
                base_value(i, a) +
                detail::weighted_scan(m, flat, pres.for_action(a, i), a, obs, scratch[i]);
            if (total > cands[i].value) {
                cands[i].value = total;
                cands[i].alpha = base_alpha(i, a);
                detail::assemble_winners(m, prev, a, obs, scratch[i].winners, scratch[i],
                                         cands[i].alpha);
                cands[i].action = a;
                cands[i].prediction = base_pred(i);
            }
        });
    }
    return finish_stage(m, cands, prev.stage + 1);
}

}  // namespace

Backend backend_from_name(const std::string& name) {
    if (name == "naive-ir") return Backend::naive_ir;
    if (name == "decomposed-ir") return Backend::decomposed_ir;
    if (name == "crosssum-rho") return Backend::crosssum_rho;
    if (name == "state") return Backend::state_reward;
    if (name == "greedy") return Backend::greedy;
    throw std::invalid_argument("unknown backend: " + name);
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::naive_ir: return "naive-ir";
        case Backend::decomposed_ir: return "decomposed-ir";
        case Backend::crosssum_rho: return "crosssum-rho";
        case Backend::state_reward: return "state";
        case Backend::greedy: return "greedy";
    }
    return "?";
}

BeliefSet sample_beliefs(const ActivePerceptionModel& m, int count, std::uint64_t seed,
                         int walk_len) {
    if (count < 1) throw std::invalid_argument("sample_beliefs: count must be >= 1");
    if (walk_len <= 0) walk_len = 15 * m.horizon;
    BeliefSet set;
    set.seed = seed;
    set.beliefs.push_back(m.initial_belief);
    Rng rng(seed);
    const auto actions = enumerate_actions(m.num_sensors, m.budget);
    const int max_walks = std::max(20, count);
    std::vector<double> row(m.num_states);
    for (int walk = 0; walk < max_walks && static_cast<int>(set.beliefs.size()) < count; ++walk) {
        Belief b = m.initial_belief;
        int s = static_cast<int>(rng.sample_discrete(m.initial_belief));
        for (int step = 0; step < walk_len; ++step) {
            const auto& a = actions[rng.next_below(actions.size())];
            const auto& t = m.transition_for(a);
            std::memcpy(row.data(), t.data() + static_cast<std::size_t>(s) * m.num_states,
                        sizeof(double) * m.num_states);
            s = static_cast<int>(rng.sample_discrete(row));
            JointObservation z(m.num_sensors, kNullSymbol);
            for (int i : a) {
                const auto& ch = m.channels[i];
                std::vector<double> zp(ch.num_symbols);
                for (int k = 0; k < ch.num_symbols; ++k) zp[k] = ch.at(s, k);
                z[i] = static_cast<int>(rng.sample_discrete(zp));
            }
            b = belief_update(m, b, a, z);
            bool fresh = true;
            for (const auto& kept : set.beliefs) {
                double l1 = 0.0;
                for (int q = 0; q < m.num_states; ++q) l1 += std::abs(kept[q] - b[q]);
                if (l1 < 1e-9) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) set.beliefs.push_back(b);
            if (static_cast<int>(set.beliefs.size()) >= count) break;
        }
    }
    return set;
}

ValueFunction backup_decomposed_ir(const ActivePerceptionModel& m, const ValueFunction& prev,
                                   const BeliefSet& beliefs) {
    const auto* ir = std::get_if<IRRewardMatrix>(&m.reward);
    if (ir == nullptr) throw std::invalid_argument("backup_decomposed_ir: reward is not IR");
    std::vector<int> pred_pick;
    std::vector<double> pred_val;
    best_predictions(*ir, beliefs.beliefs, pred_pick, pred_val);
    return backup_stage(
        m, prev, beliefs, [&](std::size_t i, const SensorSet&) { return pred_val[i]; },
        [&](std::size_t i, const SensorSet&) { return ir->column(pred_pick[i]); },
        [&](std::size_t i) { return std::optional<int>(pred_pick[i]); });
}

ValueFunction backup_naive_ir(const ActivePerceptionModel& m, const ValueFunction& prev,
                              const BeliefSet& beliefs) {
    const auto* ir = std::get_if<IRRewardMatrix>(&m.reward);
    if (ir == nullptr) throw std::invalid_argument("backup_naive_ir: reward is not IR");
    const auto& B = beliefs.beliefs;
    const FlatGamma flat(prev);
    const PreBeliefs pres(m, B);
    std::vector<Candidate> cands(B.size());
    std::vector<ScanScratch> scratch(B.size());
    for (auto& s : scratch) s.resize(m.num_states);
    // Joint action space A_n x A_p: the continuation scan repeats for every
    // prediction action, which is exactly the naive backup's cost profile.
    for (const auto& a : enumerate_actions(m.num_sensors, m.budget)) {
        const auto obs = enumerate_observations(m, a);
        for (int p = 0; p < ir->num_predictions; ++p) {
            const auto col = ir->column(p);
            parallel_for(B.size(), [&](std::size_t i) {
                const Belief& b = B[i];
                double total = 0.0;
                for (std::size_t s = 0; s < b.size(); ++s) total += b[s] * col[s];
                total +=
                    detail::weighted_scan(m, flat, pres.for_action(a, i), a, obs, scratch[i]);
                if (total > cands[i].value) {
                    cands[i].value = total;
                    cands[i].alpha = col;
                    detail::assemble_winners(m, prev, a, obs, scratch[i].winners, scratch[i],
                                             cands[i].alpha);
                    cands[i].action = a;
                    cands[i].prediction = p;
                }
            });
        }
    }
    return finish_stage(m, cands, prev.stage + 1);
}

ValueFunction backup_crosssum_rho(const ActivePerceptionModel& m, const ValueFunction& prev,
                                  const BeliefSet& beliefs) {
    const auto* tr = std::get_if<TangentRewardSet>(&m.reward);
    if (tr == nullptr) throw std::invalid_argument("backup_crosssum_rho: reward is not a tangent set");
    const auto& B = beliefs.beliefs;
    std::vector<int> rho_pick(B.size());
    std::vector<double> rho_val(B.size());
    for (std::size_t i = 0; i < B.size(); ++i) {
        double best = tr->vectors[0].dot(B[i]);
        int best_j = 0;
        for (std::size_t j = 1; j < tr->vectors.size(); ++j) {
            const double v = tr->vectors[j].dot(B[i]);
            if (v > best) {
                best = v;
                best_j = static_cast<int>(j);
            }
        }
        rho_pick[i] = best_j;
        rho_val[i] = best;
    }
    return backup_stage(
        m, prev, beliefs, [&](std::size_t i, const SensorSet&) { return rho_val[i]; },
        [&](std::size_t i, const SensorSet&) { return tr->vectors[rho_pick[i]].values; },
        [](std::size_t) { return std::optional<int>(); });
}

ValueFunction backup_state_reward(const ActivePerceptionModel& m, const ValueFunction& prev,
                                  const BeliefSet& beliefs) {
    const auto* sr = std::get_if<StateReward>(&m.reward);
    if (sr == nullptr) throw std::invalid_argument("backup_state_reward: reward is not state-based");
    const auto& B = beliefs.beliefs;
    return backup_stage(
        m, prev, beliefs,
        [&](std::size_t i, const SensorSet& a) {
            const auto r = sr->vector_for(a, m.num_states);
            double v = 0.0;
            for (int s = 0; s < m.num_states; ++s) v += r[s] * B[i][s];
            return v;
        },
        [&](std::size_t, const SensorSet& a) { return sr->vector_for(a, m.num_states); },
        [](std::size_t) { return std::optional<int>(); });
}

std::vector<ValueFunction> solve(const ActivePerceptionModel& m, const BeliefSet& beliefs,
                                 Backend backend, SolveStats* stats) {
    if (backend == Backend::greedy)
        throw std::invalid_argument("solve: use greedy_solve for the greedy backend");
    ValueFunction current = initial_value_function(m);
    std::vector<ValueFunction> out;
    for (int t = 1; t <= m.horizon; ++t) {
        const auto begin = std::chrono::steady_clock::now();
        switch (backend) {
            case Backend::naive_ir: current = backup_naive_ir(m, current, beliefs); break;
            case Backend::decomposed_ir: current = backup_decomposed_ir(m, current, beliefs); break;
            case Backend::crosssum_rho: current = backup_crosssum_rho(m, current, beliefs); break;
            case Backend::state_reward: current = backup_state_reward(m, current, beliefs); break;
            case Backend::greedy: break;
        }
        const auto end = std::chrono::steady_clock::now();
        if (stats != nullptr) {
            stats->stage_seconds.push_back(std::chrono::duration<double>(end - begin).count());
            stats->value_at_b0.push_back(current.evaluate(m.initial_belief));
        }
        out.push_back(current);
    }
    return out;
}

double reward_term(const ActivePerceptionModel& m, const Belief& b, const SensorSet& a) {
    if (const auto* ir = std::get_if<IRRewardMatrix>(&m.reward)) {
        double best = -std::numeric_limits<double>::infinity();
        for (int p = 0; p < ir->num_predictions; ++p) {
            double v = 0.0;
            for (std::size_t s = 0; s < b.size(); ++s) v += b[s] * ir->at(static_cast<int>(s), p);
            best = std::max(best, v);
        }
        return best;
    }
    if (const auto* tr = std::get_if<TangentRewardSet>(&m.reward)) return rho_eval(*tr, b);
    const auto& sr = std::get<StateReward>(m.reward);
    const auto r_a = sr.vector_for(a, m.num_states);
    return ops().dot(r_a.data(), b.data(), b.size());
}

double continuation_value(const ActivePerceptionModel& m, const ValueFunction& prev,
                          const Belief& b, const SensorSet& a) {
    const FlatGamma flat(prev);
    ScanScratch scratch;
    scratch.resize(m.num_states);
    const auto pre = detail::propagate(m, m.transition_for(a), b);
    return detail::weighted_scan(m, flat, pre, a, enumerate_observations(m, a), scratch);
}

struct ExecutionPolicy::Impl {
    const ActivePerceptionModel& model;
    FlatGamma flat;
    std::vector<SensorSet> actions;
    std::vector<std::vector<JointObservation>> obs;

    Impl(const ActivePerceptionModel& m, const ValueFunction& v)
        : model(m), flat(v), actions(enumerate_actions(m.num_sensors, m.budget)) {
        obs.reserve(actions.size());
        for (const auto& a : actions) obs.push_back(enumerate_observations(m, a));
    }
};

ExecutionPolicy::ExecutionPolicy(const ActivePerceptionModel& m, const ValueFunction& v)
    : impl_(std::make_unique<Impl>(m, v)) {}
ExecutionPolicy::~ExecutionPolicy() = default;
ExecutionPolicy::ExecutionPolicy(ExecutionPolicy&&) noexcept = default;
ExecutionPolicy& ExecutionPolicy::operator=(ExecutionPolicy&&) noexcept = default;

SensorSet ExecutionPolicy::action(const Belief& b) const {
    const auto& m = impl_->model;
    ScanScratch scratch;
    scratch.resize(m.num_states);
    const auto pre_idle = detail::propagate(m, m.transition, b);
    std::vector<double> pre_active;
    if (m.has_action_dependent_transition())
        pre_active = detail::propagate(m, m.transition_active, b);
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < impl_->actions.size(); ++i) {
        const auto& a = impl_->actions[i];
        const auto& pre = (a.empty() || pre_active.empty()) ? pre_idle : pre_active;
        const double q = reward_term(m, b, a) +
                         detail::weighted_scan(m, impl_->flat, pre, a, impl_->obs[i], scratch);
        if (q > best) {
            best = q;
            best_i = i;
        }
    }
    return impl_->actions[best_i];
}

std::pair<SensorSet, std::optional<int>> greedy_policy_action(const ActivePerceptionModel& m,
                                                              const ValueFunction& v,
                                                              const Belief& b) {
    double best = -std::numeric_limits<double>::infinity();
    SensorSet best_a;
    for (const auto& a : enumerate_actions(m.num_sensors, m.budget)) {
        const double q = reward_term(m, b, a) + continuation_value(m, v, b, a);
        if (q > best) {
            best = q;
            best_a = a;
        }
    }
    std::optional<int> prediction;
    if (const auto* ir = std::get_if<IRRewardMatrix>(&m.reward)) {
        double bestp = -std::numeric_limits<double>::infinity();
        for (int p = 0; p < ir->num_predictions; ++p) {
            double val = 0.0;
            for (std::size_t s = 0; s < b.size(); ++s) val += b[s] * ir->at(static_cast<int>(s), p);
            if (val > bestp) {
                bestp = val;
                prediction = p;
            }
        }
    }
    return {best_a, prediction};
}

}  // namespace actp
