#include "actp/reduction.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "actp/belief_ops.hpp"
#include "actp/pbvi.hpp"
#include "actp/rng.hpp"

namespace actp {

std::string Policy::key(const Belief& b) {
    std::string k(b.size() * sizeof(double), '\0');
    std::memcpy(k.data(), b.data(), k.size());
    return k;
}

void Policy::add(const Belief& b, SensorSet action) {
    const auto k = key(b);
    if (index_.contains(k)) return;
    index_.emplace(k, entries_.size());
    entries_.push_back({b, std::move(action)});
}

const SensorSet& Policy::normal_action(const Belief& b) const {
    if (entries_.empty()) throw std::logic_error("policy table is empty");
    const auto it = index_.find(key(b));
    if (it != index_.end()) return entries_[it->second].action;
    // nearest-point fallback under L1
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        double d = 0.0;
        for (std::size_t s = 0; s < b.size(); ++s) d += std::abs(entries_[i].belief[s] - b[s]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return entries_[best].action;
}

namespace {

void expand_tree(const ActivePerceptionModel& m, const std::vector<SensorSet>& actions,
                 Policy& pi, Rng& rng, const Belief& b, int depth) {
    const auto& a = actions[rng.next_below(actions.size())];
    pi.add(b, a);
    if (depth == 0) return;
    // copy: recursion grows the table and may invalidate references into it
    const SensorSet assigned = pi.normal_action(b);
    for (const auto& z : enumerate_observations(m, assigned)) {
        const double pz = observation_probability(m, b, assigned, z);
        if (pz <= 0.0) continue;
        expand_tree(m, actions, pi, rng, belief_update(m, b, assigned, z), depth - 1);
    }
}

}  // namespace

Policy random_tree_policy(const ActivePerceptionModel& m, const std::vector<Belief>& roots,
                          int depth, std::uint64_t seed) {
    Policy pi;
    Rng rng(seed);
    const auto actions = enumerate_actions(m.num_sensors, m.budget);
    for (const auto& b : roots) expand_tree(m, actions, pi, rng, b, depth);
    return pi;
}

int ir_prediction(const IRRewardMatrix& ir, const Belief& b) {
    int best_p = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int p = 0; p < ir.num_predictions; ++p) {
        double v = 0.0;
        for (std::size_t s = 0; s < b.size(); ++s) v += b[s] * ir.at(static_cast<int>(s), p);
        if (v > best) {
            best = v;
            best_p = p;
        }
    }
    return best_p;
}

ActivePerceptionModel reduce_rho_to_ir(const ActivePerceptionModel& m_rho) {
    const auto* tr = std::get_if<TangentRewardSet>(&m_rho.reward);
    if (tr == nullptr)
        throw std::invalid_argument("reduce_rho_to_ir: reward is not a tangent set");
    ActivePerceptionModel m = m_rho;
    IRRewardMatrix ir;
    ir.num_predictions = static_cast<int>(tr->vectors.size());
    ir.values.resize(static_cast<std::size_t>(m.num_states) * ir.num_predictions);
    for (int p = 0; p < ir.num_predictions; ++p)
        for (int s = 0; s < m.num_states; ++s)
            ir.values[static_cast<std::size_t>(s) * ir.num_predictions + p] =
                tr->vectors[p].values[s];
    m.reward = std::move(ir);
    return m;
}

ActivePerceptionModel reduce_ir_to_rho(const ActivePerceptionModel& m_ir) {
    const auto* ir = std::get_if<IRRewardMatrix>(&m_ir.reward);
    if (ir == nullptr) throw std::invalid_argument("reduce_ir_to_rho: reward is not IR");
    ActivePerceptionModel m = m_ir;
    TangentRewardSet tr;
    for (int p = 0; p < ir->num_predictions; ++p) {
        AlphaVector a;
        a.values = ir->column(p);
        tr.vectors.push_back(std::move(a));
    }
    m.reward = std::move(tr);
    return m;
}

IRAction reduce_policy_rho_to_ir(const Policy& pi, const IRRewardMatrix& ir, const Belief& b) {
    return {pi.normal_action(b), ir_prediction(ir, b)};
}

SensorSet reduce_policy_ir_to_rho(const Policy& pi, const Belief& b) {
    return pi.normal_action(b);
}

namespace {

double policy_value_rec(const ActivePerceptionModel& m, const Policy& pi, int t, const Belief& b,
                        long& nodes, long max_nodes) {
    if (++nodes > max_nodes)
        throw std::runtime_error("policy_value: expansion exceeds the node budget");
    const auto& a = pi.normal_action(b);
    const double immediate = reward_term(m, b, a);
    if (t == 0) return immediate;
    double future = 0.0;
    for (const auto& z : enumerate_observations(m, a)) {
        const double pz = observation_probability(m, b, a, z);
        if (pz <= 0.0) continue;
        future += pz * policy_value_rec(m, pi, t - 1, belief_update(m, b, a, z), nodes, max_nodes);
    }
    return immediate + m.discount * future;
}

}  // namespace

double policy_value(const ActivePerceptionModel& m, const Policy& pi, int t, const Belief& b,
                    long max_nodes) {
    long nodes = 0;
    return policy_value_rec(m, pi, t, b, nodes, max_nodes);
}

double equivalence_check(const ActivePerceptionModel& m, const Policy& pi, int t,
                         const std::vector<Belief>& beliefs) {
    const bool from_rho = std::holds_alternative<TangentRewardSet>(m.reward);
    const ActivePerceptionModel other = from_rho ? reduce_rho_to_ir(m) : reduce_ir_to_rho(m);
    double worst = 0.0;
    for (const auto& b : beliefs) {
        const double va = policy_value(m, pi, t, b);
        const double vb = policy_value(other, pi, t, b);
        worst = std::max(worst, std::abs(va - vb));
    }
    return worst;
}

}  // namespace actp
