#include "actp/value_function.hpp"

#include <stdexcept>

#include "actp/kernels.hpp"

namespace actp {

double ValueFunction::evaluate(const Belief& b) const {
    return best_vector(b).dot(b);
}

const AlphaVector& ValueFunction::best_vector(const Belief& b) const {
    if (vectors.empty()) throw std::logic_error("value function has no vectors");
    std::size_t best = 0;
    double best_val = vectors[0].dot(b);
    for (std::size_t i = 1; i < vectors.size(); ++i) {
        const double v = vectors[i].dot(b);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    return vectors[best];
}

ValueFunction initial_value_function(const ActivePerceptionModel& m) {
    ValueFunction vf;
    vf.stage = 0;
    if (const auto* tr = std::get_if<TangentRewardSet>(&m.reward)) {
        vf.vectors = tr->vectors;
    } else if (const auto* ir = std::get_if<IRRewardMatrix>(&m.reward)) {
        for (int p = 0; p < ir->num_predictions; ++p) {
            AlphaVector a;
            a.values = ir->column(p);
            a.prediction_action = p;
            vf.vectors.push_back(std::move(a));
        }
    } else {
        const auto& sr = std::get<StateReward>(m.reward);
        for (const auto& act : enumerate_actions(m.num_sensors, m.budget)) {
            AlphaVector a;
            a.values = sr.vector_for(act, m.num_states);
            a.normal_action = act;
            vf.vectors.push_back(std::move(a));
        }
    }
    return vf;
}

}  // namespace actp
