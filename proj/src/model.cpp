#include "actp/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace actp {

namespace {

void check_row_stochastic(const std::vector<double>& m, int rows, int cols,
                          const std::string& what) {
    if (m.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument(what + ": wrong dimensions");
    for (int r = 0; r < rows; ++r) {
        double total = 0.0;
        for (int c = 0; c < cols; ++c) {
            const double v = m[static_cast<std::size_t>(r) * cols + c];
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument(what + ": negative or non-finite entry");
            total += v;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument(what + ": row " + std::to_string(r) +
                                        " sums to " + std::to_string(total));
    }
}

}  // namespace

std::vector<double> IRRewardMatrix::column(int p) const {
    std::vector<double> col(values.size() / num_predictions);
    for (std::size_t s = 0; s < col.size(); ++s) col[s] = values[s * num_predictions + p];
    return col;
}

double StateReward::at(int s, const SensorSet& a) const {
    double best = 0.0;
    for (int i : a)
        best = std::max(best, sensor_values[static_cast<std::size_t>(s) * num_sensors + i]);
    return best;
}

std::vector<double> StateReward::vector_for(const SensorSet& a, int num_states) const {
    std::vector<double> r(num_states);
    for (int s = 0; s < num_states; ++s) r[s] = at(s, a);
    return r;
}

void ActivePerceptionModel::validate() const {
    if (num_states < 1) throw std::invalid_argument("model: num_states must be >= 1");
    if (num_sensors < 1) throw std::invalid_argument("model: num_sensors must be >= 1");
    if (budget < 1 || budget > num_sensors)
        throw std::invalid_argument("model: budget must be in [1, num_sensors]");
    if (!(discount > 0.0) || discount > 1.0)
        throw std::invalid_argument("model: discount must be in (0, 1]");
    if (horizon < 1) throw std::invalid_argument("model: horizon must be >= 1");
    if (initial_belief.size() != static_cast<std::size_t>(num_states) ||
        !is_distribution(initial_belief))
        throw std::invalid_argument("model: initial belief is not a distribution");
    check_row_stochastic(transition, num_states, num_states, "transition");
    check_row_stochastic(transition_active, num_states, num_states, "transition_active");
    if (channels.size() != static_cast<std::size_t>(num_sensors))
        throw std::invalid_argument("model: need one observation channel per sensor");
    for (int i = 0; i < num_sensors; ++i) {
        if (channels[i].num_symbols < 1)
            throw std::invalid_argument("channel " + std::to_string(i) + ": empty domain");
        check_row_stochastic(channels[i].probs, num_states, channels[i].num_symbols,
                             "channel " + std::to_string(i));
    }
    if (const auto* ir = std::get_if<IRRewardMatrix>(&reward)) {
        if (ir->num_predictions < 1 ||
            ir->values.size() != static_cast<std::size_t>(num_states) * ir->num_predictions)
            throw std::invalid_argument("model: bad IR reward dimensions");
    } else if (const auto* tr = std::get_if<TangentRewardSet>(&reward)) {
        if (tr->vectors.empty()) throw std::invalid_argument("model: empty tangent set");
        for (const auto& v : tr->vectors)
            if (v.values.size() != static_cast<std::size_t>(num_states))
                throw std::invalid_argument("model: tangent vector has wrong length");
    } else {
        const auto& sr = std::get<StateReward>(reward);
        if (sr.num_sensors != num_sensors ||
            sr.sensor_values.size() != static_cast<std::size_t>(num_states) * num_sensors)
            throw std::invalid_argument("model: bad state reward dimensions");
    }
}

std::vector<SensorSet> enumerate_actions(int num_sensors, int budget) {
    std::vector<SensorSet> out;
    out.emplace_back();  // empty set first
    std::vector<int> comb;
    for (int k = 1; k <= std::min(budget, num_sensors); ++k) {
        comb.assign(k, 0);
        for (int i = 0; i < k; ++i) comb[i] = i;
        while (true) {
            out.emplace_back(comb.begin(), comb.end());
            int i = k - 1;
            while (i >= 0 && comb[i] == num_sensors - k + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return out;
}

const char* reward_kind_name(const Reward& r) {
    if (std::holds_alternative<TangentRewardSet>(r)) return "tangent";
    if (std::holds_alternative<IRRewardMatrix>(r)) return "ir";
    return "state";
}

}  // namespace actp
