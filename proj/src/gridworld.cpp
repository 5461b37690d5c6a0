#include "actp/gridworld.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "actp/belief_ops.hpp"

namespace actp {

void GridworldSpec::validate() const {
    if (num_cells < 3) throw std::invalid_argument("gridworld: need at least 3 cells for a ring");
    if (p_stay < 0.0 || p_stay > 1.0) throw std::invalid_argument("gridworld: p_stay out of range");
    if (true_positive < 0.0 || true_positive > 1.0 || false_positive < 0.0 ||
        false_positive > 1.0)
        throw std::invalid_argument("gridworld: detector rates out of range");
    if (budget < 1 || budget > num_cells)
        throw std::invalid_argument("gridworld: budget out of range");
    if (!(discount > 0.0) || discount > 1.0)
        throw std::invalid_argument("gridworld: discount out of range");
    if (horizon < 1) throw std::invalid_argument("gridworld: horizon must be >= 1");
}

namespace {

std::vector<double> ring_transition(int cells, double p_stay) {
    std::vector<double> t(static_cast<std::size_t>(cells) * cells, 0.0);
    for (int c = 0; c < cells; ++c) {
        t[static_cast<std::size_t>(c) * cells + c] += p_stay;
        t[static_cast<std::size_t>(c) * cells + (c + 1) % cells] += (1 - p_stay) / 2;
        t[static_cast<std::size_t>(c) * cells + (c + cells - 1) % cells] += (1 - p_stay) / 2;
    }
    return t;
}

ObservationChannel cell_detector(int states, int cell, double tp, double fp) {
    ObservationChannel ch;
    ch.num_symbols = 2;  // present, absent
    ch.probs.resize(static_cast<std::size_t>(states) * 2);
    for (int s = 0; s < states; ++s) {
        const double p = s == cell ? tp : fp;
        ch.probs[static_cast<std::size_t>(s) * 2] = p;
        ch.probs[static_cast<std::size_t>(s) * 2 + 1] = 1 - p;
    }
    return ch;
}

ActivePerceptionModel base_model(const GridworldSpec& spec) {
    spec.validate();
    ActivePerceptionModel m;
    m.num_states = spec.num_cells;
    m.num_sensors = spec.num_cells;  // one camera per cell
    m.budget = spec.budget;
    m.discount = spec.discount;
    m.horizon = spec.horizon;
    m.initial_belief.assign(spec.num_cells, 1.0 / spec.num_cells);
    m.transition = ring_transition(spec.num_cells, spec.p_stay);
    m.transition_active = m.transition;
    for (int i = 0; i < spec.num_cells; ++i)
        m.channels.push_back(
            cell_detector(spec.num_cells, i, spec.true_positive, spec.false_positive));
    return m;
}

}  // namespace

ActivePerceptionModel build_gridworld(const GridworldSpec& spec) {
    auto m = base_model(spec);
    IRRewardMatrix ir;
    ir.num_predictions = spec.num_cells;
    ir.values.assign(static_cast<std::size_t>(spec.num_cells) * spec.num_cells, 0.0);
    for (int c = 0; c < spec.num_cells; ++c)
        ir.values[static_cast<std::size_t>(c) * spec.num_cells + c] = 1.0;
    m.reward = std::move(ir);
    m.validate();
    return m;
}

ActivePerceptionModel coverage_model(const GridworldSpec& spec) {
    auto m = base_model(spec);
    StateReward sr;
    sr.num_sensors = spec.num_cells;
    sr.sensor_values.assign(static_cast<std::size_t>(spec.num_cells) * spec.num_cells, 0.0);
    for (int c = 0; c < spec.num_cells; ++c)
        sr.sensor_values[static_cast<std::size_t>(c) * spec.num_cells + c] = 1.0;
    m.reward = std::move(sr);
    m.validate();
    return m;
}

ActivePerceptionModel tangent_gridworld(const GridworldSpec& spec,
                                        const std::vector<double>& levels) {
    if (levels.empty()) throw std::invalid_argument("tangent_gridworld: need at least one level");
    auto m = base_model(spec);
    std::vector<Belief> pts;
    for (int c = 0; c < spec.num_cells; ++c)
        for (double level : levels) {
            if (level <= 0.0 || level >= 1.0)
                throw std::invalid_argument("tangent_gridworld: levels must be in (0,1)");
            Belief beta(spec.num_cells, (1 - level) / (spec.num_cells - 1));
            beta[c] = level;
            pts.push_back(std::move(beta));
        }
    m.reward = build_tangent_set(pts);
    m.validate();
    return m;
}

ActivePerceptionModel budget_model(const GridworldSpec& spec, int total_uses, int steps,
                                   BudgetModelLayout* layout) {
    spec.validate();
    if (total_uses < 0) throw std::invalid_argument("budget_model: total_uses must be >= 0");
    if (steps < 1) throw std::invalid_argument("budget_model: steps must be >= 1");
    const int cells = spec.num_cells;
    const int levels = total_uses + 2;  // uses-left 0..total_uses, then dead
    const int dead = levels - 1;
    const int states = cells * levels;
    const auto base_t = ring_transition(cells, spec.p_stay);

    ActivePerceptionModel m;
    m.num_states = states;
    m.num_sensors = cells;
    m.budget = spec.budget;
    m.discount = spec.discount;
    m.horizon = spec.horizon;
    m.initial_belief.assign(states, 0.0);
    for (int c = 0; c < cells; ++c)
        m.initial_belief[static_cast<std::size_t>(c) * levels + total_uses] = 1.0 / cells;

    auto idx = [levels](int cell, int lvl) {
        return static_cast<std::size_t>(cell) * levels + lvl;
    };
    m.transition.assign(static_cast<std::size_t>(states) * states, 0.0);
    m.transition_active.assign(static_cast<std::size_t>(states) * states, 0.0);
    for (int c = 0; c < cells; ++c)
        for (int c2 = 0; c2 < cells; ++c2) {
            const double p = base_t[static_cast<std::size_t>(c) * cells + c2];
            if (p == 0.0) continue;
            for (int l = 0; l < levels; ++l) {
                // idle: level unchanged
                m.transition[idx(c, l) * states + idx(c2, l)] = p;
                // sensing: spend one use; exhausted or dead goes to dead
                const int next = l == dead ? dead : (l == 0 ? dead : l - 1);
                m.transition_active[idx(c, l) * states + idx(c2, next)] = p;
            }
        }
    for (int i = 0; i < cells; ++i) {
        ObservationChannel ch;
        ch.num_symbols = 2;
        ch.probs.resize(static_cast<std::size_t>(states) * 2);
        for (int c = 0; c < cells; ++c)
            for (int l = 0; l < levels; ++l) {
                const double p =
                    l == dead ? 0.5 : (c == i ? spec.true_positive : spec.false_positive);
                ch.probs[idx(c, l) * 2] = p;
                ch.probs[idx(c, l) * 2 + 1] = 1 - p;
            }
        m.channels.push_back(std::move(ch));
    }
    IRRewardMatrix ir;
    ir.num_predictions = cells;
    ir.values.assign(static_cast<std::size_t>(states) * cells, 0.0);
    for (int c = 0; c < cells; ++c)
        for (int l = 0; l < levels; ++l)
            ir.values[idx(c, l) * cells + c] = 1.0;
    m.reward = std::move(ir);
    m.validate();
    if (layout != nullptr) *layout = BudgetModelLayout{cells, levels};
    return m;
}

ActivePerceptionModel important_cells_model(const GridworldSpec& spec,
                                            const std::vector<int>& cells) {
    if (cells.empty())
        throw std::invalid_argument("important_cells_model: need at least one important cell");
    auto sorted = cells;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int c : sorted)
        if (c < 0 || c >= spec.num_cells)
            throw std::invalid_argument("important_cells_model: cell index out of range");
    auto m = base_model(spec);
    IRRewardMatrix ir;
    const int important = static_cast<int>(sorted.size());
    ir.num_predictions = important + 1;  // listed cells, then "elsewhere"
    ir.values.assign(static_cast<std::size_t>(spec.num_cells) * ir.num_predictions, 0.0);
    for (int j = 0; j < important; ++j)
        ir.values[static_cast<std::size_t>(sorted[j]) * ir.num_predictions + j] = 1.0;
    for (int c = 0; c < spec.num_cells; ++c)
        if (!std::binary_search(sorted.begin(), sorted.end(), c))
            ir.values[static_cast<std::size_t>(c) * ir.num_predictions + important] = 1.0;
    m.reward = std::move(ir);
    m.validate();
    return m;
}

SensorSet rotate_policy(int step, int num_sensors) {
    return {step % num_sensors};
}

}  // namespace actp
