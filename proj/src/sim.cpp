#include "actp/sim.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "actp/belief_ops.hpp"
#include "actp/detail/flat_gamma.hpp"
#include "actp/greedy.hpp"
#include "actp/kernels.hpp"
#include "actp/parallel.hpp"
#include "actp/pbvi.hpp"
#include "actp/reduction.hpp"
#include "actp/rng.hpp"

namespace actp {

namespace {

using kernels::ops;

// Inverse-CDF draw from a probability row. States are ordered cell-major in
// the budget-augmented models, so the same uniform picks the same cell under
// the idle and the active transition; paired runs stay paired.
int sample_row(const double* row, int n, double u) {
    double acc = 0.0;
    int last_positive = 0;
    for (int i = 0; i < n; ++i) {
        if (row[i] <= 0.0) continue;
        last_positive = i;
        acc += row[i];
        if (u < acc) return i;
    }
    return last_positive;
}

// Dynamics-blind immediate-reward maximization: expected best prediction
// after one observation, scored on the current belief without propagating it
// through the transition. Requires an IR reward.
SensorSet myopic_action(const ActivePerceptionModel& m, const IRRewardMatrix& ir,
                        const Belief& b) {
    double best = -std::numeric_limits<double>::infinity();
    SensorSet best_a;
    for (const auto& a : enumerate_actions(m.num_sensors, m.budget)) {
        double score = 0.0;
        for (const auto& z : enumerate_observations(m, a)) {
            const auto w = observation_weights(m, a, z);
            double best_pred = -std::numeric_limits<double>::infinity();
            for (int p = 0; p < ir.num_predictions; ++p) {
                double v = 0.0;
                for (int s = 0; s < m.num_states; ++s)
                    v += w[s] * b[s] * ir.at(s, p);
                best_pred = std::max(best_pred, v);
            }
            score += best_pred;
        }
        if (score > best) {
            best = score;
            best_a = a;
        }
    }
    return best_a;
}

struct Prediction {
    int index;    // prediction action / tangent index / argmax state
    int peak;     // state the prediction stands for
    double gain;  // model reward at the true state
    bool correct;
};

Prediction predict(const ActivePerceptionModel& m, const Belief& b, int true_state) {
    Prediction out{};
    if (const auto* ir = std::get_if<IRRewardMatrix>(&m.reward)) {
        out.index = ir_prediction(*ir, b);
        int peak = 0;
        for (int s = 1; s < m.num_states; ++s)
            if (ir->at(s, out.index) > ir->at(peak, out.index)) peak = s;
        out.peak = peak;
        out.gain = ir->at(true_state, out.index);
        out.correct = out.gain > 0.0;
        return out;
    }
    if (const auto* tr = std::get_if<TangentRewardSet>(&m.reward)) {
        std::size_t best_j = 0;
        double best = tr->vectors[0].dot(b);
        for (std::size_t j = 1; j < tr->vectors.size(); ++j) {
            const double v = tr->vectors[j].dot(b);
            if (v > best) {
                best = v;
                best_j = j;
            }
        }
        const auto& vec = tr->vectors[best_j].values;
        int peak = 0;
        for (int s = 1; s < m.num_states; ++s)
            if (vec[s] > vec[peak]) peak = s;
        out.index = static_cast<int>(best_j);
        out.peak = peak;
        out.gain = vec[true_state];
        out.correct = peak == true_state;
        return out;
    }
    // state reward: predict the most likely state
    int peak = 0;
    for (int s = 1; s < m.num_states; ++s)
        if (b[s] > b[peak]) peak = s;
    out.index = peak;
    out.peak = peak;
    out.correct = peak == true_state;
    out.gain = out.correct ? 1.0 : 0.0;
    return out;
}

double max_cell_belief(const Belief& b, int levels_per_cell) {
    if (levels_per_cell <= 1) {
        double best = 0.0;
        for (double x : b) best = std::max(best, x);
        return best;
    }
    double best = 0.0;
    const int cells = static_cast<int>(b.size()) / levels_per_cell;
    for (int c = 0; c < cells; ++c) {
        double mass = 0.0;
        for (int l = 0; l < levels_per_cell; ++l)
            mass += b[static_cast<std::size_t>(c) * levels_per_cell + l];
        best = std::max(best, mass);
    }
    return best;
}

}  // namespace

void SimResult::finalize() {
    mean_reward = 0.0;
    mean_correct = 0.0;
    for (double r : episode_reward) mean_reward += r;
    for (double c : episode_correct) mean_correct += c;
    const double n = static_cast<double>(episode_reward.size());
    mean_reward /= n;
    mean_correct /= n;
    double var = 0.0;
    for (double c : episode_correct) var += (c - mean_correct) * (c - mean_correct);
    stderr_correct = n > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
}

SimResult simulate(const ActivePerceptionModel& m, const ValueFunction* vf, SimPolicy policy,
                   const SimOptions& options) {
    if ((policy == SimPolicy::value_function || policy == SimPolicy::greedy_vf) && vf == nullptr)
        throw std::invalid_argument("simulate: this policy needs a value function");
    const auto* ir = std::get_if<IRRewardMatrix>(&m.reward);
    if (policy == SimPolicy::myopic && ir == nullptr)
        throw std::invalid_argument("simulate: the myopic policy needs an IR reward");

    // Shared per-policy machinery, built once.
    std::unique_ptr<ExecutionPolicy> exec;
    std::unique_ptr<detail::FlatGamma> flat;
    if (policy == SimPolicy::value_function) exec = std::make_unique<ExecutionPolicy>(m, *vf);
    if (policy == SimPolicy::greedy_vf) flat = std::make_unique<detail::FlatGamma>(*vf);

    SimResult result;
    result.rows.resize(static_cast<std::size_t>(options.episodes) * options.steps);
    result.episode_reward.assign(options.episodes, 0.0);
    result.episode_correct.assign(options.episodes, 0.0);

    Rng base(options.seed);
    parallel_for(static_cast<std::size_t>(options.episodes), [&](std::size_t ep) {
        Rng state_rng = base.fork(2 * ep);
        Rng obs_rng = base.fork(2 * ep + 1);
        Belief b = m.initial_belief;
        int s = sample_row(m.initial_belief.data(), m.num_states, state_rng.next_double());
        double reward_sum = 0.0, correct_sum = 0.0;
        for (int step = 0; step < options.steps; ++step) {
            SensorSet a;
            switch (policy) {
                case SimPolicy::value_function: a = exec->action(b); break;
                case SimPolicy::greedy_vf: {
                    const auto q = q_from_gamma(m, *vf, b);
                    std::vector<int> ground(m.num_sensors);
                    for (int i = 0; i < m.num_sensors; ++i) ground[i] = i;
                    a = greedy_argmax(q, ground, m.budget);
                    break;
                }
                case SimPolicy::myopic: a = myopic_action(m, *ir, b); break;
                case SimPolicy::rotate: a = rotate_policy(step, m.num_sensors); break;
            }
            const auto& t = m.transition_for(a);
            s = sample_row(t.data() + static_cast<std::size_t>(s) * m.num_states, m.num_states,
                           state_rng.next_double());
            JointObservation z(m.num_sensors, kNullSymbol);
            for (int i = 0; i < m.num_sensors; ++i) {
                const double u = obs_rng.next_double();  // drawn for every sensor, selected or not
                if (!std::binary_search(a.begin(), a.end(), i)) continue;
                const auto& ch = m.channels[i];
                z[i] = sample_row(ch.probs.data() + static_cast<std::size_t>(s) * ch.num_symbols,
                                  ch.num_symbols, u);
            }
            b = belief_update(m, b, a, z);
            const auto pred = predict(m, b, s);
            reward_sum += pred.gain;
            correct_sum += pred.correct ? 1.0 : 0.0;
            result.rows[ep * options.steps + step] =
                StepRecord{static_cast<int>(ep), step,    s, pred.index, pred.correct,
                           max_cell_belief(b, options.levels_per_cell), a};
        }
        result.episode_reward[ep] = reward_sum;
        result.episode_correct[ep] = correct_sum;
    });
    result.finalize();
    return result;
}

double factored_value(const ValueFunction& vf, const std::vector<Belief>& persons) {
    double total = 0.0;
    for (const auto& b : persons) total += vf.evaluate(b);
    return total;
}

SensorSet factored_action(const ActivePerceptionModel& m, const ValueFunction& vf,
                          const std::vector<Belief>& persons, bool greedy) {
    if (greedy) {
        std::vector<SetFunction> per_person;
        per_person.reserve(persons.size());
        for (const auto& b : persons) per_person.push_back(q_from_gamma(m, vf, b));
        SetFunction total([&per_person](const SensorSet& a) {
            double q = 0.0;
            for (const auto& f : per_person) q += f(a);
            return q;
        });
        std::vector<int> ground(m.num_sensors);
        for (int i = 0; i < m.num_sensors; ++i) ground[i] = i;
        return greedy_argmax(total, ground, m.budget);
    }
    double best = -std::numeric_limits<double>::infinity();
    SensorSet best_a;
    for (const auto& a : enumerate_actions(m.num_sensors, m.budget)) {
        double q = 0.0;
        for (const auto& b : persons)
            q += reward_term(m, b, a) + continuation_value(m, vf, b, a);
        if (q > best) {
            best = q;
            best_a = a;
        }
    }
    return best_a;
}

SimResult simulate_multi(const ActivePerceptionModel& m, const ValueFunction& vf, int persons,
                         bool greedy, const SimOptions& options) {
    if (persons < 1) throw std::invalid_argument("simulate_multi: persons must be >= 1");
    SimResult result;
    result.rows.resize(static_cast<std::size_t>(options.episodes) * options.steps * persons);
    result.episode_reward.assign(options.episodes, 0.0);
    result.episode_correct.assign(options.episodes, 0.0);

    Rng base(options.seed);
    parallel_for(static_cast<std::size_t>(options.episodes), [&](std::size_t ep) {
        std::vector<Rng> state_rng, obs_rng;
        std::vector<Belief> beliefs(persons, m.initial_belief);
        std::vector<int> states(persons);
        for (int p = 0; p < persons; ++p) {
            state_rng.push_back(base.fork(64 * ep + 2 * p));
            obs_rng.push_back(base.fork(64 * ep + 2 * p + 1));
            states[p] =
                sample_row(m.initial_belief.data(), m.num_states, state_rng[p].next_double());
        }
        double reward_sum = 0.0, correct_sum = 0.0;
        for (int step = 0; step < options.steps; ++step) {
            const auto a = factored_action(m, vf, beliefs, greedy);
            for (int p = 0; p < persons; ++p) {
                const auto& t = m.transition_for(a);
                states[p] = sample_row(
                    t.data() + static_cast<std::size_t>(states[p]) * m.num_states, m.num_states,
                    state_rng[p].next_double());
                JointObservation z(m.num_sensors, kNullSymbol);
                for (int i = 0; i < m.num_sensors; ++i) {
                    const double u = obs_rng[p].next_double();
                    if (!std::binary_search(a.begin(), a.end(), i)) continue;
                    const auto& ch = m.channels[i];
                    z[i] = sample_row(
                        ch.probs.data() + static_cast<std::size_t>(states[p]) * ch.num_symbols,
                        ch.num_symbols, u);
                }
                beliefs[p] = belief_update(m, beliefs[p], a, z);
                const auto pred = predict(m, beliefs[p], states[p]);
                reward_sum += pred.gain;
                correct_sum += pred.correct ? 1.0 : 0.0;
                result.rows[(ep * options.steps + step) * persons + p] =
                    StepRecord{static_cast<int>(ep), step, states[p], pred.index, pred.correct,
                               max_cell_belief(beliefs[p], options.levels_per_cell), a};
            }
        }
        result.episode_reward[ep] = reward_sum;
        result.episode_correct[ep] = correct_sum;
    });
    result.finalize();
    return result;
}

std::string metrics_to_csv(const SimResult& result) {
    std::ostringstream os;
    os << "episode,step,true_state,predicted,correct,max_belief,sensors\n";
    os.precision(10);
    for (const auto& r : result.rows) {
        os << r.episode << ',' << r.step << ',' << r.true_state << ',' << r.predicted << ','
           << (r.correct ? 1 : 0) << ',' << r.max_belief << ',';
        for (std::size_t i = 0; i < r.sensors.size(); ++i)
            os << (i ? ";" : "") << r.sensors[i];
        os << '\n';
    }
    return os.str();
}

}  // namespace actp
