#include "actp/belief_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "actp/kernels.hpp"

namespace actp {

std::vector<double> pre_belief(const ActivePerceptionModel& m, const Belief& b,
                               const SensorSet& a) {
    const auto& t = m.transition_for(a);
    std::vector<double> pre(m.num_states, 0.0);
    for (int s = 0; s < m.num_states; ++s) {
        if (b[s] == 0.0) continue;
        kernels::ops().axpy(pre.data(), b[s], t.data() + static_cast<std::size_t>(s) * m.num_states,
                            m.num_states);
    }
    return pre;
}

std::vector<double> observation_weights(const ActivePerceptionModel& m, const SensorSet& a,
                                        const JointObservation& z) {
    std::vector<double> w(m.num_states, 1.0);
    for (int i : a) {
        const auto& ch = m.channels[i];
        for (int s = 0; s < m.num_states; ++s) w[s] *= ch.at(s, z[i]);
    }
    return w;
}

std::vector<JointObservation> enumerate_observations(const ActivePerceptionModel& m,
                                                     const SensorSet& a) {
    if (static_cast<int>(a.size()) > m.budget)
        throw std::invalid_argument("enumerate_observations: sensor set exceeds budget");
    std::vector<JointObservation> out;
    JointObservation z(m.num_sensors, kNullSymbol);
    for (int i : a) z[i] = 0;
    while (true) {
        out.push_back(z);
        // odometer over the selected sensors, last one fastest
        int k = static_cast<int>(a.size()) - 1;
        for (; k >= 0; --k) {
            const int sensor = a[k];
            if (++z[sensor] < m.channels[sensor].num_symbols) break;
            z[sensor] = 0;
        }
        if (k < 0) break;
    }
    return out;
}

double observation_probability(const ActivePerceptionModel& m, const Belief& b,
                               const SensorSet& a, const JointObservation& z) {
    if (!observation_matches_action(z, a))
        throw std::invalid_argument("observation incompatible with sensor set");
    const auto pre = pre_belief(m, b, a);
    const auto w = observation_weights(m, a, z);
    return kernels::ops().dot(w.data(), pre.data(), m.num_states);
}

Belief belief_update(const ActivePerceptionModel& m, const Belief& b, const SensorSet& a,
                     const JointObservation& z) {
    if (!observation_matches_action(z, a))
        throw std::invalid_argument("observation incompatible with sensor set");
    const auto pre = pre_belief(m, b, a);
    auto w = observation_weights(m, a, z);
    kernels::ops().mul(w.data(), w.data(), pre.data(), m.num_states);
    const double pz = kernels::ops().sum(w.data(), m.num_states);
    if (!(pz > 0.0))
        throw std::domain_error("belief_update: observation has zero probability");
    for (double& x : w) x /= pz;
    return w;
}

double belief_entropy(const Belief& b) {
    double h = 0.0;
    for (double p : b)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

AlphaVector entropy_tangent(const Belief& beta, double floor) {
    AlphaVector alpha;
    alpha.values.resize(beta.size());
    for (std::size_t s = 0; s < beta.size(); ++s)
        alpha.values[s] = std::log(std::max(beta[s], floor));
    return alpha;
}

TangentRewardSet build_tangent_set(const std::vector<Belief>& tangent_points) {
    if (tangent_points.empty())
        throw std::invalid_argument("build_tangent_set: need at least one tangent point");
    TangentRewardSet set;
    set.tangent_points = tangent_points;
    set.vectors.reserve(tangent_points.size());
    for (const auto& beta : tangent_points) set.vectors.push_back(entropy_tangent(beta));
    return set;
}

double rho_eval(const TangentRewardSet& gamma_rho, const Belief& b) {
    double best = gamma_rho.vectors.front().dot(b);
    for (std::size_t i = 1; i < gamma_rho.vectors.size(); ++i)
        best = std::max(best, gamma_rho.vectors[i].dot(b));
    return best;
}

}  // namespace actp
