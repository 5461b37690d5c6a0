#pragma once

#include <vector>

#include "actp/detail/flat_gamma.hpp"
#include "actp/kernels.hpp"
#include "actp/model.hpp"
#include "actp/types.hpp"

namespace actp::detail {

// Shared continuation machinery for every backup variant and for execution,
// so equal-valued candidates resolve identically everywhere (the greedy and
// exact solvers must agree bitwise where the theory says they coincide).
//
// For one action a and observation z the continuation contribution is
//   max_j  alpha_j . (w_z o pre)        with pre(s') = sum_s T_a(s,s') b(s),
// summed over z and scaled by gamma once. Only the winning alpha_j is ever
// back-projected (one matvec), when a candidate vector is assembled.

struct ScanScratch {
    std::vector<double> w, scaled, tmp, proj;
    std::vector<std::size_t> winners;

    void resize(int num_states) {
        w.resize(num_states);
        scaled.resize(num_states);
        tmp.resize(num_states);
        proj.resize(num_states);
    }
};

// w(s') = prod_{i in a} O_i(s', z_i), written into scratch.w.
inline void make_weights(const ActivePerceptionModel& m, const SensorSet& a,
                         const JointObservation& z, std::vector<double>& w) {
    std::fill(w.begin(), w.end(), 1.0);
    for (int i : a) {
        const auto& ch = m.channels[i];
        for (int s = 0; s < m.num_states; ++s) w[s] *= ch.at(s, z[i]);
    }
}

// pre(s') = sum_s T_a(s,s') b(s) for one transition matrix.
inline std::vector<double> propagate(const ActivePerceptionModel& m,
                                     const std::vector<double>& t, const Belief& b) {
    std::vector<double> pre(m.num_states, 0.0);
    for (int s = 0; s < m.num_states; ++s) {
        if (b[s] == 0.0) continue;
        kernels::ops().axpy(pre.data(), b[s],
                            t.data() + static_cast<std::size_t>(s) * m.num_states,
                            m.num_states);
    }
    return pre;
}

// gamma * sum_z max_j alpha_j . (w_z o pre); winners[zi] records the argmax.
inline double weighted_scan(const ActivePerceptionModel& m, const FlatGamma& flat,
                            const std::vector<double>& pre, const SensorSet& a,
                            const std::vector<JointObservation>& obs, ScanScratch& scratch) {
    scratch.winners.resize(obs.size());
    double total = 0.0;
    for (std::size_t zi = 0; zi < obs.size(); ++zi) {
        make_weights(m, a, obs[zi], scratch.w);
        kernels::ops().mul(scratch.scaled.data(), scratch.w.data(), pre.data(), m.num_states);
        const auto best = kernels::ops().argmax_dot(flat.rows.data(), flat.count,
                                                    flat.num_states, scratch.scaled.data());
        scratch.winners[zi] = best.index;
        total += best.value;
    }
    return m.discount * total;
}

// alpha += gamma * T_a . (w_z o alpha_winner) summed over z.
inline void assemble_winners(const ActivePerceptionModel& m, const ValueFunction& prev,
                             const SensorSet& a, const std::vector<JointObservation>& obs,
                             const std::vector<std::size_t>& winners, ScanScratch& scratch,
                             std::vector<double>& alpha) {
    const auto& t = m.transition_for(a);
    for (std::size_t zi = 0; zi < obs.size(); ++zi) {
        make_weights(m, a, obs[zi], scratch.w);
        kernels::ops().mul(scratch.tmp.data(), scratch.w.data(),
                           prev.vectors[winners[zi]].values.data(), m.num_states);
        kernels::ops().matvec(scratch.proj.data(), t.data(), m.num_states, m.num_states,
                              scratch.tmp.data());
        kernels::ops().axpy(alpha.data(), m.discount, scratch.proj.data(), m.num_states);
    }
}

// All joint observations of a sensor set, without the budget precondition
// (greedy marginal gains probe one element past the budget).
inline std::vector<JointObservation> observations_unbounded(const ActivePerceptionModel& m,
                                                            const SensorSet& a) {
    std::vector<JointObservation> out;
    JointObservation z(m.num_sensors, kNullSymbol);
    for (int i : a) z[i] = 0;
    while (true) {
        out.push_back(z);
        int k = static_cast<int>(a.size()) - 1;
        for (; k >= 0; --k) {
            if (++z[a[k]] < m.channels[a[k]].num_symbols) break;
            z[a[k]] = 0;
        }
        if (k < 0) break;
    }
    return out;
}

}  // namespace actp::detail
