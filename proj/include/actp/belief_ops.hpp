#pragma once

#include <vector>

#include "actp/model.hpp"
#include "actp/types.hpp"

namespace actp {

// Propagated belief before the observation arrives: pre(s') = sum_s T(s,s') b(s).
std::vector<double> pre_belief(const ActivePerceptionModel& m, const Belief& b,
                               const SensorSet& a);

// Joint likelihood weights w(s') = prod_{i in a} O_i(s', z_i); the per-sensor
// factorization is the definition, so the joint equals the product exactly.
std::vector<double> observation_weights(const ActivePerceptionModel& m, const SensorSet& a,
                                        const JointObservation& z);

// All joint observations compatible with the sensor set: the Cartesian
// product of the selected sensors' domains, null elsewhere. The last selected
// sensor's symbol varies fastest.
std::vector<JointObservation> enumerate_observations(const ActivePerceptionModel& m,
                                                     const SensorSet& a);

// Pr(z | a, b). Throws when z is not compatible with a.
double observation_probability(const ActivePerceptionModel& m, const Belief& b,
                               const SensorSet& a, const JointObservation& z);

// Bayes update. Throws std::domain_error when Pr(z | a, b) is zero.
Belief belief_update(const ActivePerceptionModel& m, const Belief& b, const SensorSet& a,
                     const JointObservation& z);

// Shannon entropy, natural log, 0 ln 0 == 0.
double belief_entropy(const Belief& b);

// Hyperplane tangent to the negative entropy surface at beta:
// alpha(s) = ln(max(beta(s), floor)). The floor keeps boundary tangents finite.
AlphaVector entropy_tangent(const Belief& beta, double floor = 1e-6);

// One tangent per point; throws on an empty list.
TangentRewardSet build_tangent_set(const std::vector<Belief>& tangent_points);

// rho(b) = max over the set of alpha . b.
double rho_eval(const TangentRewardSet& gamma_rho, const Belief& b);

}  // namespace actp
