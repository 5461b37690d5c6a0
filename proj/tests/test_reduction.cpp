#include "actp/reduction.hpp"

#include <cmath>
#include <stdexcept>

#include "actp/belief_ops.hpp"
#include "actp/rng.hpp"
#include "doctest.h"
#include "support/test_models.hpp"

using namespace actp;
using namespace actp::testing;

namespace {

// Two-state model with entropy tangents taken where the peak sits on each
// state in turn, so prediction action p stands for state p.
ActivePerceptionModel two_state_tangent_model() {
    auto m = ring_model(3, 1, 0.7);  // placeholder dims, rebuilt below
    ActivePerceptionModel out;
    out.num_states = 2;
    out.num_sensors = 1;
    out.budget = 1;
    out.discount = 0.95;
    out.horizon = 3;
    out.initial_belief = {0.5, 0.5};
    out.transition = {0.7, 0.3, 0.3, 0.7};
    out.transition_active = out.transition;
    out.channels.push_back(detector_channel(2, 0, 0.75, 0.05));
    out.reward = build_tangent_set({{0.7, 0.3}, {0.3, 0.7}});
    out.validate();
    (void)m;
    return out;
}

}  // namespace

TEST_CASE("two-state tangents reduce to the small-penalty/large-penalty matrix") {
    const auto m_ir = reduce_rho_to_ir(two_state_tangent_model());
    const auto& ir = std::get<IRRewardMatrix>(m_ir.reward);
    REQUIRE(ir.num_predictions == 2);
    CHECK(ir.at(0, 0) == doctest::Approx(-0.357).epsilon(2e-3));
    CHECK(ir.at(1, 1) == doctest::Approx(-0.357).epsilon(2e-3));
    CHECK(ir.at(0, 1) == doctest::Approx(-1.204).epsilon(2e-3));
    CHECK(ir.at(1, 0) == doctest::Approx(-1.204).epsilon(2e-3));
}

TEST_CASE("a single-vector tangent set reduces to a single shared prediction") {
    auto m = two_state_tangent_model();
    auto& tr = std::get<TangentRewardSet>(m.reward);
    tr.vectors.resize(1);
    tr.tangent_points.resize(1);
    const auto m_ir = reduce_rho_to_ir(m);
    CHECK(std::get<IRRewardMatrix>(m_ir.reward).num_predictions == 1);
}

TEST_CASE("reduction stores vectors column-for-vector") {
    Rng rng(301);
    auto m = random_model(rng, 3, 2, 1, "tangent");
    auto& tr = std::get<TangentRewardSet>(m.reward);
    while (tr.vectors.size() < 5) {
        tr.vectors.push_back(entropy_tangent(random_belief(rng, 3)));
        tr.tangent_points.push_back({});
    }
    tr.vectors.resize(5);
    const auto m_ir = reduce_rho_to_ir(m);
    const auto& ir = std::get<IRRewardMatrix>(m_ir.reward);
    REQUIRE(ir.num_predictions == 5);
    for (int p = 0; p < 5; ++p)
        for (int s = 0; s < 3; ++s) CHECK(ir.at(s, p) == tr.vectors[p].values[s]);
}

TEST_CASE("the +1 prediction reward becomes the corner-vector set") {
    Rng rng(303);
    auto m = random_model(rng, 3, 2, 1, "ir");
    m.reward = correct_prediction_reward(3);
    const auto m_rho = reduce_ir_to_rho(m);
    const auto& tr = std::get<TangentRewardSet>(m_rho.reward);
    REQUIRE(tr.vectors.size() == 3);
    for (int i = 0; i < 20; ++i) {
        const auto b = random_belief(rng, 3);
        double max_mass = 0.0;
        for (double x : b) max_mass = std::max(max_mass, x);
        CHECK(rho_eval(tr, b) == doctest::Approx(max_mass));
    }
}

TEST_CASE("reductions round-trip up to vector order") {
    const auto m = two_state_tangent_model();
    const auto& before = std::get<TangentRewardSet>(m.reward);
    const auto back = reduce_ir_to_rho(reduce_rho_to_ir(m));
    const auto& after = std::get<TangentRewardSet>(back.reward);
    REQUIRE(after.vectors.size() == before.vectors.size());
    for (std::size_t j = 0; j < before.vectors.size(); ++j)
        CHECK(after.vectors[j].values == before.vectors[j].values);

    Rng rng(305);
    auto m46 = random_model(rng, 4, 2, 1, "ir");
    auto& ir = std::get<IRRewardMatrix>(m46.reward);
    ir.num_predictions = 6;
    ir.values.assign(24, 0.0);
    for (auto& v : ir.values) v = rng.next_double();
    CHECK(std::get<TangentRewardSet>(reduce_ir_to_rho(m46).reward).vectors.size() == 6);
}

TEST_CASE("policy reductions pick the argmax prediction with low-index ties") {
    const auto eq10 = correct_prediction_reward(2);
    Policy pi;
    pi.add({0.5, 0.5}, {0});
    CHECK(reduce_policy_rho_to_ir(pi, eq10, {0.5, 0.5}).prediction == 0);  // tie
    CHECK(reduce_policy_rho_to_ir(pi, eq10, {0.0, 1.0}).prediction == 1);

    const auto m_ir = reduce_rho_to_ir(two_state_tangent_model());
    const auto& ir = std::get<IRRewardMatrix>(m_ir.reward);
    CHECK(ir_prediction(ir, {0.3, 0.7}) == 1);

    CHECK(reduce_policy_ir_to_rho(pi, {0.5, 0.5}) == SensorSet{0});
}

TEST_CASE("policy_value base case is the reward term") {
    const auto m = two_state_tangent_model();
    Policy pi;
    pi.add(m.initial_belief, {0});
    const auto& tr = std::get<TangentRewardSet>(m.reward);
    CHECK(policy_value(m, pi, 0, m.initial_belief) ==
          doctest::Approx(rho_eval(tr, m.initial_belief)));
}

TEST_CASE("policy_value t=1 matches a hand expansion over two observations") {
    const auto m = two_state_tangent_model();
    const auto& tr = std::get<TangentRewardSet>(m.reward);
    const Belief b{0.5, 0.5};
    Policy pi = random_tree_policy(m, {b}, 1, 99);
    const auto& a = pi.normal_action(b);
    double expect = rho_eval(tr, b);
    for (const auto& z : enumerate_observations(m, a)) {
        const double pz = observation_probability(m, b, a, z);
        if (pz <= 0.0) continue;
        expect += m.discount * pz * rho_eval(tr, belief_update(m, b, a, z));
    }
    CHECK(policy_value(m, pi, 1, b) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("policy_value enforces its node budget") {
    Rng rng(307);
    auto m = random_model(rng, 4, 4, 2, "tangent", 8);
    std::vector<Belief> roots{m.initial_belief};
    Policy pi = random_tree_policy(m, roots, 3, 1);
    CHECK_THROWS_AS(policy_value(m, pi, 8, m.initial_belief, 1000), std::runtime_error);
}

TEST_CASE("value functions transfer exactly across the reduction in both directions") {
    Rng rng(309);
    for (int trial = 0; trial < 4; ++trial) {
        auto m = random_model(rng, 3, 3, 2, trial % 2 == 0 ? "tangent" : "ir", 3);
        std::vector<Belief> beliefs;
        for (int i = 0; i < 10; ++i) beliefs.push_back(random_belief(rng, 3));
        for (int t = 1; t <= 3; ++t) {
            const auto pi = random_tree_policy(m, beliefs, t, 17 * trial + t);
            CHECK(equivalence_check(m, pi, t, beliefs) <= 1e-9);
        }
    }
}

TEST_CASE("reduced rewards agree pointwise") {
    Rng rng(311);
    auto m = random_model(rng, 4, 2, 1, "tangent");
    const auto m_ir = reduce_rho_to_ir(m);
    const auto& tr = std::get<TangentRewardSet>(m.reward);
    const auto& ir = std::get<IRRewardMatrix>(m_ir.reward);
    for (int i = 0; i < 50; ++i) {
        const auto b = random_belief(rng, 4);
        double best = -1e300;
        for (int p = 0; p < ir.num_predictions; ++p) {
            double v = 0.0;
            for (int s = 0; s < 4; ++s) v += b[s] * ir.at(s, p);
            best = std::max(best, v);
        }
        CHECK(rho_eval(tr, b) == doctest::Approx(best));
    }
}
