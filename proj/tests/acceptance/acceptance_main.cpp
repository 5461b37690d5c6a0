// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Tolerances and thresholds are pinned in code; runtimes print next to
// each line. Heavier experiment criteria pin their seeds so runs reproduce.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "actp/belief_ops.hpp"
#include "actp/gridworld.hpp"
#include "actp/greedy.hpp"
#include "actp/parallel.hpp"
#include "actp/pbvi.hpp"
#include "actp/reduction.hpp"
#include "actp/rng.hpp"
#include "actp/sim.hpp"
#include "actp/verify.hpp"

using namespace actp;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::vector<Belief> random_beliefs(int states, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Belief> out;
    for (int i = 0; i < count; ++i) {
        Belief b(states);
        double tot = 0.0;
        for (auto& x : b) {
            x = 0.02 + rng.next_double();
            tot += x;
        }
        for (auto& x : b) x /= tot;
        out.push_back(std::move(b));
    }
    return out;
}

// Conditionally independent binary detector model over a ring (or a frozen
// ring when static_state is set), entropy rewards are applied by the checks.
ActivePerceptionModel detector_model(int states, int sensors, int k, bool static_state,
                                     std::uint64_t seed, double discount = 0.95) {
    Rng rng(seed);
    ActivePerceptionModel m;
    m.num_states = states;
    m.num_sensors = sensors;
    m.budget = k;
    m.discount = discount;
    m.horizon = 3;
    m.initial_belief.assign(states, 1.0 / states);
    m.transition.assign(static_cast<std::size_t>(states) * states, 0.0);
    const double p_stay = static_state ? 1.0 : 0.6 + 0.3 * rng.next_double();
    for (int s = 0; s < states; ++s) {
        m.transition[static_cast<std::size_t>(s) * states + s] += p_stay;
        m.transition[static_cast<std::size_t>(s) * states + (s + 1) % states] += (1 - p_stay) / 2;
        m.transition[static_cast<std::size_t>(s) * states + (s + states - 1) % states] +=
            (1 - p_stay) / 2;
    }
    m.transition_active = m.transition;
    for (int i = 0; i < sensors; ++i) {
        const double tp = 0.65 + 0.3 * rng.next_double();
        const double fp = 0.02 + 0.15 * rng.next_double();
        ObservationChannel ch;
        ch.num_symbols = 2;
        ch.probs.resize(static_cast<std::size_t>(states) * 2);
        for (int s = 0; s < states; ++s) {
            const double p = (s == i % states) ? tp : fp;
            ch.probs[static_cast<std::size_t>(s) * 2] = p;
            ch.probs[static_cast<std::size_t>(s) * 2 + 1] = 1 - p;
        }
        m.channels.push_back(std::move(ch));
    }
    IRRewardMatrix ir;
    ir.num_predictions = states;
    ir.values.assign(static_cast<std::size_t>(states) * states, 0.0);
    for (int s = 0; s < states; ++s) ir.values[static_cast<std::size_t>(s) * states + s] = 1.0;
    m.reward = std::move(ir);
    m.validate();
    return m;
}

// ---------------------------------------------------------------------------

Outcome criterion1_equivalence() {
    const double start = now_seconds();
    double worst = 0.0;
    for (const auto& r : suite_equivalence(7)) {
        worst = std::max(worst, r.worst);
        if (!r.passed) return {false, r.name + " deviation " + std::to_string(r.worst)};
    }
    const double elapsed = now_seconds() - start;
    std::ostringstream os;
    os << "max |V_IR - V_rho| = " << worst << ", " << elapsed << "s";
    return {worst <= 1e-9 && elapsed < 60.0, os.str()};
}

Outcome criterion2_reduction_values() {
    ActivePerceptionModel m;
    m.num_states = 2;
    m.num_sensors = 1;
    m.budget = 1;
    m.discount = 0.95;
    m.horizon = 2;
    m.initial_belief = {0.5, 0.5};
    m.transition = {0.7, 0.3, 0.3, 0.7};
    m.transition_active = m.transition;
    ObservationChannel ch;
    ch.num_symbols = 2;
    ch.probs = {0.75, 0.25, 0.05, 0.95};
    m.channels.push_back(ch);
    m.reward = build_tangent_set({{0.7, 0.3}, {0.3, 0.7}});
    m.validate();
    const auto reduced = reduce_rho_to_ir(m);
    const auto& ir = std::get<IRRewardMatrix>(reduced.reward);
    const bool diag = std::abs(ir.at(0, 0) + 0.357) <= 5e-3 && std::abs(ir.at(1, 1) + 0.357) <= 5e-3;
    const bool off = std::abs(ir.at(0, 1) + 1.204) <= 5e-3 && std::abs(ir.at(1, 0) + 1.204) <= 5e-3;
    std::ostringstream os;
    os << "diagonal " << ir.at(0, 0) << ", off-diagonal " << ir.at(1, 0);
    return {diag && off, os.str()};
}

Outcome criterion3_decomposed_naive() {
    Rng rng(33);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        auto m = detector_model(3 + static_cast<int>(rng.next_below(2)), 4, 2, false,
                                100 + trial);
        auto& ir = std::get<IRRewardMatrix>(m.reward);
        for (auto& v : ir.values) v = rng.next_double();
        const auto B = sample_beliefs(m, 30, 500 + trial);
        auto prev_n = initial_value_function(m);
        auto prev_d = prev_n;
        for (int t = 0; t < 3; ++t) {
            prev_n = backup_naive_ir(m, prev_n, B);
            prev_d = backup_decomposed_ir(m, prev_d, B);
            for (const auto& b : B.beliefs)
                worst = std::max(worst, std::abs(prev_n.evaluate(b) - prev_d.evaluate(b)));
        }
    }
    // wall-clock at N=10, K=1, |A_p|=|S|=10
    GridworldSpec spec;
    spec.num_cells = 10;
    spec.budget = 1;
    spec.p_stay = 0.7;
    spec.discount = 0.99;
    spec.horizon = 3;
    const auto grid = build_gridworld(spec);
    const auto B = sample_beliefs(grid, 100, 7);
    SolveStats naive_stats, dec_stats;
    solve(grid, B, Backend::naive_ir, &naive_stats);
    solve(grid, B, Backend::decomposed_ir, &dec_stats);
    double naive_total = 0.0, dec_total = 0.0;
    for (double s : naive_stats.stage_seconds) naive_total += s;
    for (double s : dec_stats.stage_seconds) dec_total += s;
    std::ostringstream os;
    os << "max deviation " << worst << "; naive " << naive_total << "s vs decomposed "
       << dec_total << "s";
    return {worst <= 1e-9 && dec_total < naive_total, os.str()};
}

Outcome criterion4_premise_suite() {
    const double start = now_seconds();
    double worst = 0.0;
    std::string fail;
    Rng seq_rng(44);
    // exact-entropy reward, conditionally independent channels, N <= 5, t <= 3
    for (int idx = 0; idx < 2 && fail.empty(); ++idx) {
        auto m = detector_model(4, 5, 2, true, 200 + idx);
        const auto beliefs = random_beliefs(4, 25, 300 + idx);
        const auto actions = enumerate_actions(m.num_sensors, m.budget);
        for (int t = 1; t <= 3; ++t) {
            std::vector<SensorSet> continuation;
            for (int d = 0; d < t - 1; ++d)
                continuation.push_back(actions[seq_rng.next_below(actions.size())]);
            const auto rep = check_submodularity(m, t, beliefs, continuation);
            worst = std::max(worst, rep.worst_violation);
            if (!rep.passed) fail = "submodularity (static, t=" + std::to_string(t) + ")";
        }
    }
    if (fail.empty()) {
        auto ring = detector_model(4, 5, 2, false, 210);
        const auto beliefs = random_beliefs(4, 25, 310);
        const auto rep = check_submodularity(ring, 1, beliefs, {{}});
        worst = std::max(worst, rep.worst_violation);
        if (!rep.passed) fail = "submodularity (ring, t=1)";
    }
    for (int idx = 0; idx < 2 && fail.empty(); ++idx) {
        auto m = detector_model(4, 4, 2, idx == 0, 220 + idx);
        const auto beliefs = random_beliefs(4, 25, 320 + idx);
        for (int t = 1; t <= 3; ++t) {
            const auto mono = check_monotonicity(m, t, beliefs);
            worst = std::max(worst, mono.worst);
            if (!mono.passed) fail = "monotonicity t=" + std::to_string(t);
            const auto nn = check_nonnegativity(m, t, beliefs);
            worst = std::max(worst, nn.worst);
            if (!nn.passed) fail = "nonnegativity t=" + std::to_string(t);
        }
    }
    const double elapsed = now_seconds() - start;
    std::ostringstream os;
    os << "worst violation " << worst << ", " << elapsed << "s";
    if (!fail.empty()) os << ", failed: " << fail;
    return {fail.empty() && elapsed < 300.0, os.str()};
}

Outcome criterion5_theorem4_bound() {
    double worst = -1e300;
    for (int idx = 0; idx < 2; ++idx) {
        auto m = detector_model(4, 4, 2, idx == 0, 230 + idx);
        const auto beliefs = random_beliefs(4, 25, 330 + idx);
        const auto rep = check_theorem4_bound(m, 3, beliefs);
        worst = std::max(worst, rep.worst);
        if (!rep.passed) return {false, "bound violated by " + std::to_string(rep.worst)};
    }
    std::ostringstream os;
    os << "worst slack violation " << worst << " (negative means margin)";
    return {true, os.str()};
}

Outcome criterion6_greedy_retention() {
    const double start = now_seconds();
    std::ostringstream os;
    bool ok = true;
    std::vector<std::vector<double>> ratio_by_k(4);
    for (int n : {5, 8, 11}) {
        for (int k : {1, 2, 3}) {
            GridworldSpec spec;
            spec.num_cells = n;
            spec.budget = k;
            spec.p_stay = 0.7;
            spec.discount = 0.99;
            spec.horizon = 10;
            const auto m = build_gridworld(spec);
            // K=1 margins are small, so those points get a larger workload
            // to ride out scheduler noise bursts
            const auto B = sample_beliefs(m, k == 1 ? 600 : 200, 7);
            // time the backup loops single-threaded, best of several runs, so
            // the ratios reflect work and not scheduler noise (the margins at
            // K=1 are structurally small: N+1 exact scans against N greedy ones)
            set_thread_count(1);
            std::vector<ValueFunction> full, greedy;
            double full_time = 1e300, greedy_time = 1e300;
            // paired comparison: each rep times both solvers back to back, so
            // scheduler noise hits both sides; the inequality is judged by the
            // majority of reps and the reported seconds are the per-side minima
            const int reps = k == 1 ? 9 : 3;
            int greedy_wins = 0;
            for (int rep = 0; rep < reps; ++rep) {
                SolveStats full_stats, greedy_stats;
                full = solve(m, B, Backend::decomposed_ir, &full_stats);
                greedy = greedy_solve(m, B, &greedy_stats);
                double ft = 0.0, gt = 0.0;
                for (double s : full_stats.stage_seconds) ft += s;
                for (double s : greedy_stats.stage_seconds) gt += s;
                full_time = std::min(full_time, ft);
                greedy_time = std::min(greedy_time, gt);
                if (gt < ft) ++greedy_wins;
            }
            set_thread_count(0);

            SimOptions opt;
            opt.episodes = 100;
            opt.steps = 50;
            opt.seed = 7;
            const auto full_sim = simulate(m, &full.back(), SimPolicy::value_function, opt);
            const auto greedy_sim = simulate(m, &greedy.back(), SimPolicy::greedy_vf, opt);
            const double retention = greedy_sim.mean_reward / full_sim.mean_reward;
            const bool time_ok = 2 * greedy_wins > reps;
            const bool retention_ok = retention >= 0.95;
            ok = ok && time_ok && retention_ok;
            ratio_by_k[k].push_back(full_time / greedy_time);
            os << "\n  N=" << n << " K=" << k << ": retention " << retention << ", full "
               << full_time << "s, greedy " << greedy_time << "s"
               << (time_ok ? "" : " [time FAIL]") << (retention_ok ? "" : " [retention FAIL]");
        }
    }
    // The speedup ratio must grow with N where the exact action space outgrows
    // the greedy evaluation count (K >= 2; at K=1 both enumerate ~N subsets).
    for (int k : {2, 3}) {
        for (std::size_t i = 1; i < ratio_by_k[k].size(); ++i)
            if (ratio_by_k[k][i] <= ratio_by_k[k][i - 1]) {
                ok = false;
                os << "\n  ratio not increasing in N at K=" << k;
            }
    }
    const double elapsed = now_seconds() - start;
    os << "\n  total " << elapsed << "s";
    return {ok && elapsed < 1800.0, os.str()};
}

Outcome criterion7_baseline_ordering() {
    GridworldSpec spec;
    spec.num_cells = 10;
    spec.budget = 1;
    spec.p_stay = 0.7;
    spec.discount = 0.99;
    spec.horizon = 10;
    const auto ir_model = build_gridworld(spec);
    const auto cov_model = coverage_model(spec);
    const auto B = sample_beliefs(ir_model, 1200, 11, 150);
    const auto ir_vf = solve(ir_model, B, Backend::decomposed_ir).back();
    const auto cov_vf = solve(cov_model, B, Backend::state_reward).back();
    SimOptions opt;
    opt.episodes = 100;
    opt.steps = 50;
    opt.seed = 7;
    const auto ir_sim = simulate(ir_model, &ir_vf, SimPolicy::value_function, opt);
    const auto cov_sim = simulate(cov_model, &cov_vf, SimPolicy::value_function, opt);
    const auto rot_sim = simulate(ir_model, nullptr, SimPolicy::rotate, opt);
    std::ostringstream os;
    os << "IR " << ir_sim.mean_reward << " > coverage " << cov_sim.mean_correct << " > rotate "
       << rot_sim.mean_reward << ", IR/rotate = " << ir_sim.mean_reward / rot_sim.mean_reward;
    const bool ok = ir_sim.mean_reward > cov_sim.mean_correct &&
                    cov_sim.mean_correct > rot_sim.mean_reward &&
                    ir_sim.mean_reward >= 1.2 * rot_sim.mean_reward;
    return {ok, os.str()};
}

Outcome criterion8_myopia_gaps() {
    std::ostringstream os;
    bool ok = true;
    double gap_09 = 0.0, gap_05 = 0.0;
    for (double p_stay : {0.9, 0.7, 0.5}) {
        GridworldSpec spec;
        spec.num_cells = 10;
        spec.budget = 2;
        spec.p_stay = p_stay;
        spec.discount = 0.99;
        spec.horizon = 10;
        const auto m = build_gridworld(spec);
        const auto B = sample_beliefs(m, 1200, 11, 150);
        const auto vf = solve(m, B, Backend::decomposed_ir).back();
        SimOptions opt;
        opt.episodes = 300;
        opt.steps = 50;
        opt.seed = 7;
        const auto planned = simulate(m, &vf, SimPolicy::value_function, opt);
        const auto myopic = simulate(m, nullptr, SimPolicy::myopic, opt);
        const double gap = planned.mean_reward - myopic.mean_reward;
        if (p_stay == 0.9) gap_09 = gap;
        if (p_stay == 0.5) gap_05 = gap;
        ok = ok && gap >= 0.0;
        os << "\n  p=" << p_stay << ": planned " << planned.mean_reward << ", myopic "
           << myopic.mean_reward << ", gap " << gap;
    }
    ok = ok && gap_05 > gap_09;
    os << "\n  trend gap(0.5) > gap(0.9): " << (gap_05 > gap_09 ? "yes" : "NO");

    // budget variant: 15 uses across 50 steps. Rationing only enters the
    // value function when the planning window outruns the budget, so this leg
    // plans deeper than the grid runs; walks match the episode length to
    // sample beliefs across the budget levels.
    GridworldSpec bspec;
    bspec.num_cells = 10;
    bspec.budget = 1;
    bspec.p_stay = 0.7;
    bspec.discount = 0.99;
    bspec.horizon = 30;
    BudgetModelLayout layout;
    const auto bm = budget_model(bspec, 15, 50, &layout);
    const auto BB = sample_beliefs(bm, 800, 11, 25);
    const auto bvf = solve(bm, BB, Backend::decomposed_ir).back();
    SimOptions bopt;
    bopt.episodes = 300;
    bopt.steps = 50;
    bopt.seed = 7;
    bopt.levels_per_cell = layout.levels;
    const auto planned = simulate(bm, &bvf, SimPolicy::value_function, bopt);
    const auto myopic = simulate(bm, nullptr, SimPolicy::myopic, bopt);
    os << "\n  budget: planned " << planned.mean_reward << ", myopic " << myopic.mean_reward;
    ok = ok && planned.mean_reward > myopic.mean_reward;
    return {ok, os.str()};
}

Outcome criterion9_tangent_saturation() {
    GridworldSpec spec;
    spec.num_cells = 10;
    spec.budget = 1;
    spec.p_stay = 0.7;
    spec.discount = 0.99;
    spec.horizon = 10;
    const std::vector<double> ladder{0.8, 0.5, 0.65, 0.92};
    std::vector<double> reward(5, 0.0), se(5, 0.0);
    for (int per_state = 1; per_state <= 4; ++per_state) {
        const std::vector<double> levels(ladder.begin(), ladder.begin() + per_state);
        const auto m = tangent_gridworld(spec, levels);
        const auto B = sample_beliefs(m, 1200, 11, 150);
        const auto vf = solve(m, B, Backend::crosssum_rho).back();
        SimOptions opt;
        opt.episodes = 300;
        opt.steps = 50;
        opt.seed = 7;
        const auto sim = simulate(m, &vf, SimPolicy::value_function, opt);
        reward[per_state] = sim.mean_correct;
        se[per_state] = sim.stderr_correct;
    }
    std::ostringstream os;
    bool ok = true;
    for (int m = 1; m <= 4; ++m) os << (m > 1 ? ", " : "") << m << " -> " << reward[m];
    os << " (se " << se[1] << ")";
    // non-decreasing 1 -> 3 within one standard error; 4 within one of 3
    for (int m = 2; m <= 3; ++m)
        if (reward[m] < reward[m - 1] - se[m]) ok = false;
    if (std::abs(reward[4] - reward[3]) > std::max(se[3], se[4])) ok = false;
    return {ok, os.str()};
}

Outcome criterion10_lemmas() {
    auto m = detector_model(4, 4, 2, false, 240);
    const auto beliefs = random_beliefs(4, 10, 340);
    const auto cond = check_conditional_entropy_identity(m, beliefs);
    double worst = cond.worst;
    bool ok = cond.passed;
    for (const auto& b : beliefs) {
        const auto sub = check_entropy_submodularity(m, b);
        worst = std::max(worst, sub.worst);
        ok = ok && sub.passed;
    }
    // K=1: greedy and exact backups agree everywhere on the belief set
    auto m1 = detector_model(4, 4, 1, false, 241);
    const auto B = sample_beliefs(m1, 40, 341);
    const auto exact = solve(m1, B, Backend::decomposed_ir);
    const auto greedy = greedy_solve(m1, B);
    double k1_worst = 0.0;
    for (int t = 0; t < m1.horizon; ++t)
        for (const auto& b : B.beliefs)
            k1_worst = std::max(k1_worst,
                                std::abs(exact[t].evaluate(b) - greedy[t].evaluate(b)));
    ok = ok && k1_worst <= 1e-9;
    std::ostringstream os;
    os << "lemma tables worst " << worst << ", K=1 backup deviation " << k1_worst;
    return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    struct Entry {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> criteria{
        {"criterion-01 theorem-1/2 equivalence", criterion1_equivalence},
        {"criterion-02 two-state reduction values", criterion2_reduction_values},
        {"criterion-03 decomposed equals naive and is faster", criterion3_decomposed_naive},
        {"criterion-04 submodularity/monotonicity/nonnegativity", criterion4_premise_suite},
        {"criterion-05 greedy value bound", criterion5_theorem4_bound},
        {"criterion-06 greedy reward retention and runtime", criterion6_greedy_retention},
        {"criterion-07 baseline ordering", criterion7_baseline_ordering},
        {"criterion-08 myopia gaps and budget", criterion8_myopia_gaps},
        {"criterion-09 tangent saturation", criterion9_tangent_saturation},
        {"criterion-10 lemma-level properties", criterion10_lemmas},
    };
    // optional arguments select criteria by number, e.g. "acceptance_tests 6 8"
    std::vector<bool> wanted(criteria.size() + 1, argc <= 1);
    for (int i = 1; i < argc; ++i) {
        const int idx = std::atoi(argv[i]);
        if (idx >= 1 && idx <= static_cast<int>(criteria.size())) wanted[idx] = true;
    }
    int failures = 0;
    int index = 0;
    for (const auto& entry : criteria) {
        if (!wanted[++index]) continue;
        const double start = now_seconds();
        Outcome out;
        try {
            out = entry.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = now_seconds() - start;
        std::printf("%s %s: %s [%.1fs]\n", out.passed ? "PASS" : "FAIL", entry.name,
                    out.detail.c_str(), elapsed);
        std::fflush(stdout);
        if (!out.passed) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
