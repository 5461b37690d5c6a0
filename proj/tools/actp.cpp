// Command-line driver: model I/O, solving, verification suites, surveillance
// simulations and benchmark sweeps. All randomness flows from --seed; outputs
// carry a run manifest (embedded in JSON, sidecar next to CSV).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "actp/gridworld.hpp"
#include "actp/greedy.hpp"
#include "actp/manifest.hpp"
#include "actp/model_io.hpp"
#include "actp/parallel.hpp"
#include "actp/pbvi.hpp"
#include "actp/reduction.hpp"
#include "actp/sim.hpp"
#include "actp/verify.hpp"
#include "json.hpp"

namespace {

using namespace actp;

int log_level() {
    const char* env = std::getenv("ACTIVE_PERCEPT_LOG");
    if (env == nullptr) return 1;
    const std::string v(env);
    if (v == "quiet" || v == "0") return 0;
    if (v == "debug" || v == "2") return 2;
    return 1;
}

void info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << msg << "\n";
}
void debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << msg << "\n";
}

std::vector<int> parse_int_list(std::string text, const std::string& what) {
    // accepts "5,8,11", "1..3", "1..9:2", with an optional "name=" prefix
    const auto eq = text.find('=');
    if (eq != std::string::npos) text = text.substr(eq + 1);
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stoi(part));
            continue;
        }
        const int lo = std::stoi(part.substr(0, dots));
        std::string rest = part.substr(dots + 2);
        int step = 1;
        const auto colon = rest.find(':');
        if (colon != std::string::npos) {
            step = std::stoi(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        const int hi = std::stoi(rest);
        if (step < 1 || hi < lo) throw std::invalid_argument("bad range in " + what + ": " + part);
        for (int v = lo; v <= hi; v += step) out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument(what + " is empty");
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
    if (out.empty()) throw std::invalid_argument(what + " is empty");
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write output file: " + path);
    out << text;
}

// Nested tangent-level ladder: prefixes refine earlier sets so denser rewards
// dominate sparser ones pointwise.
std::vector<double> default_tangent_levels(int per_state) {
    const std::vector<double> ladder{0.8, 0.5, 0.65, 0.92, 0.35, 0.72, 0.55, 0.85};
    if (per_state < 1 || per_state > static_cast<int>(ladder.size()))
        throw std::invalid_argument("tangents-per-state must be in 1.." +
                                    std::to_string(ladder.size()));
    return {ladder.begin(), ladder.begin() + per_state};
}

struct SolveArgs {
    std::string model_path;
    std::string backend = "decomposed-ir";
    int beliefs = 200;
    int walk_len = 0;
    std::uint64_t seed = 7;
    std::string out = "vf.json";
    int threads = 0;
    bool lazy_greedy = false;
};

int cmd_solve(const SolveArgs& args) {
    set_thread_count(args.threads);
    auto model = load_model(args.model_path);
    const auto backend = backend_from_name(args.backend);
    const auto beliefs = sample_beliefs(model, args.beliefs, args.seed, args.walk_len);
    debug("sampled " + std::to_string(beliefs.beliefs.size()) + " beliefs");
    SolveStats stats;
    const auto stages = backend == Backend::greedy
                            ? greedy_solve(model, beliefs, &stats, args.lazy_greedy)
                            : solve(model, beliefs, backend, &stats);
    RunManifest manifest;
    manifest.subcommand = "solve";
    manifest.seed = args.seed;
    manifest.flag("model", args.model_path);
    manifest.flag("backend", args.backend);
    manifest.flag("beliefs", std::to_string(args.beliefs));
    manifest.flag("walk-len", std::to_string(args.walk_len));
    manifest.flag("lazy-greedy", args.lazy_greedy ? "1" : "0");
    double total = 0.0;
    for (std::size_t t = 0; t < stats.stage_seconds.size(); ++t) {
        manifest.timing("stage-" + std::to_string(t + 1), stats.stage_seconds[t]);
        total += stats.stage_seconds[t];
    }
    manifest.timing("total-backup", total);
    save_value_functions(stages, args.out, manifest.identity_json());
    manifest.save_sidecar(args.out);
    std::ostringstream os;
    os.precision(10);
    os << "solved " << stages.size() << " stages, value at b0 = "
       << stages.back().evaluate(model.initial_belief) << ", backup seconds = " << total;
    info(os.str());
    return 0;
}

struct SimArgs {
    std::string env = "grid";
    int cells = 10;
    int k = 1;
    double p_stay = 0.7;
    double tp = 0.75;
    double fp = 0.05;
    std::string policy = "ir";
    int episodes = 100;
    int steps = 50;
    std::uint64_t seed = 7;
    int horizon = 10;
    double gamma = 0.99;
    int beliefs = 200;
    int walk_len = 0;
    int budget_uses = 15;
    int persons = 2;
    std::string important_cells = "0";
    int tangents_per_state = 0;
    std::string tangent_levels;
    std::string vf_path;  // skip solving and execute this value function
    std::string out = "metrics.csv";
    int threads = 0;
};

int cmd_sim(const SimArgs& args) {
    set_thread_count(args.threads);
    GridworldSpec spec;
    spec.num_cells = args.cells;
    spec.budget = args.k;
    spec.p_stay = args.p_stay;
    spec.true_positive = args.tp;
    spec.false_positive = args.fp;
    spec.discount = args.gamma;
    spec.horizon = args.horizon;

    SimOptions opt;
    opt.episodes = args.episodes;
    opt.steps = args.steps;
    opt.seed = args.seed;

    ActivePerceptionModel model;
    if (args.env == "grid") {
        if (args.tangents_per_state > 0) {
            const auto levels = args.tangent_levels.empty()
                                    ? default_tangent_levels(args.tangents_per_state)
                                    : parse_double_list(args.tangent_levels, "tangent-levels");
            model = tangent_gridworld(spec, levels);
        } else {
            model = build_gridworld(spec);
        }
    } else if (args.env == "budget") {
        BudgetModelLayout layout;
        model = budget_model(spec, args.budget_uses, args.steps, &layout);
        opt.levels_per_cell = layout.levels;
    } else if (args.env == "multi") {
        model = build_gridworld(spec);
    } else if (args.env == "important") {
        model = important_cells_model(spec, parse_int_list(args.important_cells, "important-cells"));
    } else {
        throw std::invalid_argument("unknown env: " + args.env);
    }
    if (args.policy == "coverage") {
        auto cov = coverage_model(spec);
        if (args.env == "important") {
            // reward only for observing people in important cells
            auto cells = parse_int_list(args.important_cells, "important-cells");
            auto& sr = std::get<StateReward>(cov.reward);
            std::vector<char> keep(spec.num_cells, 0);
            for (int c : cells) keep[c] = 1;
            for (int s = 0; s < spec.num_cells; ++s)
                if (!keep[s])
                    for (int i = 0; i < spec.num_cells; ++i)
                        sr.sensor_values[static_cast<std::size_t>(s) * spec.num_cells + i] = 0.0;
        } else if (args.env == "budget") {
            throw std::invalid_argument("coverage policy is not defined for the budget env");
        }
        model = std::move(cov);
    }

    // Plan, unless the policy needs no value function or one was supplied.
    std::vector<ValueFunction> stages;
    const bool needs_vf = args.policy == "ir" || args.policy == "coverage" ||
                          args.policy == "greedy";
    double solve_seconds = 0.0;
    if (needs_vf) {
        if (!args.vf_path.empty()) {
            stages.push_back(load_value_function(args.vf_path));
        } else {
            const auto beliefs = sample_beliefs(model, args.beliefs, args.seed, args.walk_len);
            SolveStats stats;
            if (args.policy == "greedy") {
                stages = greedy_solve(model, beliefs, &stats);
            } else {
                Backend backend = Backend::decomposed_ir;
                if (std::holds_alternative<StateReward>(model.reward))
                    backend = Backend::state_reward;
                else if (std::holds_alternative<TangentRewardSet>(model.reward))
                    backend = Backend::crosssum_rho;
                stages = solve(model, beliefs, backend, &stats);
            }
            for (double s : stats.stage_seconds) solve_seconds += s;
        }
    }

    SimResult result;
    const ValueFunction* vf = stages.empty() ? nullptr : &stages.back();
    if (args.env == "multi") {
        if (args.policy == "rotate" || args.policy == "myopic")
            throw std::invalid_argument("multi env supports ir, coverage and greedy policies");
        result = simulate_multi(model, *vf, args.persons, args.policy == "greedy", opt);
    } else if (args.policy == "ir" || args.policy == "coverage") {
        result = simulate(model, vf, SimPolicy::value_function, opt);
    } else if (args.policy == "greedy") {
        result = simulate(model, vf, SimPolicy::greedy_vf, opt);
    } else if (args.policy == "myopic") {
        result = simulate(model, nullptr, SimPolicy::myopic, opt);
    } else if (args.policy == "rotate") {
        result = simulate(model, nullptr, SimPolicy::rotate, opt);
    } else {
        throw std::invalid_argument("unknown policy: " + args.policy);
    }

    RunManifest manifest;
    manifest.subcommand = "sim";
    manifest.seed = args.seed;
    manifest.flag("env", args.env);
    manifest.flag("cells", std::to_string(args.cells));
    manifest.flag("k", std::to_string(args.k));
    manifest.flag("p-stay", std::to_string(args.p_stay));
    manifest.flag("tp", std::to_string(args.tp));
    manifest.flag("fp", std::to_string(args.fp));
    manifest.flag("policy", args.policy);
    manifest.flag("episodes", std::to_string(args.episodes));
    manifest.flag("steps", std::to_string(args.steps));
    manifest.flag("horizon", std::to_string(args.horizon));
    manifest.flag("gamma", std::to_string(args.gamma));
    manifest.flag("beliefs", std::to_string(args.beliefs));
    if (args.env == "budget") manifest.flag("budget-uses", std::to_string(args.budget_uses));
    if (args.env == "multi") manifest.flag("persons", std::to_string(args.persons));
    if (args.env == "important") manifest.flag("important-cells", args.important_cells);
    if (args.tangents_per_state > 0)
        manifest.flag("tangents-per-state", std::to_string(args.tangents_per_state));
    manifest.timing("solve", solve_seconds);
    write_text(args.out, metrics_to_csv(result));
    manifest.save_sidecar(args.out);

    std::ostringstream os;
    os.precision(6);
    os << "episodes=" << args.episodes << " mean_reward=" << result.mean_reward
       << " mean_correct=" << result.mean_correct << " se=" << result.stderr_correct;
    info(os.str());
    return 0;
}

struct VerifyArgs {
    std::string suite = "all";
    std::uint64_t seed = 7;
    std::string report = "report.json";
};

int cmd_verify(const VerifyArgs& args) {
    std::vector<std::pair<std::string, std::vector<CheckReport>>> groups;
    auto want = [&](const std::string& name) {
        return args.suite == "all" || args.suite == name;
    };
    if (want("submodularity")) groups.emplace_back("submodularity", suite_submodularity(args.seed));
    if (want("monotonicity")) groups.emplace_back("monotonicity", suite_monotonicity(args.seed));
    if (want("bounds")) groups.emplace_back("bounds", suite_bounds(args.seed));
    if (want("equivalence")) groups.emplace_back("equivalence", suite_equivalence(args.seed));
    if (want("lemmas")) groups.emplace_back("lemmas", suite_lemmas(args.seed));
    if (groups.empty()) throw std::invalid_argument("unknown suite: " + args.suite);

    RunManifest manifest;
    manifest.subcommand = "verify";
    manifest.seed = args.seed;
    manifest.flag("suite", args.suite);

    nlohmann::ordered_json j;
    j["format"] = "actp-report-v1";
    j["suite"] = args.suite;
    bool all_passed = true;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& [group, reports] : groups) {
        for (const auto& r : reports) {
            nlohmann::ordered_json cj;
            cj["group"] = group;
            cj["name"] = r.name;
            cj["passed"] = r.passed;
            cj["worst"] = r.worst;
            if (!r.detail.empty()) cj["detail"] = r.detail;
            checks.push_back(std::move(cj));
            all_passed = all_passed && r.passed;
            std::cout << (r.passed ? "PASS " : "FAIL ") << group << "/" << r.name
                      << " worst=" << r.worst << "\n";
        }
    }
    j["checks"] = std::move(checks);
    j["passed"] = all_passed;
    j["manifest"] = nlohmann::ordered_json::parse(manifest.identity_json());
    write_text(args.report, j.dump(2) + "\n");
    manifest.save_sidecar(args.report);
    info(all_passed ? "all checks passed" : "some checks failed (see report)");
    return 0;
}

struct ReduceArgs {
    std::string direction;
    std::string model_path;
    std::string out = "reduced.json";
};

int cmd_reduce(const ReduceArgs& args) {
    const auto model = load_model(args.model_path);
    ActivePerceptionModel out;
    if (args.direction == "rho-to-ir")
        out = reduce_rho_to_ir(model);
    else if (args.direction == "ir-to-rho")
        out = reduce_ir_to_rho(model);
    else
        throw std::invalid_argument("direction must be rho-to-ir or ir-to-rho");
    save_model(out, args.out);
    RunManifest manifest;
    manifest.subcommand = "reduce";
    manifest.flag("direction", args.direction);
    manifest.flag("model", args.model_path);
    manifest.save_sidecar(args.out);
    info("wrote " + args.out);
    return 0;
}

struct BenchArgs {
    std::string backends = "decomposed-ir,greedy";
    std::string grid = "5,8,11";
    std::string k = "1..3";
    int beliefs = 100;
    int walk_len = 0;
    std::uint64_t seed = 7;
    int horizon = 10;
    double gamma = 0.99;
    double p_stay = 0.7;
    double tp = 0.75;
    double fp = 0.05;
    std::string out = "bench.csv";
    int threads = 0;
};

int cmd_bench(const BenchArgs& args) {
    set_thread_count(args.threads);
    std::vector<std::string> backends;
    {
        std::stringstream ss(args.backends);
        std::string part;
        while (std::getline(ss, part, ',')) backends.push_back(part);
    }
    const auto ns = parse_int_list(args.grid, "grid");
    const auto ks = parse_int_list(args.k, "k");
    std::ostringstream csv;
    csv.precision(10);
    csv << "backend,n,k,stage,seconds,value_at_b0\n";
    for (int n : ns) {
        for (int k : ks) {
            if (k > n) continue;
            GridworldSpec spec;
            spec.num_cells = n;
            spec.budget = k;
            spec.p_stay = args.p_stay;
            spec.true_positive = args.tp;
            spec.false_positive = args.fp;
            spec.discount = args.gamma;
            spec.horizon = args.horizon;
            const auto model = build_gridworld(spec);
            const auto beliefs = sample_beliefs(model, args.beliefs, args.seed, args.walk_len);
            for (const auto& backend : backends) {
                SolveStats stats;
                if (backend == "greedy")
                    greedy_solve(model, beliefs, &stats);
                else
                    solve(model, beliefs, backend_from_name(backend), &stats);
                double total = 0.0;
                for (std::size_t t = 0; t < stats.stage_seconds.size(); ++t) {
                    csv << backend << ',' << n << ',' << k << ',' << (t + 1) << ','
                        << stats.stage_seconds[t] << ',' << stats.value_at_b0[t] << "\n";
                    total += stats.stage_seconds[t];
                }
                debug(backend + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                      " total=" + std::to_string(total) + "s");
            }
        }
    }
    write_text(args.out, csv.str());
    RunManifest manifest;
    manifest.subcommand = "bench";
    manifest.seed = args.seed;
    manifest.flag("backends", args.backends);
    manifest.flag("grid", args.grid);
    manifest.flag("k", args.k);
    manifest.flag("beliefs", std::to_string(args.beliefs));
    manifest.flag("horizon", std::to_string(args.horizon));
    manifest.save_sidecar(args.out);
    info("wrote " + args.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"active-perception POMDP planner and experiment driver"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "solve a model with a point-based backend");
    solve_cmd->add_option("--model", solve_args.model_path, "model JSON file")->required();
    solve_cmd->add_option("--backend", solve_args.backend,
                          "naive-ir|decomposed-ir|crosssum-rho|state|greedy");
    solve_cmd->add_option("--beliefs", solve_args.beliefs, "belief set size");
    solve_cmd->add_option("--walk-len", solve_args.walk_len, "random-walk length (0 = 15*h)");
    solve_cmd->add_option("--seed", solve_args.seed, "random seed");
    solve_cmd->add_option("--out", solve_args.out, "output value-function file");
    solve_cmd->add_option("--threads", solve_args.threads, "worker threads (0 = all cores)");
    solve_cmd->add_flag("--lazy-greedy", solve_args.lazy_greedy,
                        "lazy marginal-gain queue in the greedy backend");

    SimArgs sim_args;
    auto* sim_cmd = app.add_subcommand("sim", "simulate surveillance policies");
    sim_cmd->add_option("--env", sim_args.env, "grid|budget|multi|important");
    sim_cmd->add_option("--cells", sim_args.cells, "ring cells (= cameras)");
    sim_cmd->add_option("--k", sim_args.k, "cameras per step");
    sim_cmd->add_option("--p-stay", sim_args.p_stay, "same-cell probability");
    sim_cmd->add_option("--tp", sim_args.tp, "detector true-positive rate");
    sim_cmd->add_option("--fp", sim_args.fp, "detector false-positive rate");
    sim_cmd->add_option("--policy", sim_args.policy, "ir|coverage|rotate|myopic|greedy");
    sim_cmd->add_option("--episodes", sim_args.episodes, "episodes");
    sim_cmd->add_option("--steps", sim_args.steps, "steps per episode");
    sim_cmd->add_option("--seed", sim_args.seed, "random seed");
    sim_cmd->add_option("--horizon", sim_args.horizon, "planning horizon");
    sim_cmd->add_option("--gamma", sim_args.gamma, "discount");
    sim_cmd->add_option("--beliefs", sim_args.beliefs, "belief set size for planning");
    sim_cmd->add_option("--walk-len", sim_args.walk_len, "belief walk length (0 = 15*h)");
    sim_cmd->add_option("--budget-uses", sim_args.budget_uses, "total sensor uses (budget env)");
    sim_cmd->add_option("--persons", sim_args.persons, "tracked persons (multi env)");
    sim_cmd->add_option("--important-cells", sim_args.important_cells,
                        "comma-separated cells (important env)");
    sim_cmd->add_option("--tangents-per-state", sim_args.tangents_per_state,
                        "use an entropy-tangent reward with this density (0 = +1 prediction reward)");
    sim_cmd->add_option("--tangent-levels", sim_args.tangent_levels,
                        "explicit per-state tangent mass levels");
    sim_cmd->add_option("--vf", sim_args.vf_path, "execute a previously solved value function");
    sim_cmd->add_option("--out", sim_args.out, "metrics CSV path");
    sim_cmd->add_option("--threads", sim_args.threads, "worker threads (0 = all cores)");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "run the theorem verification suites");
    verify_cmd->add_option("--suite", verify_args.suite,
                           "submodularity|monotonicity|bounds|equivalence|lemmas|all");
    verify_cmd->add_option("--seed", verify_args.seed, "random seed");
    verify_cmd->add_option("--report", verify_args.report, "report JSON path");

    ReduceArgs reduce_args;
    auto* reduce_cmd = app.add_subcommand("reduce", "convert between reward representations");
    reduce_cmd->add_option("--direction", reduce_args.direction, "rho-to-ir|ir-to-rho")->required();
    reduce_cmd->add_option("--model", reduce_args.model_path, "model JSON file")->required();
    reduce_cmd->add_option("--out", reduce_args.out, "output model file");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "sweep solver runtimes over (N, K)");
    bench_cmd->add_option("--backends", bench_args.backends, "comma-separated backend list");
    bench_cmd->add_option("--grid", bench_args.grid, "N values, e.g. 5,8,11 or 5..11:3");
    bench_cmd->add_option("--k", bench_args.k, "K values, e.g. 1..3");
    bench_cmd->add_option("--beliefs", bench_args.beliefs, "belief set size");
    bench_cmd->add_option("--walk-len", bench_args.walk_len, "belief walk length");
    bench_cmd->add_option("--seed", bench_args.seed, "random seed");
    bench_cmd->add_option("--horizon", bench_args.horizon, "planning horizon");
    bench_cmd->add_option("--gamma", bench_args.gamma, "discount");
    bench_cmd->add_option("--p-stay", bench_args.p_stay, "same-cell probability");
    bench_cmd->add_option("--out", bench_args.out, "bench CSV path");
    bench_cmd->add_option("--threads", bench_args.threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // user error
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve_args);
        if (sim_cmd->parsed()) return cmd_sim(sim_args);
        if (verify_cmd->parsed()) return cmd_verify(verify_args);
        if (reduce_cmd->parsed()) return cmd_reduce(reduce_args);
        if (bench_cmd->parsed()) return cmd_bench(bench_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
