// End-to-end checks of the command-line driver via subprocesses.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "actp/belief_ops.hpp"
#include "actp/gridworld.hpp"
#include "actp/model_io.hpp"
#include "actp/pbvi.hpp"
#include "actp/sim.hpp"
#include "doctest.h"

#ifndef ACTP_CLI_PATH
#error "ACTP_CLI_PATH must point at the actp binary"
#endif

namespace {

namespace fs = std::filesystem;
using namespace actp;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("actp_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    const std::string cmd = std::string(ACTP_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

GridworldSpec tiny_spec() {
    GridworldSpec s;
    s.num_cells = 4;
    s.p_stay = 0.7;
    s.budget = 1;
    s.discount = 0.95;
    s.horizon = 3;
    return s;
}

}  // namespace

TEST_CASE("reduce converts tangent models to prediction rewards and back") {
    TempDir dir;
    ActivePerceptionModel m = build_gridworld(tiny_spec());
    m.reward = build_tangent_set({{0.7, 0.1, 0.1, 0.1},
                                  {0.1, 0.7, 0.1, 0.1},
                                  {0.1, 0.1, 0.7, 0.1},
                                  {0.1, 0.1, 0.1, 0.7}});
    save_model(m, dir.file("rho.json"));
    CHECK(run("reduce --direction rho-to-ir --model " + dir.file("rho.json") + " --out " +
              dir.file("ir.json")) == 0);
    const auto ir_model = load_model(dir.file("ir.json"));
    const auto& ir = std::get<IRRewardMatrix>(ir_model.reward);
    CHECK(ir.num_predictions == 4);
    CHECK(ir.at(1, 1) == doctest::Approx(std::log(0.7)));
    CHECK(ir.at(0, 1) == doctest::Approx(std::log(0.1)));
    CHECK(run("reduce --direction ir-to-rho --model " + dir.file("ir.json") + " --out " +
              dir.file("rho2.json")) == 0);
    const auto back = load_model(dir.file("rho2.json"));
    const auto& tr = std::get<TangentRewardSet>(back.reward);
    REQUIRE(tr.vectors.size() == 4);
    for (int j = 0; j < 4; ++j)
        CHECK(tr.vectors[j].values == std::get<TangentRewardSet>(m.reward).vectors[j].values);
}

TEST_CASE("solve then sim through the file round-trip matches the in-process pipeline") {
    TempDir dir;
    const auto m = build_gridworld(tiny_spec());
    save_model(m, dir.file("model.json"));
    CHECK(run("solve --model " + dir.file("model.json") +
              " --backend decomposed-ir --beliefs 60 --seed 7 --out " + dir.file("vf.json")) == 0);
    CHECK(fs::exists(dir.file("vf.json.manifest.json")));
    CHECK(run("sim --env grid --cells 4 --k 1 --p-stay 0.7 --tp 0.75 --fp 0.05 --horizon 3"
              " --gamma 0.95 --policy ir --episodes 10 --steps 20 --seed 7 --vf " +
              dir.file("vf.json") + " --out " + dir.file("a.csv")) == 0);

    // in-process equivalent
    const auto beliefs = sample_beliefs(m, 60, 7);
    const auto stages = solve(m, beliefs, Backend::decomposed_ir);
    SimOptions opt;
    opt.episodes = 10;
    opt.steps = 20;
    opt.seed = 7;
    const auto res = simulate(m, &stages.back(), SimPolicy::value_function, opt);
    CHECK(slurp(dir.file("a.csv")) == metrics_to_csv(res));

    // the saved stages reload losslessly
    const auto loaded = load_value_functions(dir.file("vf.json"));
    REQUIRE(loaded.size() == stages.size());
    for (std::size_t t = 0; t < stages.size(); ++t) {
        REQUIRE(loaded[t].vectors.size() == stages[t].vectors.size());
        for (std::size_t j = 0; j < stages[t].vectors.size(); ++j)
            CHECK(loaded[t].vectors[j].values == stages[t].vectors[j].values);
    }
}

TEST_CASE("identical manifests give byte-identical outputs") {
    TempDir dir;
    const std::string flags =
        "sim --env grid --cells 4 --k 1 --policy myopic --episodes 8 --steps 15 --seed 11 --out ";
    CHECK(run(flags + dir.file("x.csv")) == 0);
    CHECK(run(flags + dir.file("y.csv")) == 0);
    CHECK(slurp(dir.file("x.csv")) == slurp(dir.file("y.csv")));
    CHECK(!slurp(dir.file("x.csv")).empty());
    // threads must not affect the numbers either
    CHECK(run(flags + dir.file("z.csv") + " --threads 1") == 0);
    CHECK(slurp(dir.file("x.csv")) == slurp(dir.file("z.csv")));
}

TEST_CASE("verify emits a machine-readable report") {
    TempDir dir;
    CHECK(run("verify --suite equivalence --seed 7 --report " + dir.file("rep.json")) == 0);
    const auto text = slurp(dir.file("rep.json"));
    CHECK(text.find("\"format\": \"actp-report-v1\"") != std::string::npos);
    CHECK(text.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("bench produces the documented columns") {
    TempDir dir;
    CHECK(run("bench --backends decomposed-ir,greedy --grid 4 --k 1 --beliefs 30 --horizon 2"
              " --out " + dir.file("b.csv")) == 0);
    const auto text = slurp(dir.file("b.csv"));
    CHECK(text.rfind("backend,n,k,stage,seconds,value_at_b0\n", 0) == 0);
    CHECK(text.find("greedy,4,1,2,") != std::string::npos);
}

TEST_CASE("exit codes distinguish user errors") {
    TempDir dir;
    CHECK(run("--help") == 0);
    CHECK(run("solve --model " + dir.file("missing.json")) == 1);
    std::ofstream(dir.file("broken.json")) << "{not json";
    CHECK(run("solve --model " + dir.file("broken.json")) == 1);
    const auto m = build_gridworld(tiny_spec());
    save_model(m, dir.file("model.json"));
    CHECK(run("solve --model " + dir.file("model.json") + " --backend nosuch") == 1);
    CHECK(run("reduce --direction sideways --model " + dir.file("model.json")) == 1);
    CHECK(run("sim --env nosuch") == 1);
}
