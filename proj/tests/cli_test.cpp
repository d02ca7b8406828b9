// Copyright 2026 The ghzw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ghzw/cli.hpp"

namespace {

using namespace ghzw;
namespace fs = std::filesystem;

int run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "ghzw");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("ghzw_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

TEST(Execute, BuildGhzLog) {
    cli::Params p;
    p.n = 8;
    const auto out = cli::execute("build", p);
    EXPECT_EQ(out.results["depth"], 4);
    EXPECT_EQ(out.results["cnot_count"], 7);
    EXPECT_FALSE(out.stochastic);
    EXPECT_EQ(out.files.count("circuit.qasm"), 1u);
    EXPECT_EQ(out.files.at("circuit.qasm").rfind("OPENQASM 2.0;", 0), 0u);
}

TEST(Execute, BuildWLogHasTree) {
    cli::Params p;
    p.n = 11;
    p.state = "w";
    const auto out = cli::execute("build", p);
    EXPECT_EQ(out.results["tree"], "(5,11)[(2,5)[(1,2), (1,3)[-, (1,2)]], (3,6)[(1,3)[-, (1,2)], (2,3)[(1,2), -]]]");
    EXPECT_EQ(out.files.count("tree.dot"), 1u);
    EXPECT_EQ(out.results["cnot_count"], 10);
}

TEST(Execute, SameSeedSameResults) {
    cli::Params p;
    p.n = 3;
    p.seed = 11;
    p.shots = 256;
    const auto a = cli::execute("tomo", p);
    const auto b = cli::execute("tomo", p);
    EXPECT_TRUE(a.stochastic);
    EXPECT_EQ(a.results.dump(), b.results.dump());
    p.seed = 12;
    EXPECT_NE(cli::execute("tomo", p).results.dump(), a.results.dump());
}

TEST(Execute, StochasticNeedsSeed) {
    cli::Params p;
    EXPECT_THROW((void)cli::execute("tomo", p), cli::UsageError);
    p.exact = true;
    EXPECT_NO_THROW((void)cli::execute("tomo", p));
    p.noise = "default";
    EXPECT_THROW((void)cli::execute("tomo", p), cli::UsageError);
}

TEST(Execute, QecAndWstats) {
    cli::Params p;
    p.errors = {"bit:1", "phase:0"};
    const auto q = cli::execute("qec", p);
    EXPECT_NEAR(q.results["fidelity_after"].get<double>(), 1.0, 1e-9);
    EXPECT_NE(q.files.at("program.txt").find("CNOT(LQ[0], LP[0])"), std::string::npos);
    p.errors = {"bogus"};
    EXPECT_THROW((void)cli::execute("qec", p), cli::UsageError);

    cli::Params w;
    w.n = 4;
    w.exact = true;
    const auto ws = cli::execute("wstats", w);
    EXPECT_NEAR(ws.results["log"]["kolmogorov_distance"].get<double>(), 0.0, 1e-12);
    EXPECT_NEAR(ws.results["linear"]["kolmogorov_distance"].get<double>(), 0.0, 1e-12);
}

TEST(Execute, TranspileOnLine) {
    cli::Params p;
    p.n = 5;
    p.coupling = "line:6";
    const auto out = cli::execute("transpile", p);
    EXPECT_EQ(out.results["equivalence"], "pass");
    EXPECT_EQ(out.results["hardware_legal"], true);
}

TEST(Execute, UnknownCommand) {
    EXPECT_THROW((void)cli::execute("nope", cli::Params{}), cli::UsageError);
}

TEST(Config, HashIgnoresOutAndTracksParams) {
    cli::Params a;
    cli::Params b = a;
    b.out = "/tmp/elsewhere";
    EXPECT_EQ(cli::config_hash("build", a), cli::config_hash("build", b));
    b.n = 4;
    EXPECT_NE(cli::config_hash("build", a), cli::config_hash("build", b));
    EXPECT_NE(cli::config_hash("build", a), cli::config_hash("tomo", a));
    EXPECT_EQ(cli::config_hash("build", a).size(), 16u);
}

TEST(Config, JsonRoundTripAndUnknownKeys) {
    cli::Params p;
    p.n = 6;
    p.seed = 4;
    p.taus = {0, 2.5};
    p.errors = {"arb:0:0.3"};
    cli::Params q;
    cli::apply_json(q, cli::params_to_json(p));
    EXPECT_EQ(cli::params_to_json(q), cli::params_to_json(p));
    EXPECT_THROW(cli::apply_json(q, nlohmann::json{{"colour", 1}}), cli::UsageError);
    cli::Params k;
    k.n = 9;
    cli::apply_json(k, nlohmann::json{{"n", 2}, {"shots", 5}}, {"n"});
    EXPECT_EQ(k.n, 9);
    EXPECT_EQ(k.shots, 5u);
}

TEST(Config, FnvKnownValue) {
    EXPECT_EQ(cli::fnv1a(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(cli::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Run, ExitCodes) {
    EXPECT_EQ(run_args({"build", "--n", "0", "--out", scratch("zero").string()}), 2);
    EXPECT_EQ(run_args({"tomo", "--n", "3", "--out", scratch("noseed").string()}), 2);
    EXPECT_EQ(run_args({"frobnicate"}), 2);
    EXPECT_EQ(run_args({"transpile", "--n", "3", "--coupling", "/no/such/file", "--out", scratch("nofile").string()}),
              1);
}

TEST(Run, WritesResultsAndManifest) {
    const fs::path dir = scratch("build");
    ASSERT_EQ(run_args({"build", "--n", "6", "--state", "w", "--out", dir.string()}), 0);
    const auto results = nlohmann::json::parse(slurp(dir / "results.json"));
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    EXPECT_EQ(results["n"], 6);
    EXPECT_EQ(manifest["command"], "build");
    EXPECT_EQ(manifest["config"]["n"], 6);
    EXPECT_TRUE(fs::exists(dir / "tree.txt"));
    EXPECT_TRUE(fs::exists(dir / "circuit.json"));
}

TEST(Run, ConfigFileYieldsToFlags) {
    const fs::path dir = scratch("config");
    fs::create_directories(dir);
    {
        std::ofstream cfg(dir / "cfg.json");
        cfg << R"({"n": 5, "state": "w", "algo": "linear"})";
    }
    ASSERT_EQ(run_args({"build", "--config", (dir / "cfg.json").string(), "--n", "4", "--out", (dir / "out").string()}),
              0);
    const auto results = nlohmann::json::parse(slurp(dir / "out" / "results.json"));
    EXPECT_EQ(results["n"], 4);
    EXPECT_EQ(results["state"], "w");
    EXPECT_EQ(results["algo"], "linear");
}

TEST(Run, SeededRerunIsByteIdentical) {
    const fs::path a = scratch("seed_a"), b = scratch("seed_b");
    const std::vector<std::string> common{"parity", "--n", "2", "--seed", "3", "--shots", "200", "--taus", "0", "--noise",
                                          "default", "--trajectories", "4"};
    auto with_out = [&](const fs::path& d) {
        auto v = common;
        v.push_back("--out");
        v.push_back(d.string());
        return v;
    };
    ASSERT_EQ(run_args(with_out(a)), 0);
    ASSERT_EQ(run_args(with_out(b)), 0);
    EXPECT_EQ(slurp(a / "results.json"), slurp(b / "results.json"));
    EXPECT_EQ(slurp(a / "curve_0.csv"), slurp(b / "curve_0.csv"));
}

}  // namespace
