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

#include "ghzw/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ghzw/builders.hpp"
#include "ghzw/circuit.hpp"
#include "ghzw/noise.hpp"
#include "ghzw/parity.hpp"
#include "ghzw/qec.hpp"
#include "ghzw/sampling.hpp"
#include "ghzw/statevector.hpp"
#include "ghzw/tomography.hpp"
#include "ghzw/topology.hpp"
#include "ghzw/trajectory.hpp"

namespace ghzw::cli {

using nlohmann::json;

json params_to_json(const Params& p) {
    json doc;
    doc["n"] = p.n;
    doc["ns"] = p.ns;
    doc["state"] = p.state;
    doc["algo"] = p.algo;
    doc["shots"] = p.shots;
    doc["trajectories"] = p.trajectories;
    doc["seed"] = p.seed ? json(*p.seed) : json(nullptr);
    doc["noise"] = p.noise;
    doc["coupling"] = p.coupling;
    doc["taus"] = p.taus;
    doc["phi_points"] = p.phi_points;
    doc["out"] = p.out;
    doc["exact"] = p.exact;
    doc["allow_large"] = p.allow_large;
    doc["errors"] = p.errors;
    doc["layout"] = p.layout;
    doc["manual_ancillas"] = p.manual_ancillas;
    doc["outcome"] = p.outcome;
    return doc;
}

void apply_json(Params& p, const json& doc, const std::vector<std::string>& keep) {
    if (!doc.is_object()) throw UsageError("config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (std::find(keep.begin(), keep.end(), key) != keep.end()) continue;
        try {
            if (key == "n") p.n = value.get<int>();
            else if (key == "ns") p.ns = value.get<std::vector<int>>();
            else if (key == "state") p.state = value.get<std::string>();
            else if (key == "algo") p.algo = value.get<std::string>();
            else if (key == "shots") p.shots = value.get<std::uint64_t>();
            else if (key == "trajectories") p.trajectories = value.get<std::uint64_t>();
            else if (key == "seed") p.seed = value.is_null() ? std::nullopt : std::optional(value.get<std::uint64_t>());
            else if (key == "noise") p.noise = value.get<std::string>();
            else if (key == "coupling") p.coupling = value.get<std::string>();
            else if (key == "taus") p.taus = value.get<std::vector<double>>();
            else if (key == "phi_points") p.phi_points = value.get<int>();
            else if (key == "out") p.out = value.get<std::string>();
            else if (key == "exact") p.exact = value.get<bool>();
            else if (key == "allow_large") p.allow_large = value.get<bool>();
            else if (key == "errors") p.errors = value.get<std::vector<std::string>>();
            else if (key == "layout") p.layout = value.get<std::string>();
            else if (key == "manual_ancillas") p.manual_ancillas = value.get<bool>();
            else if (key == "outcome") p.outcome = value.get<std::string>();
            else throw UsageError("unknown config key '" + key + "'");
        } catch (const json::exception& e) {
            throw UsageError("config key '" + key + "': " + e.what());
        }
    }
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::string config_hash(const std::string& command, const Params& params) {
    json doc = params_to_json(params);
    doc.erase("out");  // where results land does not change them
    doc["command"] = command;
    return hex16(fnv1a(doc.dump()));
}

std::uint64_t command_seed(const std::string& command, std::uint64_t seed) {
    return sim::derive_seed(seed, {fnv1a(command)});
}

namespace {

const std::string kConfigDir = GHZW_CONFIG_DIR;

ir::Circuit make_state(const std::string& state, const std::string& algo, int n) {
    if (n < 1) throw UsageError("--n must be >= 1");
    const bool log = algo == "log";
    if (!log && algo != "linear") throw UsageError("--algo must be linear or log");
    if (state == "ghz") return log ? builders::build_ghz_log(n) : builders::build_ghz_linear(n);
    if (state == "w") return log ? builders::build_w_log(n) : builders::build_w_linear(n);
    throw UsageError("--state must be ghz or w");
}

sim::StateVector ideal_state(const std::string& state, int n) {
    return state == "ghz" ? sim::ghz_state(n) : sim::w_state(n);
}

sim::NoiseModel make_noise(const std::string& spec) {
    if (spec.empty() || spec == "none") return sim::NoiseModel::ideal();
    if (spec == "default") return sim::NoiseModel::synthetic_default();
    return sim::load_noise(spec);
}

bool noisy(const sim::NoiseModel& m) { return m.has_decay() || m.cnot_error > 0.0 || m.has_readout_error(); }

transpile::CouplingGraph make_graph(const std::string& spec, std::vector<std::string>* warnings) {
    if (spec.empty()) throw UsageError("--coupling is required");
    auto sized = [&](const std::string& prefix) {
        try {
            return std::stoi(spec.substr(prefix.size()));
        } catch (const std::exception&) {
            throw UsageError("bad coupling '" + spec + "'");
        }
    };
    if (spec.rfind("line:", 0) == 0) return transpile::CouplingGraph::line(sized("line:"));
    if (spec.rfind("ring:", 0) == 0) return transpile::CouplingGraph::ring(sized("ring:"));
    if (spec == "ladder16") return transpile::load_coupling(kConfigDir + "/ladder16.txt", warnings);
    return transpile::load_coupling(spec, warnings);
}

std::string algo_or(const Params& p, const std::string& fallback) { return p.algo.empty() ? fallback : p.algo; }

void require_seed(const Params& p, bool stochastic) {
    if (stochastic && !p.seed) throw UsageError("--seed is required for stochastic runs");
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

RunOutput cmd_build(const Params& p) {
    const std::string algo = algo_or(p, "log");
    const ir::Circuit c = make_state(p.state, algo, p.n);
    const ir::Circuit lowered = ir::lower_crot(c);
    RunOutput out;
    out.results = {{"state", p.state},
                   {"algo", algo},
                   {"n", p.n},
                   {"depth", ir::depth(c)},
                   {"unit_depth", ir::unit_depth(c)},
                   {"gate_count", ir::gate_count(c) + c.initial_excitations().size()},
                   {"cnot_count", ir::count_gates(c, ir::GateKind::CNOT)},
                   {"block_count", ir::count_gates(c, ir::GateKind::CROT) + (p.state == "w" && p.n > 1 ? 1 : 0)},
                   {"lowered_depth", ir::depth(lowered)},
                   {"lowered_gate_count", ir::gate_count(lowered) + lowered.initial_excitations().size()}};
    out.files["circuit.json"] = ir::to_json(c).dump(2) + "\n";
    out.files["circuit.qasm"] = ir::to_qasm(lowered, true);
    if (p.state == "w" && algo == "log" && p.n > 1) {
        const auto tree = builders::build_dichotomy_tree(p.n);
        out.files["tree.txt"] = tree.to_text();
        out.files["tree.dot"] = tree.to_dot();
        out.results["tree"] = tree.to_compact();
    }
    out.summary = "depth " + std::to_string(ir::depth(c)) + ", gates " + out.results["gate_count"].dump();
    return out;
}

RunOutput cmd_tomo(const Params& p) {
    const auto noise = make_noise(p.noise);
    const bool stochastic = !p.exact || noisy(noise);
    require_seed(p, stochastic);
    if (p.n > 5 && !p.allow_large) throw UsageError("tomography above 5 qubits needs --allow-large");
    const std::string algo = algo_or(p, "log");
    const ir::Circuit c = make_state(p.state, algo, p.n);
    tomo::TomographyOptions opt;
    opt.exact = p.exact;
    opt.shots = p.shots ? p.shots : 1024;
    opt.trajectories = p.trajectories;
    opt.seed = command_seed("tomo", p.seed.value_or(0));
    opt.max_qubits = p.allow_large ? 16 : 5;
    const auto r = tomo::run_tomography(c, ideal_state(p.state, p.n), noise, opt);
    RunOutput out;
    out.stochastic = stochastic;
    out.results = {{"state", p.state},
                   {"algo", algo},
                   {"n", p.n},
                   {"exact", p.exact},
                   {"shots", p.exact ? 0 : opt.shots},
                   {"fidelity", r.fidelity},
                   {"min_eigenvalue", r.min_eigenvalue}};
    if (p.state == "ghz") out.results["ghz_coherence"] = tomo::ghz_coherence(r.rho);
    out.files["density.json"] = tomo::density_to_json(r.rho).dump(2) + "\n";
    out.files["density_magnitude.csv"] = tomo::density_magnitude_csv(r.rho, p.n);
    out.summary = "fidelity " + format_double(r.fidelity);
    return out;
}

parity::ScanOptions scan_options(const Params& p, const std::string& command) {
    parity::ScanOptions opt;
    opt.exact = p.exact;
    opt.shots = p.shots ? p.shots : 1024;
    opt.trajectories = p.trajectories;
    opt.seed = command_seed(command, p.seed.value_or(0));
    opt.phi_points = p.phi_points;
    return opt;
}

json decay_json(const parity::DecayFit& f) {
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    return {{"c0", num(f.c0)},
            {"t2n", num(f.t2n)},
            {"c0_sigma", num(f.c0_sigma)},
            {"t2n_sigma", num(f.t2n_sigma)},
            {"used_points", f.used_points},
            {"warnings", f.warnings}};
}

RunOutput cmd_parity(const Params& p) {
    const auto noise = make_noise(p.noise);
    const bool stochastic = !p.exact || noisy(noise);
    require_seed(p, stochastic);
    if (p.n < 1) throw UsageError("--n must be >= 1");
    const auto opt = scan_options(p, "parity");
    RunOutput out;
    out.stochastic = stochastic;
    std::vector<double> amp;
    std::vector<double> amp_sigma;
    std::ostringstream table;
    table << "tau,C,sigma\n";
    json curves = json::array();
    for (std::size_t k = 0; k < p.taus.size(); ++k) {
        const auto curve = parity::parity_scan(p.n, p.taus[k], noise, opt);
        const auto fit = parity::fit_sinusoid(curve, p.n);
        amp.push_back(fit.amplitude);
        amp_sigma.push_back(fit.amplitude_sigma);
        table << format_double(p.taus[k]) << "," << format_double(fit.amplitude) << ","
              << format_double(fit.amplitude_sigma) << "\n";
        out.files["curve_" + std::to_string(k) + ".csv"] = parity::curve_csv(curve);
        curves.push_back({{"tau", p.taus[k]},
                          {"amplitude", fit.amplitude},
                          {"amplitude_sigma", fit.amplitude_sigma},
                          {"phase", fit.phase},
                          {"residual_norm", fit.residual_norm},
                          {"values", curve.value}});
    }
    out.files["coherence.csv"] = table.str();
    out.results = {{"n", p.n}, {"curves", curves}};
    if (p.taus.size() >= 3) {
        const auto fit = parity::fit_decay(p.taus, amp, stochastic ? amp_sigma : std::vector<double>{});
        out.results["decay"] = decay_json(fit);
        out.summary = "T2(" + std::to_string(p.n) + ") = " + format_double(fit.t2n) + " us";
    } else {
        out.summary = "C(tau0) = " + format_double(amp.front());
    }
    return out;
}

RunOutput cmd_coherence(const Params& p) {
    const auto noise = make_noise(p.noise);
    const bool stochastic = !p.exact || noisy(noise);
    require_seed(p, stochastic);
    std::vector<int> ns = p.ns;
    if (ns.empty()) {
        for (int k = 1; k <= p.n; ++k) ns.push_back(k);
    }
    const auto rows = parity::coherence_vs_n_report(ns, p.taus, noise, scan_options(p, "coherence"));
    RunOutput out;
    out.stochastic = stochastic;
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"n", r.n},
                       {"c", r.c},
                       {"c_sigma", r.c_sigma},
                       {"decay", decay_json(r.fit)},
                       {"normalized_rate", std::isfinite(r.normalized_rate) ? json(r.normalized_rate) : json(nullptr)}});
    }
    out.results = {{"taus", p.taus}, {"rows", arr}};
    out.files["coherence_summary.csv"] = parity::coherence_summary_csv(rows);
    out.files["coherence_table.csv"] = parity::coherence_table_csv(rows);
    out.summary = std::to_string(rows.size()) + " rows";
    return out;
}

RunOutput cmd_wstats(const Params& p) {
    const auto noise = make_noise(p.noise);
    const bool stochastic = !p.exact || noisy(noise);
    require_seed(p, stochastic);
    const std::string algo = algo_or(p, "both");
    std::vector<std::string> algos;
    if (algo == "both") {
        algos = {"linear", "log"};
    } else {
        algos = {algo};
    }
    const std::uint64_t shots = p.shots ? p.shots : 8192;
    const auto ideal = tomo::ideal_populations(sim::w_state(p.n));
    RunOutput out;
    out.stochastic = stochastic;
    out.results = {{"n", p.n}, {"shots", p.exact ? 0 : shots}};
    std::string summary;
    for (std::size_t a = 0; a < algos.size(); ++a) {
        const ir::Circuit c = make_state("w", algos[a], p.n);
        const std::uint64_t seed = sim::derive_seed(command_seed("wstats", p.seed.value_or(0)), {a});
        tomo::Distribution dist;
        if (p.exact) {
            dist.n = p.n;
            dist.p = sim::average_probabilities(c, noise, p.trajectories, seed);
            dist.sigma.assign(dist.p.size(), 0.0);
        } else {
            dist = tomo::population_histogram(sim::run_experiment(c, noise, shots, p.trajectories, seed));
        }
        const double dk = tomo::kolmogorov_distance(dist.p, ideal);
        out.results[algos[a]] = {{"kolmogorov_distance", dk},
                                 {"depth", ir::depth(c)},
                                 {"gate_count", ir::gate_count(c) + c.initial_excitations().size()}};
        out.files["populations_" + algos[a] + ".csv"] = tomo::histogram_csv(dist, ideal);
        summary += (summary.empty() ? "" : ", ") + algos[a] + " D_K " + format_double(dk);
    }
    out.summary = summary;
    return out;
}

RunOutput cmd_qec(const Params& p) {
    const auto noise = make_noise(p.noise);
    qec::QecOptions opt;
    if (p.layout != "compact" && p.layout != "device") throw UsageError("--layout must be compact or device");
    if (p.outcome != "most-likely" && p.outcome != "sampled") throw UsageError("--outcome must be most-likely or sampled");
    opt.device_layout = p.layout == "device";
    opt.manual_ancillas = p.manual_ancillas;
    opt.outcome = p.outcome == "sampled" ? qec::Outcome::Sampled : qec::Outcome::MostLikely;
    opt.trajectories = p.trajectories;
    const bool stochastic = noisy(noise) || opt.outcome == qec::Outcome::Sampled;
    require_seed(p, stochastic);
    opt.seed = command_seed("qec", p.seed.value_or(0));
    std::vector<qec::ErrorSpec> errors;
    for (const auto& e : p.errors) {
        try {
            errors.push_back(qec::parse_error(e));
        } catch (const std::invalid_argument& ex) {
            throw UsageError(ex.what());
        }
    }
    const auto report = qec::qec_pipeline(p.n, errors, noise, opt);
    RunOutput out;
    out.stochastic = stochastic;
    out.results = report.to_json();
    const auto layout = opt.device_layout ? qec::AncillaLayout::device(p.n) : qec::AncillaLayout::compact(p.n);
    std::string program = "# ancillas\n" + qec::program_text(qec::build_ancillas(layout), layout);
    program += "# bit-flip correction\n" + qec::program_text(qec::build_bitflip_correction(layout), layout);
    out.files["program.txt"] = program;
    out.files["rho_after.json"] = tomo::density_to_json(report.rho_after).dump(2) + "\n";
    out.summary = "fidelity before " + format_double(report.fidelity_before) + ", after " +
                  format_double(report.fidelity_after) + ", idle baseline " + format_double(report.fidelity_baseline);
    return out;
}

RunOutput cmd_transpile(const Params& p) {
    std::vector<std::string> warnings;
    const auto graph = make_graph(p.coupling, &warnings);
    const std::string algo = algo_or(p, "log");
    const ir::Circuit c = make_state(p.state, algo, p.n);
    if (p.n > graph.node_count()) throw UsageError("circuit wider than the coupling graph");
    const auto r = transpile::transpile(c, graph);
    RunOutput out;
    out.results = {{"state", p.state},
                   {"algo", algo},
                   {"n", p.n},
                   {"nodes", graph.node_count()},
                   {"logical_depth", ir::depth(r.lowered)},
                   {"routed_depth", ir::depth(r.routed)},
                   {"physical_depth", ir::depth(r.physical)},
                   {"swaps", r.swaps},
                   {"physical_gates", ir::gate_count(r.physical)},
                   {"hardware_legal", transpile::is_hardware_legal(r.physical, graph)},
                   {"warnings", warnings},
                   {"placement", transpile::placement_report(r)}};
    std::string eq;
    if (p.n <= 12) {
        const bool ok = transpile::verify_equivalence(r.lowered, r.physical, r.initial, r.final_placement);
        out.results["equivalence"] = ok ? "pass" : "fail";
        eq = ok ? "equivalent" : "NOT equivalent";
        if (!ok) throw std::runtime_error("transpiled circuit is not equivalent to the input");
    } else {
        out.results["equivalence"] = "skipped";
        eq = "equivalence check skipped above 12 qubits";
    }
    out.files["physical.qasm"] = ir::to_qasm(r.physical, true);
    out.files["routed.json"] = ir::to_json(r.routed).dump(2) + "\n";
    out.summary = "depth " + std::to_string(ir::depth(r.lowered)) + " -> " + std::to_string(ir::depth(r.physical)) +
                  ", swaps " + std::to_string(r.swaps) + ", " + eq;
    return out;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

RunOutput execute(const std::string& command, const Params& params) {
    if (command == "build") return cmd_build(params);
    if (command == "tomo") return cmd_tomo(params);
    if (command == "parity") return cmd_parity(params);
    if (command == "coherence") return cmd_coherence(params);
    if (command == "wstats") return cmd_wstats(params);
    if (command == "qec") return cmd_qec(params);
    if (command == "transpile") return cmd_transpile(params);
    throw UsageError("unknown command '" + command + "'");
}

std::string output_dir(const std::string& command, const Params& params) {
    if (!params.out.empty()) return params.out;
    const char* env = std::getenv("GHZW_OUT");
    const std::string base = env && *env ? env : "ghzw_out";
    return base + "/" + command + "-" + config_hash(command, params).substr(0, 8);
}

void write_run(const std::string& dir, const std::string& command, const Params& params, const RunOutput& output) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& body) {
        std::ofstream f(fs::path(dir) / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
        f << body;
    };
    put("results.json", output.results.dump(2) + "\n");
    json manifest = {{"command", command},
                     {"timestamp", utc_timestamp()},
                     {"seed", params.seed ? json(*params.seed) : json(nullptr)},
                     {"stochastic", output.stochastic},
                     {"config_hash", config_hash(command, params)},
                     {"config", params_to_json(params)},
                     {"files", json::array()}};
    for (const auto& [name, body] : output.files) {
        put(name, body);
        manifest["files"].push_back(name);
    }
    put("manifest.json", manifest.dump(2) + "\n");
}

int run(int argc, const char* const* argv) {
    CLI::App app{"GHZ and W state circuits: build, simulate, transpile, characterize."};
    app.require_subcommand(1);
    Params p;
    std::string config_path;
    std::uint64_t seed = 0;

    struct Bound {
        CLI::Option* opt;
        std::string key;
    };
    std::vector<Bound> bound;
    auto add = [&](CLI::App* sub, const std::string& flag, auto& target, const std::string& help) {
        auto* o = sub->add_option("--" + flag, target, help);
        std::string key = flag;
        std::replace(key.begin(), key.end(), '-', '_');
        bound.push_back({o, key});
        return o;
    };
    auto add_flag = [&](CLI::App* sub, const std::string& flag, bool& target, const std::string& help) {
        auto* o = sub->add_flag("--" + flag, target, help);
        std::string key = flag;
        std::replace(key.begin(), key.end(), '-', '_');
        bound.push_back({o, key});
    };
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config; flags given on the command line win")
            ->check(CLI::ExistingFile);
        add(sub, "out", p.out, "output directory (default $GHZW_OUT/<command>-<hash>)");
        add(sub, "n", p.n, "number of qubits");
    };
    auto stochastic = [&](CLI::App* sub) {
        add(sub, "seed", seed, "root seed (required for stochastic runs)");
        add(sub, "noise", p.noise, "noise JSON path, 'default', or empty for noiseless");
        add(sub, "shots", p.shots, "shots per circuit");
        add(sub, "trajectories", p.trajectories, "noise trajectories");
        add_flag(sub, "exact", p.exact, "trajectory-averaged probabilities instead of shots");
    };
    auto state_opts = [&](CLI::App* sub) {
        add(sub, "state", p.state, "ghz or w")->check(CLI::IsMember({"ghz", "w"}));
        add(sub, "algo", p.algo, "linear or log");
    };

    auto* build = app.add_subcommand("build", "emit circuit JSON and QASM");
    common(build);
    state_opts(build);

    auto* tomo_cmd = app.add_subcommand("tomo", "state tomography");
    common(tomo_cmd);
    state_opts(tomo_cmd);
    stochastic(tomo_cmd);
    add_flag(tomo_cmd, "allow-large", p.allow_large, "permit more than 5 qubits");

    auto* parity_cmd = app.add_subcommand("parity", "GHZ parity oscillations and decay fit");
    common(parity_cmd);
    stochastic(parity_cmd);
    add(parity_cmd, "taus", p.taus, "idle delays in microseconds")->delimiter(',');
    add(parity_cmd, "phi-points", p.phi_points, "override the 4n+1 phase grid");

    auto* coherence = app.add_subcommand("coherence", "coherence time against GHZ size");
    common(coherence);
    stochastic(coherence);
    add(coherence, "ns", p.ns, "sizes (default 1..n)")->delimiter(',');
    add(coherence, "taus", p.taus, "idle delays in microseconds")->delimiter(',');
    add(coherence, "phi-points", p.phi_points, "override the 4n+1 phase grid");

    auto* wstats = app.add_subcommand("wstats", "W population histograms and Kolmogorov distance");
    common(wstats);
    stochastic(wstats);
    add(wstats, "algo", p.algo, "linear, log or both");

    auto* qec_cmd = app.add_subcommand("qec", "ancilla-based GHZ error correction");
    common(qec_cmd);
    add(qec_cmd, "seed", seed, "root seed (required for stochastic runs)");
    add(qec_cmd, "noise", p.noise, "noise JSON path, 'default', or empty for noiseless");
    add(qec_cmd, "trajectories", p.trajectories, "noise trajectories");
    add(qec_cmd, "errors", p.errors, "bit:K, phase:K, arb:K:ALPHA")->delimiter(',');
    add(qec_cmd, "layout", p.layout, "compact or device");
    add_flag(qec_cmd, "manual-ancillas", p.manual_ancillas, "initialize ancillas directly");
    add(qec_cmd, "outcome", p.outcome, "most-likely or sampled");

    auto* tr = app.add_subcommand("transpile", "route onto a coupling graph");
    common(tr);
    state_opts(tr);
    add(tr, "coupling", p.coupling, "edge-list path, line:N, ring:N or ladder16");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    try {
        std::vector<std::string> given;
        for (const auto& b : bound) {
            if (b.opt->count() > 0) given.push_back(b.key);
        }
        for (const auto& b : bound) {
            if (b.key == "seed" && b.opt->count() > 0) p.seed = seed;
        }
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            json doc;
            try {
                doc = json::parse(f);
            } catch (const json::exception& e) {
                throw UsageError("cannot parse config: " + std::string(e.what()));
            }
            apply_json(p, doc, given);
        }
        const RunOutput output = execute(command, p);
        const std::string dir = output_dir(command, p);
        write_run(dir, command, p, output);
        std::cout << command << ": " << output.summary << "\n" << "results in " << dir << "\n";
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ghzw::cli
