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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace ghzw::cli {

/// Bad flags or a config that cannot run; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every knob of every command. JSON config keys are the long flag names
/// with '-' replaced by '_'.
struct Params {
    int n = 3;
    std::vector<int> ns;
    std::string state = "ghz";
    std::string algo;  // empty: per-command default
    std::uint64_t shots = 0;  // 0: per-command default
    std::uint64_t trajectories = 1;
    std::optional<std::uint64_t> seed;
    std::string noise;     // path, "default", or empty for noiseless
    std::string coupling;  // path, "line:N", "ring:N" or "ladder16"
    std::vector<double> taus{0.0};
    int phi_points = 0;
    std::string out;
    bool exact = false;
    bool allow_large = false;
    std::vector<std::string> errors;
    std::string layout = "compact";
    bool manual_ancillas = false;
    std::string outcome = "most-likely";
};

[[nodiscard]] nlohmann::json params_to_json(const Params& params);
/// Copies keys of `doc` into `params`, skipping names listed in `keep`.
void apply_json(Params& params, const nlohmann::json& doc, const std::vector<std::string>& keep = {});

/// 64-bit FNV-1a.
[[nodiscard]] std::uint64_t fnv1a(const std::string& bytes);
/// FNV-1a of the canonical config dump, as 16 hex digits.
[[nodiscard]] std::string config_hash(const std::string& command, const Params& params);

/// Root seed for a command: derive_seed(seed, {fnv1a(command)}). Modules
/// derive further by trajectory, setting, tau and phi index.
[[nodiscard]] std::uint64_t command_seed(const std::string& command, std::uint64_t seed);

struct RunOutput {
    nlohmann::json results;
    std::map<std::string, std::string> files;  // name -> contents
    std::string summary;                       // printed to stdout
    bool stochastic = false;
};

/// Runs `command` without touching the output directory.
[[nodiscard]] RunOutput execute(const std::string& command, const Params& params);

/// Writes results.json, manifest.json and the command's files into `dir`.
void write_run(const std::string& dir, const std::string& command, const Params& params, const RunOutput& output);

/// Run directory: --out, else $GHZW_OUT/<command>-<hash>, else ghzw_out/<command>-<hash>.
[[nodiscard]] std::string output_dir(const std::string& command, const Params& params);

/// Process entry point; returns the exit code.
int run(int argc, const char* const* argv);

}  // namespace ghzw::cli
