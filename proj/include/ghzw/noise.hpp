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

#include <string>
#include <vector>

#include "json.hpp"

namespace ghzw::sim {

/// Per-qubit readout confusion: P(read 1 | 0) and P(read 0 | 1).
struct ReadoutError {
    double p01 = 0.0;
    double p10 = 0.0;

    friend bool operator==(const ReadoutError&, const ReadoutError&) = default;
};

/// Parametric noise. Per-qubit vectors of length 1 are broadcast to every
/// qubit; an empty vector means "no such noise". Times are microseconds and
/// infinity disables the corresponding decay.
struct NoiseModel {
    std::vector<double> t1_us;
    std::vector<double> t2_us;
    double slice_duration_us = 0.1;
    double cnot_error = 0.0;
    std::vector<ReadoutError> readout;

    /// No decay, no gate error, perfect readout.
    static NoiseModel ideal();
    /// Synthetic, non-physical defaults used when no config is given.
    static NoiseModel synthetic_default();

    [[nodiscard]] double t1(int q) const;
    [[nodiscard]] double t2(int q) const;
    /// Pure-dephasing time: 1/Tphi = 1/T2 - 1/(2 T1).
    [[nodiscard]] double tphi(int q) const;
    [[nodiscard]] ReadoutError readout_error(int q) const;
    [[nodiscard]] bool has_readout_error() const;
    [[nodiscard]] bool has_decay() const;

    /// Throws std::invalid_argument when T2 > 2 T1, probabilities fall
    /// outside [0,1], or per-qubit arrays do not fit `width`.
    void validate(int width) const;
};

[[nodiscard]] NoiseModel noise_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json to_json(const NoiseModel& noise);
[[nodiscard]] NoiseModel load_noise(const std::string& path);

}  // namespace ghzw::sim
