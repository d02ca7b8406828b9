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
#include <initializer_list>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "json.hpp"

#include "ghzw/noise.hpp"
#include "ghzw/statevector.hpp"

namespace ghzw::sim {

/// splitmix64 finalizer.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x);

/// Child seed for a path of indices below `root`, e.g. (root, {command, point, trajectory}).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

/// Histogram of measured basis indices.
struct ShotCounts {
    int width = 0;
    std::map<std::uint64_t, std::uint64_t> counts;

    [[nodiscard]] std::uint64_t shots() const;
    [[nodiscard]] std::uint64_t count(std::uint64_t index) const;
    void add(std::uint64_t index, std::uint64_t n = 1);
    void merge(const ShotCounts& other);
    /// Empirical probabilities over all 2^width outcomes.
    [[nodiscard]] std::vector<double> probabilities() const;
    /// {"0101": count, ...}
    [[nodiscard]] nlohmann::json to_json() const;
};

[[nodiscard]] ShotCounts counts_from_json(int width, const nlohmann::json& doc);

/// Draws `shots` outcomes from a probability vector (need not be exactly normalized).
[[nodiscard]] ShotCounts sample_distribution(const std::vector<double>& probs, int width, std::uint64_t shots, Rng& rng);

/// Flips each measured bit through the per-qubit confusion of `noise`.
[[nodiscard]] std::uint64_t apply_readout(std::uint64_t outcome, int width, const NoiseModel& noise, Rng& rng);

/// Pushes an exact distribution through the readout confusion, qubit by qubit.
[[nodiscard]] std::vector<double> readout_probabilities(const std::vector<double>& probs, int width,
                                                        const NoiseModel& noise);

/// Multinomial sample of |a_i|^2 with optional readout error; deterministic in `seed`.
[[nodiscard]] ShotCounts sample_counts(const StateVector& state, std::uint64_t shots,
                                       const std::optional<NoiseModel>& readout, std::uint64_t seed);

}  // namespace ghzw::sim
