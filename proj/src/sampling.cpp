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

#include "ghzw/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace ghzw::sim {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(root);
    for (auto p : path) s = mix64(s ^ mix64(p + 0x632be59bd9b4e019ULL));
    return s;
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

std::uint64_t ShotCounts::shots() const {
    std::uint64_t n = 0;
    for (const auto& [k, v] : counts) n += v;
    return n;
}

std::uint64_t ShotCounts::count(std::uint64_t index) const {
    auto it = counts.find(index);
    return it == counts.end() ? 0 : it->second;
}

void ShotCounts::add(std::uint64_t index, std::uint64_t n) {
    if (n > 0) counts[index] += n;
}

void ShotCounts::merge(const ShotCounts& other) {
    if (other.width != width) throw std::invalid_argument("merging counts of different widths");
    for (const auto& [k, v] : other.counts) add(k, v);
}

std::vector<double> ShotCounts::probabilities() const {
    const auto n = shots();
    if (n == 0) throw std::invalid_argument("probabilities of zero shots");
    std::vector<double> p(std::size_t{1} << width, 0.0);
    for (const auto& [k, v] : counts) p.at(k) = static_cast<double>(v) / static_cast<double>(n);
    return p;
}

nlohmann::json ShotCounts::to_json() const {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [k, v] : counts) doc[bitstring(k, width)] = v;
    return doc;
}

ShotCounts counts_from_json(int width, const nlohmann::json& doc) {
    ShotCounts c;
    c.width = width;
    for (const auto& [k, v] : doc.items()) {
        if (static_cast<int>(k.size()) != width) throw std::invalid_argument("count key '" + k + "' has wrong length");
        c.add(parse_bitstring(k), v.get<std::uint64_t>());
    }
    return c;
}

ShotCounts sample_distribution(const std::vector<double>& probs, int width, std::uint64_t shots, Rng& rng) {
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += std::max(probs[i], 0.0);
        cdf[i] = acc;
    }
    if (!(acc > 0.0)) throw std::invalid_argument("cannot sample an all-zero distribution");
    ShotCounts out;
    out.width = width;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
        if (idx >= probs.size()) {
            // Rounding at the top end: take the last outcome with weight.
            idx = probs.size() - 1;
            while (idx > 0 && !(probs[idx] > 0.0)) --idx;
        }
        out.add(idx);
    }
    return out;
}

std::uint64_t apply_readout(std::uint64_t outcome, int width, const NoiseModel& noise, Rng& rng) {
    for (int q = 0; q < width; ++q) {
        const auto bit = qubit_mask(width, q);
        const auto r = noise.readout_error(q);
        const double flip = (outcome & bit) ? r.p10 : r.p01;
        if (flip > 0.0 && rng.bernoulli(flip)) outcome ^= bit;
    }
    return outcome;
}

std::vector<double> readout_probabilities(const std::vector<double>& probs, int width, const NoiseModel& noise) {
    std::vector<double> p = probs;
    for (int q = 0; q < width; ++q) {
        const auto bit = qubit_mask(width, q);
        const auto r = noise.readout_error(q);
        if (r.p01 == 0.0 && r.p10 == 0.0) continue;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i & bit) continue;
            const double a0 = p[i];
            const double a1 = p[i | bit];
            p[i] = (1.0 - r.p01) * a0 + r.p10 * a1;
            p[i | bit] = r.p01 * a0 + (1.0 - r.p10) * a1;
        }
    }
    return p;
}

ShotCounts sample_counts(const StateVector& state, std::uint64_t shots, const std::optional<NoiseModel>& readout,
                         std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    Rng rng(seed);
    ShotCounts raw = sample_distribution(state.probabilities(), state.width(), shots, rng);
    if (!readout || !readout->has_readout_error()) return raw;
    ShotCounts out;
    out.width = raw.width;
    for (const auto& [k, v] : raw.counts) {
        for (std::uint64_t i = 0; i < v; ++i) out.add(apply_readout(k, raw.width, *readout, rng));
    }
    return out;
}

}  // namespace ghzw::sim
