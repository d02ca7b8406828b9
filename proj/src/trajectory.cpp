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

#include "ghzw/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ghzw::sim {

namespace {

void damp(StateVector& state, int q, double gamma, Rng& rng) {
    const auto bit = qubit_mask(state.width(), q);
    auto& a = state.amplitudes();
    const double p1 = state.probability_one(q);
    if (p1 <= 0.0) return;
    if (rng.bernoulli(gamma * p1)) {
        // K1 = |0><1|
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i & bit) continue;
            a[i] = a[i | bit];
            a[i | bit] = 0.0;
        }
    } else {
        // K0 = diag(1, sqrt(1 - gamma))
        const double s = std::sqrt(1.0 - gamma);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i & bit) a[i] *= s;
        }
    }
    state.normalize();
}

void apply_pauli(StateVector& state, int q, int which) {
    switch (which) {
        case 1: state.apply_x(q); break;
        case 2: state.apply_y(q); break;
        case 3: state.apply_z(q); break;
        default: break;
    }
}

bool has_crot(const ir::Circuit& circuit) { return count_gates(circuit, ir::GateKind::CROT) > 0; }

}  // namespace

void apply_idle_noise(StateVector& state, const NoiseModel& noise, double duration_us, Rng& rng) {
    if (!(duration_us > 0.0)) return;
    for (int q = 0; q < state.width(); ++q) {
        const double t1 = noise.t1(q);
        if (std::isfinite(t1)) damp(state, q, 1.0 - std::exp(-duration_us / t1), rng);
        const double tphi = noise.tphi(q);
        if (std::isfinite(tphi)) {
            const double pz = 0.5 * (1.0 - std::exp(-duration_us / tphi));
            if (rng.bernoulli(pz)) state.apply_z(q);
        }
    }
}

void apply_two_qubit_depolarizing(StateVector& state, int a, int b, double p, Rng& rng) {
    if (!(p > 0.0) || !rng.bernoulli(p)) return;
    const auto k = static_cast<int>(rng.below(15)) + 1;  // 1..15, skipping II
    apply_pauli(state, a, k / 4);
    apply_pauli(state, b, k % 4);
}

void evolve_trajectory(StateVector& state, const ir::Circuit& circuit, const NoiseModel& noise, Rng& rng) {
    if (has_crot(circuit)) {
        evolve_trajectory(state, ir::lower_crot(circuit), noise, rng);
        return;
    }
    if (circuit.width() != state.width()) throw std::invalid_argument("circuit and state widths differ");
    noise.validate(circuit.width());
    for (const auto& slice : circuit.slices()) {
        for (const auto& g : slice.gates) {
            state.apply_gate(g);
            if (g.kind == ir::GateKind::CNOT) {
                apply_two_qubit_depolarizing(state, g.qubits[0], g.qubits[1], noise.cnot_error, rng);
            } else if (g.kind == ir::GateKind::SWAP) {
                for (int i = 0; i < 3; ++i) {
                    apply_two_qubit_depolarizing(state, g.qubits[0], g.qubits[1], noise.cnot_error, rng);
                }
            }
        }
        const double d = slice.is_delay() ? slice.idle_us : slice.duration_units() * noise.slice_duration_us;
        apply_idle_noise(state, noise, d, rng);
    }
}

StateVector simulate_trajectory(const ir::Circuit& circuit, const NoiseModel& noise, std::uint64_t seed) {
    Rng rng(seed);
    StateVector state(circuit.width());
    for (int q : circuit.initial_excitations()) state.apply_x(q);
    evolve_trajectory(state, circuit, noise, rng);
    return state;
}

ShotCounts run_experiment(const ir::Circuit& circuit, const NoiseModel& noise, std::uint64_t shots,
                          std::uint64_t trajectories, std::uint64_t seed) {
    if (trajectories < 1) throw std::invalid_argument("trajectories must be >= 1");
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    trajectories = std::min(trajectories, shots);
    const ir::Circuit lowered = has_crot(circuit) ? ir::lower_crot(circuit) : circuit;
    ShotCounts total;
    total.width = circuit.width();
    const std::uint64_t per = shots / trajectories;
    const std::uint64_t extra = shots % trajectories;
    for (std::uint64_t t = 0; t < trajectories; ++t) {
        Rng rng(derive_seed(seed, {t}));
        StateVector state(lowered.width());
        for (int q : lowered.initial_excitations()) state.apply_x(q);
        evolve_trajectory(state, lowered, noise, rng);
        const std::uint64_t n = per + (t == 0 ? extra : 0);
        ShotCounts raw = sample_distribution(state.probabilities(), state.width(), n, rng);
        if (!noise.has_readout_error()) {
            total.merge(raw);
            continue;
        }
        for (const auto& [k, v] : raw.counts) {
            for (std::uint64_t i = 0; i < v; ++i) total.add(apply_readout(k, raw.width, noise, rng));
        }
    }
    return total;
}

std::vector<double> average_probabilities(const ir::Circuit& circuit, const NoiseModel& noise,
                                          std::uint64_t trajectories, std::uint64_t seed) {
    if (trajectories < 1) throw std::invalid_argument("trajectories must be >= 1");
    const ir::Circuit lowered = has_crot(circuit) ? ir::lower_crot(circuit) : circuit;
    std::vector<double> acc(std::size_t{1} << circuit.width(), 0.0);
    for (std::uint64_t t = 0; t < trajectories; ++t) {
        Rng rng(derive_seed(seed, {t}));
        StateVector state(lowered.width());
        for (int q : lowered.initial_excitations()) state.apply_x(q);
        evolve_trajectory(state, lowered, noise, rng);
        const auto& a = state.amplitudes();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::norm(a[i]);
    }
    for (auto& v : acc) v /= static_cast<double>(trajectories);
    return readout_probabilities(acc, circuit.width(), noise);
}

Estimate average_observable(const ir::Circuit& circuit, const NoiseModel& noise, std::uint64_t trajectories,
                            std::uint64_t seed, const std::function<double(const StateVector&)>& observable) {
    if (trajectories < 1) throw std::invalid_argument("trajectories must be >= 1");
    const ir::Circuit lowered = has_crot(circuit) ? ir::lower_crot(circuit) : circuit;
    double sum = 0.0;
    double sum2 = 0.0;
    for (std::uint64_t t = 0; t < trajectories; ++t) {
        Rng rng(derive_seed(seed, {t}));
        StateVector state(lowered.width());
        for (int q : lowered.initial_excitations()) state.apply_x(q);
        evolve_trajectory(state, lowered, noise, rng);
        const double v = observable(state);
        sum += v;
        sum2 += v * v;
    }
    const double n = static_cast<double>(trajectories);
    Estimate e;
    e.mean = sum / n;
    if (trajectories > 1) {
        const double var = std::max(0.0, (sum2 - n * e.mean * e.mean) / (n - 1.0));
        e.sem = std::sqrt(var / n);
    }
    return e;
}

}  // namespace ghzw::sim
