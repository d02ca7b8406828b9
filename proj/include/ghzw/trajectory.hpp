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
#include <functional>
#include <vector>

#include "ghzw/circuit.hpp"
#include "ghzw/noise.hpp"
#include "ghzw/sampling.hpp"
#include "ghzw/statevector.hpp"

/// Monte-Carlo wavefunction noise.
///
/// After every slice lasting d microseconds (duration units times the slice
/// duration, or the idle time of a delay slice) each qubit undergoes an
/// amplitude-damping jump test with gamma = 1 - exp(-d/T1) and a Z flip with
/// probability (1 - exp(-d/Tphi))/2. Every CNOT is followed, with probability
/// E_M, by one of the 15 non-identity two-qubit Paulis; a SWAP counts as
/// three CNOTs. Circuits holding CROT are lowered (three-gate form) first.
namespace ghzw::sim {

/// Idle decoherence of every qubit over `duration_us`.
void apply_idle_noise(StateVector& state, const NoiseModel& noise, double duration_us, Rng& rng);

/// With probability p, a uniformly drawn non-identity Pauli on (a, b).
void apply_two_qubit_depolarizing(StateVector& state, int a, int b, double p, Rng& rng);

/// Evolves `state` through `circuit` along one stochastic trajectory.
/// Initial excitations are not applied here.
void evolve_trajectory(StateVector& state, const ir::Circuit& circuit, const NoiseModel& noise, Rng& rng);

/// One trajectory from |0...0> with initial excitations applied.
[[nodiscard]] StateVector simulate_trajectory(const ir::Circuit& circuit, const NoiseModel& noise, std::uint64_t seed);

/// Shots split evenly over trajectories (remainder to the first); readout
/// error applied per shot. `trajectories` is clamped to `shots`.
[[nodiscard]] ShotCounts run_experiment(const ir::Circuit& circuit, const NoiseModel& noise, std::uint64_t shots,
                                        std::uint64_t trajectories, std::uint64_t seed);

/// Infinite-shot limit: trajectory-averaged outcome probabilities, with the
/// readout confusion applied analytically.
[[nodiscard]] std::vector<double> average_probabilities(const ir::Circuit& circuit, const NoiseModel& noise,
                                                        std::uint64_t trajectories, std::uint64_t seed);

/// Mean and standard error of `observable(final_state)` over trajectories.
struct Estimate {
    double mean = 0.0;
    double sem = 0.0;  // standard error of the mean
};
[[nodiscard]] Estimate average_observable(const ir::Circuit& circuit, const NoiseModel& noise,
                                          std::uint64_t trajectories, std::uint64_t seed,
                                          const std::function<double(const StateVector&)>& observable);

}  // namespace ghzw::sim
