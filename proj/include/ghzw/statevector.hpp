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

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ghzw/circuit.hpp"

namespace ghzw::sim {

using cplx = std::complex<double>;
/// Row-major 2x2 complex matrix {m00, m01, m10, m11}.
using Mat2 = std::array<cplx, 4>;

inline constexpr int kMaxWidth = 24;

/// Amplitude-index mask of qubit q (qubit 0 is the most significant bit).
[[nodiscard]] inline std::uint64_t qubit_mask(int width, int q) { return std::uint64_t{1} << (width - 1 - q); }

/// "0110"-style label of a basis index, qubit 0 first.
[[nodiscard]] std::string bitstring(std::uint64_t index, int width);
[[nodiscard]] std::uint64_t parse_bitstring(const std::string& bits);

[[nodiscard]] Mat2 u3_matrix(double theta, double phi, double lambda);
[[nodiscard]] Mat2 single_qubit_matrix(const ir::Gate& gate);
[[nodiscard]] Mat2 matmul(const Mat2& a, const Mat2& b);

class StateVector {
public:
    /// |0...0> on `width` qubits.
    explicit StateVector(int width);
    static StateVector basis(int width, std::uint64_t index);
    static StateVector from_amplitudes(int width, std::vector<cplx> amplitudes);

    [[nodiscard]] int width() const { return width_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] const std::vector<cplx>& amplitudes() const { return amps_; }
    [[nodiscard]] std::vector<cplx>& amplitudes() { return amps_; }
    [[nodiscard]] cplx amplitude(std::uint64_t index) const { return amps_.at(index); }
    [[nodiscard]] cplx amplitude(const std::string& bits) const;

    [[nodiscard]] double norm_squared() const;
    void normalize();
    [[nodiscard]] std::vector<double> probabilities() const;
    /// Probability of reading 1 on qubit q.
    [[nodiscard]] double probability_one(int q) const;

    void apply_1q(int q, const Mat2& m);
    void apply_controlled_1q(int control, int target, const Mat2& m);
    void apply_x(int q);
    void apply_y(int q);
    void apply_z(int q);
    void apply_cnot(int control, int target);
    void apply_swap(int a, int b);
    /// Any IR gate; CROT is applied as the exact controlled-G(p).
    void apply_gate(const ir::Gate& gate);

private:
    void check_qubit(int q) const;

    int width_;
    std::vector<cplx> amps_;
};

/// Noiseless output of `circuit` from |0...0>, initial excitations included.
[[nodiscard]] StateVector simulate(const ir::Circuit& circuit);
/// Same, calling `after_slice(index, state)` once per slice.
[[nodiscard]] StateVector simulate(const ir::Circuit& circuit,
                                   const std::function<void(std::size_t, const StateVector&)>& after_slice);
/// Runs `circuit` on a given input state.
void run_on(StateVector& state, const ir::Circuit& circuit);

/// <psi|P|psi> for a Pauli string over {I,X,Y,Z}, qubit 0 first.
[[nodiscard]] double pauli_expectation(const StateVector& state, const std::string& pauli);

/// <a|b>.
[[nodiscard]] cplx inner(const StateVector& a, const StateVector& b);
/// |<a|b>|^2.
[[nodiscard]] double overlap_fidelity(const StateVector& a, const StateVector& b);

/// Dense unitary by simulating every basis input; width <= 12.
[[nodiscard]] Eigen::MatrixXcd circuit_unitary(const ir::Circuit& circuit);

/// Canonical target states.
[[nodiscard]] StateVector ghz_state(int n);
[[nodiscard]] StateVector w_state(int n);

}  // namespace ghzw::sim
