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
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

/// Gate/circuit intermediate representation shared by the builders, the
/// simulator and the transpiler.
///
/// Qubit indices are plain ints in [0, width). Basis convention used across
/// the whole library: qubit 0 is the leftmost label of a ket |i_0 i_1 ...>,
/// which is the most significant bit of the amplitude index.
namespace ghzw::ir {

enum class GateKind { H, X, CNOT, U3, SWAP, CROT };

/// Exact rational n1/n2, kept as integers until a rotation angle is needed.
struct Ratio {
    int num = 0;
    int den = 1;

    [[nodiscard]] double value() const { return static_cast<double>(num) / den; }
    friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct Gate {
    GateKind kind = GateKind::H;
    // H/X/U3: {target, -1}; CNOT/CROT: {control, target}; SWAP: {a, b}.
    std::array<int, 2> qubits{-1, -1};
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;
    Ratio ratio{};  // CROT only

    static Gate h(int q);
    static Gate x(int q);
    static Gate cnot(int control, int target);
    static Gate u3(double theta, double phi, double lambda, int q);
    static Gate swap(int a, int b);
    /// Controlled-G(p) with p = ratio, 0 < p < 1.
    static Gate crot(Ratio p, int control, int target);

    [[nodiscard]] int arity() const;
    [[nodiscard]] int control() const { return qubits[0]; }
    [[nodiscard]] int target() const { return arity() == 1 ? qubits[0] : qubits[1]; }
    /// U3 takes two time units, everything else one.
    [[nodiscard]] int duration_units() const;
    [[nodiscard]] bool touches(int q) const;

    friend bool operator==(const Gate&, const Gate&) = default;
};

[[nodiscard]] std::string kind_name(GateKind kind);
[[nodiscard]] std::string to_string(const Gate& gate);

struct TimeSlice {
    std::vector<Gate> gates;
    /// Nonzero only for gateless delay slices.
    double idle_us = 0.0;

    [[nodiscard]] int duration_units() const;
    [[nodiscard]] bool is_delay() const { return gates.empty() && idle_us > 0.0; }
};

/// Time-sliced circuit. Gates are scheduled as soon as possible on append:
/// a gate lands in the slice right after the last slice touching any of its
/// qubits, so every slice holds gates on pairwise-disjoint qubits.
class Circuit {
public:
    explicit Circuit(int width);

    [[nodiscard]] int width() const { return width_; }
    [[nodiscard]] const std::vector<TimeSlice>& slices() const { return slices_; }
    [[nodiscard]] std::size_t slice_count() const { return slices_.size(); }
    [[nodiscard]] const std::vector<int>& initial_excitations() const { return initial_excitations_; }

    /// Marks a qubit as prepared in |1> before the first slice.
    void add_initial_excitation(int q);

    /// Returns the slice index the gate was placed in.
    std::size_t append(const Gate& gate);
    /// Like append(), but never earlier than `first_slice`.
    std::size_t append_at_or_after(const Gate& gate, std::size_t first_slice);
    /// Appends a gateless slice lasting `microseconds`; acts as a barrier.
    void append_delay(double microseconds);
    /// Appends every gate of `other` (same width) in its slice order.
    void append_circuit(const Circuit& other);

    /// First slice index at which `q` is free.
    [[nodiscard]] std::size_t ready_slice(int q) const;

    void for_each_gate(const std::function<void(const Gate&)>& fn) const;

private:
    void validate(const Gate& gate) const;

    int width_;
    std::vector<TimeSlice> slices_;
    std::vector<int> initial_excitations_;
    std::vector<std::size_t> ready_;
};

/// Sum of slice durations in units (U3 = 2, others 1).
[[nodiscard]] int depth(const Circuit& circuit);
/// Number of non-empty gate slices, every gate counted as one step.
[[nodiscard]] int unit_depth(const Circuit& circuit);
[[nodiscard]] std::size_t gate_count(const Circuit& circuit);
[[nodiscard]] std::size_t count_gates(const Circuit& circuit, GateKind kind);
/// Number of slices containing at least one gate of `kind`.
[[nodiscard]] std::size_t count_slices_with(const Circuit& circuit, GateKind kind);

enum class CrotLowering {
    /// Time order CNOT, U3(-t/2), CNOT, U3(t/2) on the target; exact controlled-G(p).
    FourGate,
    /// Time order U3(t'), CNOT, U3(-t') with sin t' = sqrt(p); exact when the target is |0>.
    ThreeGate,
};

/// Rotation angle theta of G(p): cos(theta/2) = sqrt(p).
[[nodiscard]] double crot_theta(Ratio p);

/// Replaces every CROT by its lowered sequence. Each original slice expands
/// into consecutive sub-slices, so blocks stay atomic in time.
[[nodiscard]] Circuit lower_crot(const Circuit& circuit, CrotLowering scheme = CrotLowering::ThreeGate);

/// OpenQASM 2.0 with one register `q`. Throws on unlowered CROT.
[[nodiscard]] std::string to_qasm(const Circuit& circuit, bool measure_all = false);

[[nodiscard]] nlohmann::json to_json(const Circuit& circuit);
[[nodiscard]] Circuit circuit_from_json(const nlohmann::json& doc);

}  // namespace ghzw::ir
