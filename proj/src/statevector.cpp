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

#include "ghzw/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ghzw::sim {

std::string bitstring(std::uint64_t index, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int q = 0; q < width; ++q) {
        if (index & qubit_mask(width, q)) s[static_cast<std::size_t>(q)] = '1';
    }
    return s;
}

std::uint64_t parse_bitstring(const std::string& bits) {
    if (bits.size() > 63) throw std::invalid_argument("bitstring too long");
    std::uint64_t v = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("bad bitstring '" + bits + "'");
        v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return v;
}

Mat2 u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {cplx(c, 0.0), -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
}

Mat2 single_qubit_matrix(const ir::Gate& gate) {
    const double r = std::numbers::sqrt2 / 2.0;
    switch (gate.kind) {
        case ir::GateKind::H: return {cplx(r), cplx(r), cplx(r), cplx(-r)};
        case ir::GateKind::X: return {cplx(0), cplx(1), cplx(1), cplx(0)};
        case ir::GateKind::U3: return u3_matrix(gate.theta, gate.phi, gate.lambda);
        default: throw std::invalid_argument("single_qubit_matrix: " + ir::to_string(gate) + " is not a 1-qubit gate");
    }
}

Mat2 matmul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

StateVector::StateVector(int width) : width_(width) {
    if (width < 0 || width > kMaxWidth) {
        throw std::invalid_argument("statevector width " + std::to_string(width) + " outside [0, " +
                                    std::to_string(kMaxWidth) + "]");
    }
    amps_.assign(std::size_t{1} << width, cplx(0.0));
    amps_[0] = 1.0;
}

StateVector StateVector::basis(int width, std::uint64_t index) {
    StateVector s(width);
    if (index >= s.dim()) throw std::out_of_range("basis index outside register");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(int width, std::vector<cplx> amplitudes) {
    StateVector s(width);
    if (amplitudes.size() != s.dim()) throw std::invalid_argument("amplitude count does not match width");
    s.amps_ = std::move(amplitudes);
    return s;
}

cplx StateVector::amplitude(const std::string& bits) const {
    if (static_cast<int>(bits.size()) != width_) throw std::invalid_argument("bitstring length mismatch");
    return amps_.at(parse_bitstring(bits));
}

double StateVector::norm_squared() const {
    double n = 0.0;
    for (const auto& a : amps_) n += std::norm(a);
    return n;
}

void StateVector::normalize() {
    const double n = std::sqrt(norm_squared());
    if (n == 0.0) throw std::runtime_error("cannot normalize a zero state");
    for (auto& a : amps_) a /= n;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
}

double StateVector::probability_one(int q) const {
    check_qubit(q);
    const auto m = qubit_mask(width_, q);
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & m) p += std::norm(amps_[i]);
    }
    return p;
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= width_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " outside width " + std::to_string(width_));
    }
}

void StateVector::apply_1q(int q, const Mat2& m) {
    check_qubit(q);
    const auto bit = qubit_mask(width_, q);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        const cplx a0 = amps_[i];
        const cplx a1 = amps_[i | bit];
        amps_[i] = m[0] * a0 + m[1] * a1;
        amps_[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void StateVector::apply_controlled_1q(int control, int target, const Mat2& m) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::invalid_argument("control equals target");
    const auto cbit = qubit_mask(width_, control);
    const auto tbit = qubit_mask(width_, target);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & tbit) || !(i & cbit)) continue;
        const cplx a0 = amps_[i];
        const cplx a1 = amps_[i | tbit];
        amps_[i] = m[0] * a0 + m[1] * a1;
        amps_[i | tbit] = m[2] * a0 + m[3] * a1;
    }
}

void StateVector::apply_x(int q) {
    check_qubit(q);
    const auto bit = qubit_mask(width_, q);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
    }
}

void StateVector::apply_y(int q) {
    check_qubit(q);
    const auto bit = qubit_mask(width_, q);
    const cplx im(0.0, 1.0);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        const cplx a0 = amps_[i];
        const cplx a1 = amps_[i | bit];
        amps_[i] = -im * a1;
        amps_[i | bit] = im * a0;
    }
}

void StateVector::apply_z(int q) {
    check_qubit(q);
    const auto bit = qubit_mask(width_, q);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) amps_[i] = -amps_[i];
    }
}

void StateVector::apply_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::invalid_argument("control equals target");
    const auto cbit = qubit_mask(width_, control);
    const auto tbit = qubit_mask(width_, target);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
    }
}

void StateVector::apply_swap(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) throw std::invalid_argument("swap of a qubit with itself");
    const auto abit = qubit_mask(width_, a);
    const auto bbit = qubit_mask(width_, b);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & abit) && !(i & bbit)) std::swap(amps_[i], amps_[(i & ~abit) | bbit]);
    }
}

void StateVector::apply_gate(const ir::Gate& gate) {
    switch (gate.kind) {
        case ir::GateKind::H:
        case ir::GateKind::U3:
            apply_1q(gate.target(), single_qubit_matrix(gate));
            break;
        case ir::GateKind::X: apply_x(gate.target()); break;
        case ir::GateKind::CNOT: apply_cnot(gate.control(), gate.target()); break;
        case ir::GateKind::SWAP: apply_swap(gate.qubits[0], gate.qubits[1]); break;
        case ir::GateKind::CROT:
            apply_controlled_1q(gate.control(), gate.target(), u3_matrix(ir::crot_theta(gate.ratio), 0.0, 0.0));
            break;
    }
}

void run_on(StateVector& state, const ir::Circuit& circuit) {
    if (circuit.width() != state.width()) throw std::invalid_argument("circuit and state widths differ");
    circuit.for_each_gate([&](const ir::Gate& g) { state.apply_gate(g); });
}

StateVector simulate(const ir::Circuit& circuit) { return simulate(circuit, nullptr); }

StateVector simulate(const ir::Circuit& circuit,
                     const std::function<void(std::size_t, const StateVector&)>& after_slice) {
    StateVector state(circuit.width());
    for (int q : circuit.initial_excitations()) state.apply_x(q);
    const auto& slices = circuit.slices();
    for (std::size_t s = 0; s < slices.size(); ++s) {
        for (const auto& g : slices[s].gates) state.apply_gate(g);
        if (after_slice) after_slice(s, state);
    }
    return state;
}

double pauli_expectation(const StateVector& state, const std::string& pauli) {
    const int w = state.width();
    if (static_cast<int>(pauli.size()) != w) throw std::invalid_argument("Pauli string length must equal width");
    std::uint64_t xmask = 0;
    std::uint64_t zmask = 0;
    int ny = 0;
    for (int q = 0; q < w; ++q) {
        const auto bit = qubit_mask(w, q);
        switch (pauli[static_cast<std::size_t>(q)]) {
            case 'I': break;
            case 'X': xmask |= bit; break;
            case 'Y':
                xmask |= bit;
                zmask |= bit;
                ++ny;
                break;
            case 'Z': zmask |= bit; break;
            default: throw std::invalid_argument("bad Pauli letter in '" + pauli + "'");
        }
    }
    // Y = i X Z, so P|j> = i^ny (-1)^{|j & zmask|} |j ^ xmask>.
    static const cplx kIpow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    const auto& a = state.amplitudes();
    cplx acc = 0.0;
    for (std::uint64_t j = 0; j < a.size(); ++j) {
        const double sign = (std::popcount(j & zmask) & 1) ? -1.0 : 1.0;
        acc += std::conj(a[j ^ xmask]) * a[j] * sign;
    }
    acc *= kIpow[ny % 4];
    return acc.real();
}

cplx inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner product of states with different widths");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    return acc;
}

double overlap_fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

Eigen::MatrixXcd circuit_unitary(const ir::Circuit& circuit) {
    if (circuit.width() > 12) throw std::invalid_argument("circuit_unitary limited to 12 qubits");
    const std::size_t dim = std::size_t{1} << circuit.width();
    Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        auto s = StateVector::basis(circuit.width(), col);
        run_on(s, circuit);
        for (std::size_t row = 0; row < dim; ++row) {
            u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = s.amplitudes()[row];
        }
    }
    return u;
}

StateVector ghz_state(int n) {
    StateVector s(n);
    const double r = std::numbers::sqrt2 / 2.0;
    s.amplitudes()[0] = r;
    s.amplitudes()[s.dim() - 1] = r;
    return s;
}

StateVector w_state(int n) {
    if (n < 1) throw std::invalid_argument("W state needs n >= 1");
    StateVector s(n);
    s.amplitudes()[0] = 0.0;
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (int q = 0; q < n; ++q) s.amplitudes()[qubit_mask(n, q)] = a;
    return s;
}

}  // namespace ghzw::sim
