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

#include "ghzw/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ghzw::ir {

namespace {

std::string fmt_angle(double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", a);
    return buf;
}

}  // namespace

Gate Gate::h(int q) {
    Gate g;
    g.kind = GateKind::H;
    g.qubits = {q, -1};
    return g;
}

Gate Gate::x(int q) {
    Gate g;
    g.kind = GateKind::X;
    g.qubits = {q, -1};
    return g;
}

Gate Gate::cnot(int control, int target) {
    Gate g;
    g.kind = GateKind::CNOT;
    g.qubits = {control, target};
    return g;
}

Gate Gate::u3(double theta, double phi, double lambda, int q) {
    Gate g;
    g.kind = GateKind::U3;
    g.qubits = {q, -1};
    g.theta = theta;
    g.phi = phi;
    g.lambda = lambda;
    return g;
}

Gate Gate::swap(int a, int b) {
    Gate g;
    g.kind = GateKind::SWAP;
    g.qubits = {a, b};
    return g;
}

Gate Gate::crot(Ratio p, int control, int target) {
    if (p.den <= 0 || p.num <= 0 || p.num >= p.den) {
        throw std::invalid_argument("CROT ratio must lie strictly between 0 and 1, got " +
                                    std::to_string(p.num) + "/" + std::to_string(p.den));
    }
    Gate g;
    g.kind = GateKind::CROT;
    g.qubits = {control, target};
    g.ratio = p;
    return g;
}

int Gate::arity() const {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::U3:
            return 1;
        default:
            return 2;
    }
}

int Gate::duration_units() const { return kind == GateKind::U3 ? 2 : 1; }

bool Gate::touches(int q) const {
    return qubits[0] == q || (arity() == 2 && qubits[1] == q);
}

std::string kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::CNOT: return "CNOT";
        case GateKind::U3: return "U3";
        case GateKind::SWAP: return "SWAP";
        case GateKind::CROT: return "CROT";
    }
    return "?";
}

std::string to_string(const Gate& gate) {
    std::ostringstream os;
    os << kind_name(gate.kind);
    if (gate.kind == GateKind::U3) {
        os << "(" << fmt_angle(gate.theta) << "," << fmt_angle(gate.phi) << "," << fmt_angle(gate.lambda) << ")";
    } else if (gate.kind == GateKind::CROT) {
        os << "(" << gate.ratio.num << "/" << gate.ratio.den << ")";
    }
    os << " " << gate.qubits[0];
    if (gate.arity() == 2) os << "," << gate.qubits[1];
    return os.str();
}

int TimeSlice::duration_units() const {
    int units = 0;
    for (const auto& g : gates) units = std::max(units, g.duration_units());
    return units;
}

Circuit::Circuit(int width) : width_(width), ready_(static_cast<std::size_t>(std::max(width, 0)), 0) {
    if (width < 0) throw std::invalid_argument("circuit width must be nonnegative");
}

void Circuit::validate(const Gate& gate) const {
    for (int i = 0; i < gate.arity(); ++i) {
        const int q = gate.qubits[static_cast<std::size_t>(i)];
        if (q < 0 || q >= width_) {
            throw std::out_of_range("gate " + to_string(gate) + " addresses qubit " + std::to_string(q) +
                                    " outside width " + std::to_string(width_));
        }
    }
    if (gate.arity() == 2 && gate.qubits[0] == gate.qubits[1]) {
        throw std::invalid_argument("gate " + to_string(gate) + " repeats a qubit");
    }
    if (gate.kind == GateKind::CROT && (gate.ratio.num <= 0 || gate.ratio.num >= gate.ratio.den)) {
        throw std::invalid_argument("CROT ratio outside (0,1)");
    }
}

void Circuit::add_initial_excitation(int q) {
    if (q < 0 || q >= width_) throw std::out_of_range("initial excitation outside register");
    if (std::find(initial_excitations_.begin(), initial_excitations_.end(), q) == initial_excitations_.end()) {
        initial_excitations_.push_back(q);
        std::sort(initial_excitations_.begin(), initial_excitations_.end());
    }
}

std::size_t Circuit::ready_slice(int q) const {
    if (q < 0 || q >= width_) throw std::out_of_range("qubit outside register");
    return ready_[static_cast<std::size_t>(q)];
}

std::size_t Circuit::append(const Gate& gate) { return append_at_or_after(gate, 0); }

std::size_t Circuit::append_at_or_after(const Gate& gate, std::size_t first_slice) {
    validate(gate);
    std::size_t slot = first_slice;
    for (int i = 0; i < gate.arity(); ++i) {
        slot = std::max(slot, ready_[static_cast<std::size_t>(gate.qubits[static_cast<std::size_t>(i)])]);
    }
    // A delay slice is a barrier: never place gates into it.
    while (slot < slices_.size() && slices_[slot].is_delay()) ++slot;
    if (slot >= slices_.size()) slices_.resize(slot + 1);
    slices_[slot].gates.push_back(gate);
    for (int i = 0; i < gate.arity(); ++i) {
        ready_[static_cast<std::size_t>(gate.qubits[static_cast<std::size_t>(i)])] = slot + 1;
    }
    return slot;
}

void Circuit::append_delay(double microseconds) {
    if (!(microseconds >= 0.0)) throw std::invalid_argument("delay must be nonnegative");
    if (microseconds == 0.0) return;
    TimeSlice slice;
    slice.idle_us = microseconds;
    slices_.push_back(std::move(slice));
    std::fill(ready_.begin(), ready_.end(), slices_.size());
}

void Circuit::append_circuit(const Circuit& other) {
    if (other.width() != width_) throw std::invalid_argument("append_circuit: width mismatch");
    for (const auto& slice : other.slices()) {
        if (slice.is_delay()) {
            append_delay(slice.idle_us);
            continue;
        }
        for (const auto& g : slice.gates) append(g);
    }
}

void Circuit::for_each_gate(const std::function<void(const Gate&)>& fn) const {
    for (const auto& slice : slices_) {
        for (const auto& g : slice.gates) fn(g);
    }
}

int depth(const Circuit& circuit) {
    int total = 0;
    for (const auto& slice : circuit.slices()) total += slice.duration_units();
    return total;
}

int unit_depth(const Circuit& circuit) {
    int total = 0;
    for (const auto& slice : circuit.slices()) total += slice.gates.empty() ? 0 : 1;
    return total;
}

std::size_t gate_count(const Circuit& circuit) {
    std::size_t n = 0;
    for (const auto& slice : circuit.slices()) n += slice.gates.size();
    return n;
}

std::size_t count_gates(const Circuit& circuit, GateKind kind) {
    std::size_t n = 0;
    circuit.for_each_gate([&](const Gate& g) { n += g.kind == kind ? 1 : 0; });
    return n;
}

std::size_t count_slices_with(const Circuit& circuit, GateKind kind) {
    std::size_t n = 0;
    for (const auto& slice : circuit.slices()) {
        n += std::any_of(slice.gates.begin(), slice.gates.end(), [&](const Gate& g) { return g.kind == kind; }) ? 1 : 0;
    }
    return n;
}

double crot_theta(Ratio p) { return 2.0 * std::acos(std::sqrt(p.value())); }

Circuit lower_crot(const Circuit& circuit, CrotLowering scheme) {
    Circuit out(circuit.width());
    for (int q : circuit.initial_excitations()) out.add_initial_excitation(q);
    for (const auto& slice : circuit.slices()) {
        if (slice.is_delay()) {
            out.append_delay(slice.idle_us);
            continue;
        }
        const std::size_t base = out.slice_count();
        for (const auto& g : slice.gates) {
            if (g.kind != GateKind::CROT) {
                out.append_at_or_after(g, base);
                continue;
            }
            const int c = g.control();
            const int t = g.target();
            if (scheme == CrotLowering::FourGate) {
                const double half = crot_theta(g.ratio) / 2.0;
                out.append_at_or_after(Gate::cnot(c, t), base);
                out.append_at_or_after(Gate::u3(-half, 0.0, 0.0, t), base);
                out.append_at_or_after(Gate::cnot(c, t), base);
                out.append_at_or_after(Gate::u3(half, 0.0, 0.0, t), base);
            } else {
                const double prime = std::asin(std::sqrt(g.ratio.value()));
                out.append_at_or_after(Gate::u3(prime, 0.0, 0.0, t), base);
                out.append_at_or_after(Gate::cnot(c, t), base);
                out.append_at_or_after(Gate::u3(-prime, 0.0, 0.0, t), base);
            }
        }
    }
    return out;
}

std::string to_qasm(const Circuit& circuit, bool measure_all) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\n";
    os << "include \"qelib1.inc\";\n";
    os << "qreg q[" << circuit.width() << "];\n";
    if (measure_all) os << "creg c[" << circuit.width() << "];\n";
    for (int q : circuit.initial_excitations()) os << "x q[" << q << "];\n";
    for (const auto& slice : circuit.slices()) {
        if (slice.is_delay()) {
            os << "barrier q;\n";
            continue;
        }
        for (const auto& g : slice.gates) {
            const int a = g.qubits[0];
            const int b = g.qubits[1];
            switch (g.kind) {
                case GateKind::H: os << "h q[" << a << "];\n"; break;
                case GateKind::X: os << "x q[" << a << "];\n"; break;
                case GateKind::CNOT: os << "cx q[" << a << "],q[" << b << "];\n"; break;
                case GateKind::U3:
                    os << "u3(" << fmt_angle(g.theta) << "," << fmt_angle(g.phi) << "," << fmt_angle(g.lambda)
                       << ") q[" << a << "];\n";
                    break;
                case GateKind::SWAP:
                    // qelib1.inc has no swap.
                    os << "cx q[" << a << "],q[" << b << "];\n";
                    os << "cx q[" << b << "],q[" << a << "];\n";
                    os << "cx q[" << a << "],q[" << b << "];\n";
                    break;
                case GateKind::CROT:
                    throw std::invalid_argument("to_qasm: circuit contains an unlowered CROT; call lower_crot first");
            }
        }
    }
    if (measure_all) os << "measure q -> c;\n";
    return os.str();
}

nlohmann::json to_json(const Circuit& circuit) {
    nlohmann::json slices = nlohmann::json::array();
    for (const auto& slice : circuit.slices()) {
        nlohmann::json gates = nlohmann::json::array();
        for (const auto& g : slice.gates) {
            nlohmann::json rec;
            rec["kind"] = kind_name(g.kind);
            nlohmann::json qubits = nlohmann::json::array();
            for (int i = 0; i < g.arity(); ++i) qubits.push_back(g.qubits[static_cast<std::size_t>(i)]);
            rec["qubits"] = qubits;
            if (g.kind == GateKind::U3) {
                rec["params"] = {g.theta, g.phi, g.lambda};
            } else if (g.kind == GateKind::CROT) {
                rec["params"] = {g.ratio.num, g.ratio.den};
            } else {
                rec["params"] = nlohmann::json::array();
            }
            gates.push_back(rec);
        }
        nlohmann::json s;
        s["duration_units"] = slice.duration_units();
        s["gates"] = gates;
        if (slice.is_delay()) s["idle_us"] = slice.idle_us;
        slices.push_back(s);
    }
    nlohmann::json doc;
    doc["width"] = circuit.width();
    doc["initial_excitations"] = circuit.initial_excitations();
    doc["slices"] = slices;
    return doc;
}

Circuit circuit_from_json(const nlohmann::json& doc) {
    Circuit c(doc.at("width").get<int>());
    for (int q : doc.value("initial_excitations", std::vector<int>{})) c.add_initial_excitation(q);
    for (const auto& s : doc.at("slices")) {
        if (s.contains("idle_us") && s.at("gates").empty()) {
            c.append_delay(s.at("idle_us").get<double>());
            continue;
        }
        const std::size_t index = c.slice_count();
        for (const auto& rec : s.at("gates")) {
            const auto kind = rec.at("kind").get<std::string>();
            const auto q = rec.at("qubits").get<std::vector<int>>();
            const auto& params = rec.at("params");
            auto need = [&](std::size_t n) {
                if (q.size() != n) throw std::invalid_argument("gate record " + kind + " has wrong qubit count");
            };
            Gate g;
            if (kind == "H") {
                need(1);
                g = Gate::h(q[0]);
            } else if (kind == "X") {
                need(1);
                g = Gate::x(q[0]);
            } else if (kind == "CNOT") {
                need(2);
                g = Gate::cnot(q[0], q[1]);
            } else if (kind == "SWAP") {
                need(2);
                g = Gate::swap(q[0], q[1]);
            } else if (kind == "U3") {
                need(1);
                g = Gate::u3(params.at(0).get<double>(), params.at(1).get<double>(), params.at(2).get<double>(), q[0]);
            } else if (kind == "CROT") {
                need(2);
                g = Gate::crot({params.at(0).get<int>(), params.at(1).get<int>()}, q[0], q[1]);
            } else {
                throw std::invalid_argument("unknown gate kind '" + kind + "'");
            }
            c.append_at_or_after(g, index);
        }
    }
    return c;
}

}  // namespace ghzw::ir
