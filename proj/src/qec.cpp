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

#include "ghzw/qec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ghzw/sampling.hpp"
#include "ghzw/trajectory.hpp"

namespace ghzw::qec {

using ir::Circuit;
using ir::Gate;
using sim::cplx;
using sim::StateVector;

AncillaLayout AncillaLayout::compact(int n) {
    if (n < 2) throw std::invalid_argument("qec: need at least 2 data qubits");
    AncillaLayout layout;
    for (int k = 0; k < n; ++k) {
        layout.lq.push_back(k);
        layout.lp.push_back(n + k);
    }
    layout.width = 2 * n;
    return layout;
}

AncillaLayout AncillaLayout::device(int n) {
    AncillaLayout layout;
    layout.width = 16;
    if (n == 3) {
        layout.lq = {2, 3, 4};
        layout.lp = {15, 14, 13};
    } else if (n == 4) {
        layout.lq = {1, 2, 3, 4};
        layout.lp = {0, 15, 14, 13};
    } else {
        throw std::invalid_argument("qec: device layout exists for N = 3 and N = 4 only");
    }
    return layout;
}

void AncillaLayout::validate() const {
    if (lq.size() != lp.size() || lq.size() < 2) throw std::invalid_argument("qec: LQ and LP must have equal size >= 2");
    std::set<int> seen;
    for (const auto* v : {&lq, &lp}) {
        for (int q : *v) {
            if (q < 0 || q >= width) throw std::out_of_range("qec: layout qubit out of range");
            if (!seen.insert(q).second) throw std::invalid_argument("qec: layout qubit used twice");
        }
    }
}

std::string to_string(const ErrorSpec& spec) {
    char buf[64];
    switch (spec.kind) {
        case ErrorKind::BitFlip:
            std::snprintf(buf, sizeof buf, "bit:%d", spec.location);
            break;
        case ErrorKind::PhaseFlip:
            std::snprintf(buf, sizeof buf, "phase:%d", spec.location);
            break;
        case ErrorKind::ArbitraryPhase:
            std::snprintf(buf, sizeof buf, "arb:%d:%.17g", spec.location, spec.alpha);
            break;
    }
    return buf;
}

ErrorSpec parse_error(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    ErrorSpec spec;
    try {
        if (parts.size() == 2 && parts[0] == "bit") {
            spec.kind = ErrorKind::BitFlip;
        } else if (parts.size() == 2 && parts[0] == "phase") {
            spec.kind = ErrorKind::PhaseFlip;
        } else if (parts.size() == 3 && parts[0] == "arb") {
            spec.kind = ErrorKind::ArbitraryPhase;
            spec.alpha = std::stod(parts[2]);
        } else {
            throw std::invalid_argument("");
        }
        spec.location = std::stoi(parts[1]);
    } catch (const std::exception&) {
        throw std::invalid_argument("qec: bad error spec '" + text + "' (bit:K, phase:K or arb:K:ALPHA)");
    }
    return spec;
}

Circuit phase_ancilla_prepare(const AncillaLayout& layout) {
    layout.validate();
    Circuit c(layout.width);
    c.append(Gate::h(layout.lp[layout.n() - 1]));
    return c;
}

Circuit build_phase_check(const AncillaLayout& layout) {
    layout.validate();
    Circuit c(layout.width);
    const auto& lq = layout.lq;
    const auto& lp = layout.lp;
    for (int k = layout.n() - 1; k >= 1; --k) {
        c.append(Gate::cnot(lp[k], lq[k]));
        c.append(Gate::swap(lp[k], lp[k - 1]));
    }
    return c;
}

Circuit phase_check_closure(const AncillaLayout& layout) {
    layout.validate();
    Circuit c(layout.width);
    c.append(Gate::cnot(layout.lp[0], layout.lq[0]));
    return c;
}

Circuit build_parity_check(const AncillaLayout& layout) {
    layout.validate();
    Circuit c(layout.width);
    const auto& lq = layout.lq;
    const auto& lp = layout.lp;
    for (int k = 0; k + 1 < layout.n(); ++k) {
        c.append(Gate::cnot(lq[k + 1], lp[k + 1]));
        c.append(Gate::swap(lp[k + 1], lp[k]));
        c.append(Gate::cnot(lq[k], lp[k]));
    }
    return c;
}

Circuit build_ancillas(const AncillaLayout& layout) {
    Circuit c = phase_ancilla_prepare(layout);
    c.append_circuit(build_phase_check(layout));
    c.append_circuit(phase_check_closure(layout));
    c.append_circuit(build_parity_check(layout));
    return c;
}

Circuit manual_ancillas(const AncillaLayout& layout) { return phase_ancilla_prepare(layout); }

Circuit build_bitflip_correction(const AncillaLayout& layout) {
    layout.validate();
    Circuit c(layout.width);
    const auto& lq = layout.lq;
    const auto& lp = layout.lp;
    for (int k = 0; k + 1 < layout.n(); ++k) {
        c.append(Gate::cnot(lq[k], lp[k]));
        c.append(Gate::swap(lp[k], lp[k + 1]));
        c.append(Gate::cnot(lq[k + 1], lp[k + 1]));
        c.append(Gate::cnot(lp[k + 1], lq[k + 1]));
        c.append(Gate::swap(lp[k], lp[k + 1]));
    }
    return c;
}

namespace {

// Controlled X^N from the phase ancilla; it ends on LP[0].
Circuit compare(const AncillaLayout& layout) {
    Circuit c = build_phase_check(layout);
    c.append_circuit(phase_check_closure(layout));
    return c;
}

// Exact reverse of compare(); every gate is self-inverse.
Circuit uncompare(const AncillaLayout& layout) {
    Circuit fwd = compare(layout);
    std::vector<Gate> gates;
    fwd.for_each_gate([&](const Gate& g) { gates.push_back(g); });
    Circuit c(layout.width);
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) c.append(*it);
    return c;
}

}  // namespace

PhaseCorrection build_phase_correction(const AncillaLayout& layout, PhaseMode mode) {
    PhaseCorrection pc;
    pc.before = compare(layout);
    const int anc = layout.lp[0];
    const int d0 = layout.lq[0];
    if (mode == PhaseMode::Flip) {
        pc.before.append(Gate::h(anc));
        pc.before.append(Gate::h(d0));
        pc.before.append(Gate::cnot(anc, d0));
        pc.before.append(Gate::h(d0));
        pc.before.append(Gate::h(anc));
        pc.before.append_circuit(uncompare(layout));
        pc.after = Circuit(layout.width);
    } else {
        pc.measure = true;
        pc.ancilla = anc;
        pc.after = uncompare(layout);
    }
    return pc;
}

Circuit inject_error(const Circuit& circuit, const AncillaLayout& layout, const ErrorSpec& spec) {
    if (spec.location < 0 || spec.location >= layout.n()) throw std::out_of_range("qec: error location outside LQ");
    Circuit c = circuit;
    const int q = layout.lq[spec.location];
    switch (spec.kind) {
        case ErrorKind::BitFlip:
            c.append(Gate::x(q));
            break;
        case ErrorKind::PhaseFlip:
            c.append(Gate::u3(0.0, 0.0, std::numbers::pi, q));
            break;
        case ErrorKind::ArbitraryPhase:
            c.append(Gate::u3(0.0, 0.0, spec.alpha, q));
            break;
    }
    return c;
}

std::string program_text(const Circuit& circuit, const AncillaLayout& layout) {
    auto name = [&](int q) {
        for (int k = 0; k < layout.n(); ++k) {
            if (layout.lq[k] == q) return "LQ[" + std::to_string(k) + "]";
            if (layout.lp[k] == q) return "LP[" + std::to_string(k) + "]";
        }
        return "q[" + std::to_string(q) + "]";
    };
    std::ostringstream out;
    circuit.for_each_gate([&](const Gate& g) {
        out << ir::kind_name(g.kind) << "(" << name(g.qubits[0]);
        if (g.arity() == 2) out << ", " << name(g.qubits[1]);
        out << ")\n";
    });
    return out.str();
}

namespace {

// Index of each full basis state split into (data index in LQ order, rest).
struct Split {
    std::vector<std::uint64_t> data_mask;  // per LQ entry
    std::uint64_t all_data = 0;
};

Split split_for(const AncillaLayout& layout) {
    Split s;
    for (int q : layout.lq) {
        s.data_mask.push_back(sim::qubit_mask(layout.width, q));
        s.all_data |= s.data_mask.back();
    }
    return s;
}

std::uint64_t data_index(std::uint64_t i, const Split& s) {
    std::uint64_t d = 0;
    for (auto m : s.data_mask) d = (d << 1) | ((i & m) ? 1u : 0u);
    return d;
}

}  // namespace

double data_overlap(const StateVector& state, const AncillaLayout& layout) {
    if (state.width() != layout.width) throw std::invalid_argument("qec: state width does not match layout");
    const Split s = split_for(layout);
    const std::uint64_t ones = (std::uint64_t{1} << layout.n()) - 1;
    // <GHZ| restricted to data: amplitude 1/sqrt2 on 0..0 and 1..1.
    std::vector<cplx> acc(state.dim(), 0.0);
    const auto& a = state.amplitudes();
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        const auto d = data_index(i, s);
        if (d == 0 || d == ones) acc[i & ~s.all_data] += a[i] * (1.0 / std::numbers::sqrt2);
    }
    double f = 0.0;
    for (const auto& v : acc) f += std::norm(v);
    return f;
}

double data_fidelity(const StateVector& state, const AncillaLayout& layout) {
    return std::sqrt(std::max(0.0, data_overlap(state, layout)));
}

Eigen::MatrixXcd data_density(const StateVector& state, const AncillaLayout& layout) {
    const Split s = split_for(layout);
    const std::size_t dd = std::size_t{1} << layout.n();
    const std::size_t rest_dim = std::size_t{1} << (layout.width - layout.n());
    // Columns: rest index compressed by enumeration order of first appearance.
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dd), static_cast<Eigen::Index>(rest_dim));
    std::vector<std::uint64_t> anc_masks;
    for (int q = 0; q < layout.width; ++q) {
        const auto m = sim::qubit_mask(layout.width, q);
        if (!(m & s.all_data)) anc_masks.push_back(m);
    }
    const auto& a = state.amplitudes();
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        std::uint64_t r = 0;
        for (auto m : anc_masks) r = (r << 1) | ((i & m) ? 1u : 0u);
        psi(static_cast<Eigen::Index>(data_index(i, s)), static_cast<Eigen::Index>(r)) = a[i];
    }
    return psi * psi.adjoint();
}

double probability_x_minus(const StateVector& state, int q) {
    StateVector tmp = state;
    tmp.apply_gate(Gate::h(q));
    return tmp.probability_one(q);
}

double project_x(StateVector& state, int q, int outcome) {
    state.apply_gate(Gate::h(q));
    const auto m = sim::qubit_mask(state.width(), q);
    auto& a = state.amplitudes();
    double p = 0.0;
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        const bool one = (i & m) != 0;
        if (one != (outcome == 1)) {
            a[i] = 0.0;
        } else {
            p += std::norm(a[i]);
        }
    }
    if (p <= 0.0) throw std::runtime_error("qec: projection onto a zero-probability outcome");
    state.normalize();
    state.apply_gate(Gate::h(q));
    return p;
}

nlohmann::json QecReport::to_json() const {
    nlohmann::json doc;
    doc["n"] = n;
    auto errs = nlohmann::json::array();
    for (const auto& e : errors) errs.push_back(qec::to_string(e));
    doc["errors"] = errs;
    doc["fidelity_before"] = fidelity_before;
    doc["fidelity_after"] = fidelity_after;
    doc["fidelity_baseline"] = fidelity_baseline;
    doc["correction_duration_us"] = correction_duration_us;
    doc["outcomes"] = outcomes;
    doc["outcome_probability"] = outcome_probability;
    doc["gate_counts"] = gate_counts;
    return doc;
}

namespace {

double duration_us(const Circuit& c, const sim::NoiseModel& noise) {
    double t = 0.0;
    for (const auto& s : c.slices()) t += s.is_delay() ? s.idle_us : s.duration_units() * noise.slice_duration_us;
    return t;
}

nlohmann::json counts_of(const Circuit& c) {
    return {{"gates", ir::gate_count(c)},
            {"cnot", ir::count_gates(c, ir::GateKind::CNOT)},
            {"swap", ir::count_gates(c, ir::GateKind::SWAP)},
            {"depth", ir::depth(c)}};
}

}  // namespace

QecReport qec_pipeline(int n, const std::vector<ErrorSpec>& errors, const sim::NoiseModel& noise,
                       const QecOptions& options) {
    const AncillaLayout layout = options.device_layout ? AncillaLayout::device(n) : AncillaLayout::compact(n);
    noise.validate(layout.width);
    if (options.trajectories == 0) throw std::invalid_argument("qec: trajectories must be positive");

    Circuit prep(layout.width);
    prep.append(Gate::h(layout.lq[0]));
    for (int k = 0; k + 1 < n; ++k) prep.append(Gate::cnot(layout.lq[k], layout.lq[k + 1]));
    prep.append_circuit(options.manual_ancillas ? manual_ancillas(layout) : build_ancillas(layout));

    Circuit injected(layout.width);
    for (const auto& e : errors) injected = inject_error(injected, layout, e);

    const PhaseCorrection arb = build_phase_correction(layout, PhaseMode::Arbitrary);
    const PhaseCorrection flip = build_phase_correction(layout, PhaseMode::Flip);
    const Circuit bitflip = build_bitflip_correction(layout);

    // Whole correction stage, for gate counts and the idle baseline.
    Circuit correction(layout.width);
    if (options.arbitrary) {
        correction.append_circuit(arb.before);
        correction.append_circuit(arb.after);
    }
    if (options.flip) correction.append_circuit(flip.before);
    if (options.bitflip) correction.append_circuit(bitflip);

    QecReport report;
    report.n = n;
    report.errors = errors;
    report.correction_duration_us = duration_us(correction, noise);
    report.gate_counts = {{"preparation", counts_of(prep)}, {"correction", counts_of(correction)}};
    report.rho_after = Eigen::MatrixXcd::Zero(std::int64_t{1} << n, std::int64_t{1} << n);

    const bool noisy = noise.has_decay() || noise.cnot_error > 0.0;
    const std::uint64_t trajectories = noisy ? options.trajectories : 1;
    double before = 0.0;
    double after = 0.0;
    double outcome_p = 0.0;
    for (std::uint64_t t = 0; t < trajectories; ++t) {
        sim::Rng rng(sim::derive_seed(options.seed, {t}));
        StateVector state(layout.width);
        sim::evolve_trajectory(state, prep, noise, rng);
        sim::evolve_trajectory(state, injected, noise, rng);
        before += data_overlap(state, layout);

        if (options.arbitrary) {
            sim::evolve_trajectory(state, arb.before, noise, rng);
            const double p_minus = probability_x_minus(state, arb.ancilla);
            int outcome = 0;
            if (options.outcome == Outcome::MostLikely) {
                outcome = p_minus > 0.5 ? 1 : 0;
            } else {
                outcome = rng.uniform() < p_minus ? 1 : 0;
            }
            const double p = project_x(state, arb.ancilla, outcome);
            if (t == 0) report.outcomes.push_back(outcome);
            outcome_p += p;
            sim::evolve_trajectory(state, arb.after, noise, rng);
        }
        if (options.flip) sim::evolve_trajectory(state, flip.before, noise, rng);
        if (options.bitflip) sim::evolve_trajectory(state, bitflip, noise, rng);
        after += data_overlap(state, layout);
        report.rho_after += data_density(state, layout);
    }
    const double inv = 1.0 / static_cast<double>(trajectories);
    report.fidelity_before = std::sqrt(std::max(0.0, before * inv));
    report.fidelity_after = std::sqrt(std::max(0.0, after * inv));
    report.outcome_probability = options.arbitrary ? outcome_p * inv : 0.0;
    report.rho_after *= inv;

    if (options.baseline) {
        Circuit idle(layout.width);
        idle.append(Gate::h(layout.lq[0]));
        for (int k = 0; k + 1 < n; ++k) idle.append(Gate::cnot(layout.lq[k], layout.lq[k + 1]));
        idle.append_delay(duration_us(prep, noise) - duration_us(idle, noise) + report.correction_duration_us);
        double base = 0.0;
        for (std::uint64_t t = 0; t < trajectories; ++t) {
            sim::Rng rng(sim::derive_seed(options.seed, {t, 1}));
            StateVector state(layout.width);
            sim::evolve_trajectory(state, idle, noise, rng);
            base += data_overlap(state, layout);
        }
        report.fidelity_baseline = std::sqrt(std::max(0.0, base * inv));
    }
    return report;
}

}  // namespace ghzw::qec
