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

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "ghzw/qec.hpp"
#include "ghzw/statevector.hpp"
#include "ghzw/topology.hpp"

namespace {

using namespace ghzw;
using ir::Circuit;
using ir::Gate;
using qec::AncillaLayout;
using qec::ErrorKind;
using qec::ErrorSpec;

// Data-qubit density over LQ from the full state, by explicit partial trace.
Eigen::MatrixXcd reduced(const sim::StateVector& s, const AncillaLayout& l) {
    const int n = l.n();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        for (std::uint64_t j = 0; j < s.dim(); ++j) {
            bool same_rest = true;
            for (int q = 0; q < l.width; ++q) {
                bool data = false;
                for (int d : l.lq) data = data || d == q;
                if (!data && (((i ^ j) >> (l.width - 1 - q)) & 1)) same_rest = false;
            }
            if (!same_rest) continue;
            int a = 0, b = 0;
            for (int d : l.lq) {
                a = (a << 1) | static_cast<int>((i >> (l.width - 1 - d)) & 1);
                b = (b << 1) | static_cast<int>((j >> (l.width - 1 - d)) & 1);
            }
            rho(a, b) += s.amplitude(i) * std::conj(s.amplitude(j));
        }
    }
    return rho;
}

Eigen::VectorXcd pair_state(int n, std::uint64_t a, std::uint64_t b, std::complex<double> rel) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(1 << n);
    v(static_cast<Eigen::Index>(a)) = 1 / std::sqrt(2.0);
    v(static_cast<Eigen::Index>(b)) = rel / std::sqrt(2.0);
    return v;
}

Circuit ghz_on(const AncillaLayout& l) {
    Circuit c(l.width);
    c.append(Gate::h(l.lq[0]));
    for (int k = 0; k + 1 < l.n(); ++k) c.append(Gate::cnot(l.lq[k], l.lq[k + 1]));
    return c;
}

TEST(Layout, CompactAndDevice) {
    const auto c = AncillaLayout::compact(3);
    EXPECT_EQ(c.lp, (std::vector<int>{3, 4, 5}));
    const auto d = AncillaLayout::device(4);
    EXPECT_EQ(d.lq, (std::vector<int>{1, 2, 3, 4}));
    EXPECT_EQ(d.lp, (std::vector<int>{0, 15, 14, 13}));
    EXPECT_THROW((void)AncillaLayout::device(5), std::invalid_argument);
    AncillaLayout bad = c;
    bad.lp[0] = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Program, Goldens) {
    const auto l = AncillaLayout::compact(3);
    EXPECT_EQ(qec::program_text(qec::build_phase_check(l), l),
              "CNOT(LP[2], LQ[2])\nSWAP(LP[2], LP[1])\nCNOT(LP[1], LQ[1])\nSWAP(LP[1], LP[0])\n");
    EXPECT_EQ(qec::program_text(qec::build_parity_check(l), l),
              "CNOT(LQ[1], LP[1])\nCNOT(LQ[2], LP[2])\nSWAP(LP[1], LP[0])\n"
              "CNOT(LQ[0], LP[0])\nSWAP(LP[2], LP[1])\nCNOT(LQ[1], LP[1])\n");
    EXPECT_EQ(qec::program_text(qec::build_bitflip_correction(l), l).substr(0, 57),
              "CNOT(LQ[0], LP[0])\nSWAP(LP[0], LP[1])\nCNOT(LQ[1], LP[1])\n");
}

// On the device layout every two-qubit gate sits on a coupling edge.
TEST(Program, DeviceGatesAreAdjacent) {
    const auto g = transpile::load_coupling(std::string(GHZW_CONFIG_DIR) + "/ladder16.txt");
    for (int n : {3, 4}) {
        const auto l = AncillaLayout::device(n);
        Circuit all = qec::build_ancillas(l);
        all.append_circuit(qec::build_bitflip_correction(l));
        all.append_circuit(qec::build_phase_correction(l, qec::PhaseMode::Flip).before);
        all.for_each_gate([&](const Gate& gate) {
            if (gate.arity() == 2) EXPECT_TRUE(g.adjacent(gate.qubits[0], gate.qubits[1])) << ir::to_string(gate);
        });
    }
}

// Ancillas of an ideal GHZ factor out as |0...0> (parities) and |+> (phase).
TEST(Ancillas, ProductWithGhz) {
    for (int n : {2, 3, 4}) {
        const auto l = AncillaLayout::compact(n);
        Circuit c = ghz_on(l);
        c.append_circuit(qec::build_ancillas(l));
        const auto s = sim::simulate(c);
        Circuit m = ghz_on(l);
        m.append_circuit(qec::manual_ancillas(l));
        EXPECT_NEAR(sim::overlap_fidelity(s, sim::simulate(m)), 1.0, 1e-12) << n;
    }
}

// LP[k] = x_k xor x_{k+1} for every data basis state.
TEST(ParityCheckProperty, AllBasisInputs) {
    for (int n : {3, 4}) {
        const auto l = AncillaLayout::compact(n);
        for (int x = 0; x < (1 << n); ++x) {
            Circuit c(l.width);
            for (int k = 0; k < n; ++k)
                if ((x >> (n - 1 - k)) & 1) c.add_initial_excitation(l.lq[k]);
            c.append_circuit(qec::build_parity_check(l));
            const auto s = sim::simulate(c);
            for (int k = 0; k + 1 < n; ++k) {
                const int want = ((x >> (n - 1 - k)) ^ (x >> (n - 2 - k))) & 1;
                EXPECT_NEAR(s.probability_one(l.lp[k]), want, 1e-12) << n << " " << x << " " << k;
            }
            EXPECT_NEAR(s.probability_one(l.lp[n - 1]), 0.0, 1e-12);
        }
    }
}

TEST(Fidelity, MatchesPartialTrace) {
    const auto l = AncillaLayout::compact(3);
    Circuit c = ghz_on(l);
    c.append_circuit(qec::build_ancillas(l));
    c = qec::inject_error(c, l, {ErrorKind::ArbitraryPhase, 1, 0.7});
    c.append(Gate::h(l.lp[0]));
    c.append(Gate::cnot(l.lp[0], l.lq[2]));
    const auto s = sim::simulate(c);
    const auto rho = reduced(s, l);
    const Eigen::VectorXcd g = pair_state(3, 0, 7, 1.0);
    EXPECT_NEAR(qec::data_overlap(s, l), (g.adjoint() * rho * g)(0, 0).real(), 1e-12);
    EXPECT_LT((qec::data_density(s, l) - rho).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Correction, SingleBitFlipsEveryLocation) {
    for (bool device : {false, true}) {
        for (int n : {3, 4}) {
            for (int loc = 0; loc < n; ++loc) {
                qec::QecOptions opt;
                opt.device_layout = device;
                opt.baseline = false;
                const auto r = qec::qec_pipeline(n, {{ErrorKind::BitFlip, loc, 0}}, sim::NoiseModel::ideal(), opt);
                EXPECT_NEAR(r.fidelity_after, 1.0, 1e-9) << n << " " << loc;
                EXPECT_LT(r.fidelity_before, 0.5);
            }
        }
    }
}

TEST(Correction, SinglePhaseFlipsEveryLocation) {
    for (int n : {3, 4}) {
        for (int loc = 0; loc < n; ++loc) {
            for (bool arbitrary : {false, true}) {
                qec::QecOptions opt;
                opt.arbitrary = arbitrary;
                opt.baseline = false;
                const auto r = qec::qec_pipeline(n, {{ErrorKind::PhaseFlip, loc, 0}}, sim::NoiseModel::ideal(), opt);
                EXPECT_NEAR(r.fidelity_after, 1.0, 1e-9) << n << " " << loc;
                EXPECT_NEAR(r.fidelity_before, 0.0, 1e-9);
            }
        }
    }
}

TEST(Correction, UncorruptedIsUnchanged) {
    qec::QecOptions opt;
    opt.baseline = false;
    const auto r = qec::qec_pipeline(3, {}, sim::NoiseModel::ideal(), opt);
    EXPECT_NEAR(r.fidelity_before, 1.0, 1e-12);
    EXPECT_NEAR(r.fidelity_after, 1.0, 1e-12);
}

// X on LQ[2], Z and a pi/8 phase on LQ[0].
TEST(Correction, ArbitraryPhaseExample) {
    const std::vector<ErrorSpec> errors{
        {ErrorKind::BitFlip, 2, 0}, {ErrorKind::PhaseFlip, 0, 0}, {ErrorKind::ArbitraryPhase, 0, M_PI / 8}};
    qec::QecOptions opt;
    opt.baseline = false;
    opt.flip = false;
    opt.bitflip = false;
    auto r = qec::qec_pipeline(3, errors, sim::NoiseModel::ideal(), opt);
    Eigen::VectorXcd want = pair_state(3, 0b001, 0b110, -1.0);
    EXPECT_LT((r.rho_after - want * want.adjoint()).cwiseAbs().maxCoeff(), 1e-9);
    ASSERT_EQ(r.outcomes.size(), 1u);
    EXPECT_EQ(r.outcomes[0], 1);
    EXPECT_NEAR(r.outcome_probability, std::pow(std::cos(M_PI / 16), 2), 1e-12);

    opt.flip = true;
    r = qec::qec_pipeline(3, errors, sim::NoiseModel::ideal(), opt);
    want = pair_state(3, 0b001, 0b110, 1.0);
    EXPECT_LT((r.rho_after - want * want.adjoint()).cwiseAbs().maxCoeff(), 1e-9);

    opt.bitflip = true;
    r = qec::qec_pipeline(3, errors, sim::NoiseModel::ideal(), opt);
    EXPECT_NEAR(r.fidelity_after, 1.0, 1e-9);
}

TEST(Correction, NoisyPipelineLosesToIdleBaseline) {
    qec::QecOptions opt;
    opt.trajectories = 200;
    opt.seed = 12;
    const auto r = qec::qec_pipeline(3, {{ErrorKind::BitFlip, 1, 0}}, sim::NoiseModel::synthetic_default(), opt);
    EXPECT_LT(r.fidelity_after, r.fidelity_baseline);
    EXPECT_GT(r.correction_duration_us, 0.0);
}

TEST(Errors, ParseAndPrint) {
    const auto e = qec::parse_error("arb:1:0.5");
    EXPECT_EQ(e.kind, ErrorKind::ArbitraryPhase);
    EXPECT_EQ(e.location, 1);
    EXPECT_EQ(e.alpha, 0.5);
    EXPECT_EQ(qec::to_string(qec::parse_error("bit:2")), "bit:2");
    EXPECT_THROW((void)qec::parse_error("flip:1"), std::invalid_argument);
    EXPECT_THROW((void)qec::parse_error("bit:x"), std::invalid_argument);
    EXPECT_THROW((void)qec::inject_error(Circuit(6), AncillaLayout::compact(3), {ErrorKind::BitFlip, 3, 0}),
                 std::out_of_range);
}

}  // namespace
