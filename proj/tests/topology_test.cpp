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
#include <functional>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "ghzw/builders.hpp"
#include "ghzw/circuit.hpp"
#include "ghzw/statevector.hpp"
#include "ghzw/topology.hpp"

namespace {

using namespace ghzw;
using ir::Circuit;
using ir::Gate;
using transpile::CouplingGraph;

const std::string kLadder = std::string(GHZW_CONFIG_DIR) + "/ladder16.txt";

// Output of the physical circuit must be the logical output with qubit q
// moved to node final[q] and every other node left in |0>.
double permuted_distance(const Circuit& logical, const Circuit& physical, const transpile::Placement& final_placement) {
    const auto want = sim::simulate(logical);
    const auto got = sim::simulate(physical);
    const int n = logical.width();
    const int m = physical.width();
    std::vector<sim::cplx> expect(got.dim(), 0.0);
    for (std::uint64_t i = 0; i < want.dim(); ++i) {
        std::uint64_t j = 0;
        for (int q = 0; q < n; ++q) {
            if (i & (std::uint64_t{1} << (n - 1 - q))) j |= std::uint64_t{1} << (m - 1 - final_placement[q]);
        }
        expect[j] = want.amplitude(i);
    }
    // Global phase from the largest expected amplitude.
    std::size_t k = 0;
    for (std::size_t i = 0; i < expect.size(); ++i)
        if (std::abs(expect[i]) > std::abs(expect[k])) k = i;
    sim::cplx ph = std::abs(got.amplitude(k)) > 1e-12 ? expect[k] / got.amplitude(k) : sim::cplx(1);
    ph /= std::abs(ph);
    double d = 0.0;
    for (std::size_t i = 0; i < expect.size(); ++i) d = std::max(d, std::abs(got.amplitude(i) * ph - expect[i]));
    return d;
}

bool legal(const Circuit& c, const CouplingGraph& g) {
    bool ok = true;
    c.for_each_gate([&](const Gate& gate) {
        if (gate.kind == ir::GateKind::CNOT) ok = ok && g.has_directed(gate.qubits[0], gate.qubits[1]);
        if (gate.kind == ir::GateKind::SWAP || gate.kind == ir::GateKind::CROT) ok = false;
    });
    return ok;
}

TEST(Graph, Generators) {
    const auto line = CouplingGraph::line(5);
    EXPECT_EQ(line.edges().size(), 4u);
    EXPECT_TRUE(line.has_directed(0, 1));
    EXPECT_FALSE(line.has_directed(1, 0));
    EXPECT_TRUE(line.adjacent(1, 0));
    EXPECT_EQ(line.distance_matrix()[0][4], 4);
    const auto ring = CouplingGraph::ring(6);
    EXPECT_EQ(ring.distance_matrix()[0][5], 1);
    EXPECT_EQ(ring.distance_matrix()[0][3], 3);
    EXPECT_EQ(ring.degree(2), 2);
    EXPECT_EQ(CouplingGraph::full(4).edges().size(), 12u);
}

TEST(Graph, ShortestPath) {
    const auto ring = CouplingGraph::ring(8);
    const auto p = ring.shortest_path(1, 6);
    ASSERT_EQ(p.size(), 4u);
    EXPECT_EQ(p.front(), 1);
    EXPECT_EQ(p.back(), 6);
    for (std::size_t i = 1; i < p.size(); ++i) EXPECT_TRUE(ring.adjacent(p[i - 1], p[i]));
}

TEST(Graph, ParseWarnsAndThrows) {
    std::istringstream in("# comment\n0 1\n1 2 # trailing\n0 1\n\n4 5\n");
    std::vector<std::string> warnings;
    const auto g = transpile::parse_coupling(in, &warnings);
    EXPECT_EQ(g.node_count(), 6);
    ASSERT_EQ(warnings.size(), 2u);
    EXPECT_NE(warnings[0].find("duplicate"), std::string::npos);
    EXPECT_NE(warnings[1].find("not connected"), std::string::npos);
    std::istringstream bad("0 x\n");
    EXPECT_THROW((void)transpile::parse_coupling(bad), std::runtime_error);
    std::istringstream three("0 1 2\n");
    EXPECT_THROW((void)transpile::parse_coupling(three), std::runtime_error);
}

TEST(Graph, LadderFile) {
    std::vector<std::string> warnings;
    const auto g = transpile::load_coupling(kLadder, &warnings);
    EXPECT_EQ(g.node_count(), 16);
    EXPECT_EQ(g.edges().size(), 22u);
    EXPECT_TRUE(g.connected());
    EXPECT_TRUE(warnings.empty());
}

TEST(Placement, Validation) {
    const auto g = CouplingGraph::line(4);
    EXPECT_NO_THROW(transpile::validate_placement({0, 2, 1}, 3, g));
    EXPECT_THROW(transpile::validate_placement({0, 0, 1}, 3, g), std::invalid_argument);
    EXPECT_THROW(transpile::validate_placement({0, 4, 1}, 3, g), std::invalid_argument);
    const auto p = transpile::initial_placement(builders::build_ghz_linear(4), g);
    EXPECT_NO_THROW(transpile::validate_placement(p, 4, g));
    EXPECT_THROW((void)transpile::initial_placement(builders::build_ghz_linear(5), g), std::invalid_argument);
}

TEST(Direction, ReversedCnotUsesHadamards) {
    const auto g = CouplingGraph::line(2);
    Circuit c(2);
    c.append(Gate::cnot(1, 0));
    const Circuit fixed = transpile::fix_direction(c, g);
    EXPECT_EQ(ir::count_gates(fixed, ir::GateKind::H), 4u);
    EXPECT_TRUE(legal(fixed, g));
    EXPECT_LT((sim::circuit_unitary(fixed) - sim::circuit_unitary(c)).cwiseAbs().maxCoeff(), 1e-12);
    Circuit s(2);
    s.append(Gate::swap(0, 1));
    const Circuit fs = transpile::fix_direction(s, g);
    EXPECT_TRUE(legal(fs, g));
    EXPECT_LT((sim::circuit_unitary(fs) - sim::circuit_unitary(s)).cwiseAbs().maxCoeff(), 1e-12);
    Circuit far(3);
    far.append(Gate::cnot(0, 2));
    EXPECT_THROW((void)transpile::fix_direction(far, CouplingGraph::line(3)), std::invalid_argument);
}

TEST(Peephole, HadamardPairsCancel) {
    Circuit c(3);
    c.append(Gate::h(0));
    c.append(Gate::h(0));
    c.append(Gate::h(1));
    c.append(Gate::cnot(1, 2));
    c.append(Gate::h(1));
    c.append(Gate::h(2));
    c.append(Gate::h(2));
    const Circuit s = transpile::cancel_hadamard_pairs(c);
    EXPECT_EQ(ir::count_gates(s, ir::GateKind::H), 2u);
    EXPECT_LT((sim::circuit_unitary(s) - sim::circuit_unitary(c)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PeepholeProperty, PreservesUnitary) {
    std::mt19937 rng(13);
    for (int t = 0; t < 40; ++t) {
        Circuit c(4);
        for (int k = 0; k < 30; ++k) {
            const int a = static_cast<int>(rng() % 4);
            const int b = (a + 1 + static_cast<int>(rng() % 3)) % 4;
            switch (rng() % 4) {
                case 0:
                case 1: c.append(Gate::h(a)); break;
                case 2: c.append(Gate::cnot(a, b)); break;
                default: c.append(Gate::u3(0.3 * k, 0.1, -0.2, a)); break;
            }
            if (k == 15) c.append_delay(1.0);
        }
        const Circuit s = transpile::cancel_hadamard_pairs(c);
        EXPECT_LE(ir::gate_count(s), ir::gate_count(c));
        EXPECT_LT((sim::circuit_unitary(s) - sim::circuit_unitary(c)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Route, SwapsMoveControlAlongPath) {
    const auto g = CouplingGraph::line(4);
    Circuit c(4);
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 3));
    c.append(Gate::h(3));
    c.append(Gate::cnot(3, 1));
    transpile::RouteOptions plain;
    plain.fanout_aware = false;
    const auto r = transpile::route(c, g, {0, 1, 2, 3}, plain);
    EXPECT_GT(r.swaps, 0u);
    const Circuit phys = transpile::fix_direction(r.circuit, g);
    EXPECT_TRUE(legal(phys, g));
    EXPECT_LT(permuted_distance(c, phys, r.final_placement), 1e-9);
    EXPECT_TRUE(transpile::verify_equivalence(c, phys, r.initial, r.final_placement));
}

struct Case {
    std::string graph;
    int nodes;
};

class Soundness : public ::testing::TestWithParam<Case> {};

TEST_P(Soundness, BuildersStayEquivalent) {
    const Case k = GetParam();
    CouplingGraph g;
    if (k.graph == "line") g = CouplingGraph::line(k.nodes);
    if (k.graph == "ring") g = CouplingGraph::ring(k.nodes);
    if (k.graph == "ladder") g = transpile::load_coupling(kLadder);
    const int max_n = std::min(g.node_count(), 8);
    for (int n = 2; n <= max_n; ++n) {
        for (int b = 0; b < 4; ++b) {
            const Circuit c = b == 0   ? builders::build_ghz_linear(n)
                              : b == 1 ? builders::build_ghz_log(n)
                              : b == 2 ? builders::build_w_linear(n)
                                       : builders::build_w_log(n);
            const auto r = transpile::transpile(c, g);
            EXPECT_TRUE(legal(r.physical, g)) << k.graph << " n=" << n << " b=" << b;
            EXPECT_TRUE(transpile::is_hardware_legal(r.physical, g));
            EXPECT_LT(permuted_distance(r.lowered, r.physical, r.final_placement), 1e-9)
                << k.graph << " n=" << n << " b=" << b;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Graphs, Soundness,
                         ::testing::Values(Case{"line", 8}, Case{"ring", 8}, Case{"ladder", 16}),
                         [](const auto& info) { return info.param.graph; });

// A routed circuit that is off by one CNOT must be rejected.
TEST(Equivalence, DetectsCorruption) {
    const auto g = CouplingGraph::line(4);
    const auto r = transpile::transpile(builders::build_ghz_log(4), g);
    Circuit broken = r.physical;
    broken.append(Gate::x(r.final_placement[0]));
    EXPECT_FALSE(transpile::verify_equivalence(r.lowered, broken, r.initial, r.final_placement));
    EXPECT_TRUE(transpile::verify_equivalence(r.lowered, r.physical, r.initial, r.final_placement));
}

TEST(Ladder, GhzSixteenDepth) {
    const auto g = transpile::load_coupling(kLadder);
    const auto r = transpile::transpile(builders::build_ghz_log(16), g);
    EXPECT_EQ(ir::depth(r.lowered), 5);
    EXPECT_LE(ir::depth(r.physical), 10);
    EXPECT_TRUE(legal(r.physical, g));
    EXPECT_LT(permuted_distance(r.lowered, r.physical, r.final_placement), 1e-9);
}

TEST(Report, HasPlacements) {
    const auto r = transpile::transpile(builders::build_ghz_log(3), CouplingGraph::line(3));
    const auto doc = transpile::placement_report(r);
    EXPECT_EQ(doc["initial_placement"].size(), 3u);
    EXPECT_EQ(doc["depth_logical"], 3);
}

}  // namespace
