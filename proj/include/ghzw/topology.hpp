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

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ghzw/circuit.hpp"

namespace ghzw::transpile {

/// Directed coupling graph: edge a->b means CNOT(control a, target b) is native.
class CouplingGraph {
public:
    explicit CouplingGraph(int nodes = 0);

    static CouplingGraph line(int n);
    static CouplingGraph ring(int n);
    /// Every ordered pair is native.
    static CouplingGraph full(int n);

    /// Returns false when the edge was already present.
    bool add_edge(int a, int b);

    [[nodiscard]] int node_count() const { return static_cast<int>(adjacent_.size()); }
    [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    [[nodiscard]] bool has_directed(int a, int b) const;
    [[nodiscard]] bool adjacent(int a, int b) const;
    [[nodiscard]] const std::vector<int>& neighbors(int q) const { return adjacent_.at(static_cast<std::size_t>(q)); }
    [[nodiscard]] int degree(int q) const { return static_cast<int>(neighbors(q).size()); }
    /// Hop distances from `src`; -1 when unreachable.
    [[nodiscard]] std::vector<int> distances_from(int src) const;
    [[nodiscard]] const std::vector<std::vector<int>>& distance_matrix() const;
    /// Node sequence a..b along a shortest undirected path; empty when unreachable.
    [[nodiscard]] std::vector<int> shortest_path(int a, int b) const;
    [[nodiscard]] bool connected() const;

private:
    void grow(int nodes);

    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacent_;
    std::vector<std::vector<char>> directed_;
    mutable std::vector<std::vector<int>> dist_cache_;
};

/// Parses "a b" lines ('#' starts a comment). Duplicate edges are dropped
/// and reported through `warnings`, as is a disconnected graph.
[[nodiscard]] CouplingGraph parse_coupling(std::istream& in, std::vector<std::string>* warnings = nullptr);
[[nodiscard]] CouplingGraph load_coupling(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// logical qubit -> physical node, injective.
using Placement = std::vector<int>;

void validate_placement(const Placement& placement, int logical_width, const CouplingGraph& graph);

/// Seats the logical qubit with the most distinct interaction partners on a
/// maximum-degree node (closest to the graph center when tied), or on
/// `root_node` when given; the rest follow by breadth-first expansion.
[[nodiscard]] Placement initial_placement(const ir::Circuit& circuit, const CouplingGraph& graph, int root_node = -1);

struct RouteOptions {
    /// Track fan-out copies created by CNOTs onto fresh |0> targets and let
    /// any copy stand in as control; seat fresh qubits next to their partner.
    bool fanout_aware = true;
};

struct RouteResult {
    ir::Circuit circuit{0};  // physical, width = graph node count
    Placement initial;       // effective placement at circuit start
    Placement final_placement;
    std::size_t swaps = 0;
};

/// Makes every two-qubit gate act on adjacent nodes, inserting SWAPs along
/// shortest paths. Gates of one logical slice never start before the
/// physical slices emitted for the previous logical slice.
[[nodiscard]] RouteResult route(const ir::Circuit& circuit, const CouplingGraph& graph, const Placement& placement,
                                RouteOptions options = {});

/// Replaces CNOTs against the edge direction with H,H; CNOT reversed; H,H.
/// SWAPs are first expanded to three CNOTs when `decompose_swaps` is set.
/// Throws when a two-qubit gate spans non-adjacent nodes or a CROT remains.
[[nodiscard]] ir::Circuit fix_direction(const ir::Circuit& circuit, const CouplingGraph& graph,
                                        bool decompose_swaps = true);

/// Removes H pairs with nothing between them on their qubit, then
/// reschedules as soon as possible. Delays stay barriers.
[[nodiscard]] ir::Circuit cancel_hadamard_pairs(const ir::Circuit& circuit);

/// True when every CNOT follows a directed edge and every SWAP an edge.
[[nodiscard]] bool is_hardware_legal(const ir::Circuit& circuit, const CouplingGraph& graph);

/// Simulates both circuits and compares the physical state with the logical
/// one relabeled by `placement_out` (unused nodes in |0>), up to global phase.
[[nodiscard]] bool verify_equivalence(const ir::Circuit& original, const ir::Circuit& transpiled,
                                      const Placement& placement_in, const Placement& placement_out,
                                      double tolerance = 1e-9);

struct TranspileOptions {
    RouteOptions route{};
    ir::CrotLowering lowering = ir::CrotLowering::ThreeGate;
    /// Try every node as the seat of the busiest logical qubit and keep the
    /// shallowest direction-fixed result.
    bool search_placement = true;
    /// Run cancel_hadamard_pairs on the direction-fixed circuit.
    bool cancel_hadamards = true;
};

struct TranspileResult {
    ir::Circuit lowered{0};
    ir::Circuit routed{0};
    ir::Circuit physical{0};  // routed and direction-fixed
    Placement initial;
    Placement final_placement;
    std::size_t swaps = 0;
};

[[nodiscard]] TranspileResult transpile(const ir::Circuit& circuit, const CouplingGraph& graph,
                                        TranspileOptions options = {});

[[nodiscard]] nlohmann::json placement_report(const TranspileResult& result);

}  // namespace ghzw::transpile
