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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ghzw/circuit.hpp"

namespace ghzw::builders {

/// H on qubit 0 then the CNOT chain 0->1->...->N-1.
[[nodiscard]] ir::Circuit build_ghz_linear(int n);

/// Recursive doubling: generation k adds CNOT(i, i + 2^(k-1)). Lines >= n
/// of the enclosing power of two are dropped together with their gates.
[[nodiscard]] ir::Circuit build_ghz_log(int n);

/// Real rotation G(p) = [[sqrt p, -sqrt(1-p)], [sqrt(1-p), sqrt p]].
[[nodiscard]] Eigen::Matrix2d g_matrix(double p);

/// Appends B(p): controlled-G(p) from `control` onto `target`, then
/// CNOT(target -> control). With `first_block` the rotation is uncontrolled.
void emit_block(ir::Circuit& circuit, ir::Ratio p, int control, int target, bool first_block);

struct WOptions {
    /// Replace the first controlled rotation by a plain U3 on its target.
    bool uncontrolled_first = true;
};

/// X on qubit 0 then B(1/N), B(1/(N-1)), ..., B(1/2) down the register.
[[nodiscard]] ir::Circuit build_w_linear(int n, WOptions options = {});

struct DichotomyNode {
    int n1 = 0;
    int n2 = 1;
    int upper = -1;  // child index into DichotomyTree::nodes, -1 when absent
    int lower = -1;
    int generation = 0;
    // Filled by assign_wires().
    int control_wire = -1;
    int target_wire = -1;

    [[nodiscard]] ir::Ratio ratio() const { return {n1, n2}; }
};

struct DichotomyTree {
    std::vector<DichotomyNode> nodes;  // nodes[0] is the root
    int n = 0;

    [[nodiscard]] const DichotomyNode& root() const { return nodes.front(); }
    /// Number of generations (root alone = 1).
    [[nodiscard]] int depth() const;
    /// Indented text, one node per line; absent children print as "-".
    [[nodiscard]] std::string to_text() const;
    /// Single-line nested form, e.g. "(3,6)[(1,3)[-, (1,2)], (2,3)[(1,2), -]]".
    [[nodiscard]] std::string to_compact() const;
    [[nodiscard]] std::string to_dot() const;
};

enum class TreeStage {
    /// Raw dichotomies, before swapping and pruning.
    Basic,
    /// Sibling pairs containing (1,1) swapped, then (0,1) and (1,1) removed.
    Final,
};

[[nodiscard]] DichotomyTree build_dichotomy_tree(int n, TreeStage stage = TreeStage::Final);

/// Wire read-out, generation by generation. The root uses wires 0 and 1.
/// Children are visited parent by parent, upper before lower; each child
/// takes the next unused wire as target. An upper child is controlled by
/// its parent's control wire, a lower child by its parent's target wire.
void assign_wires(DichotomyTree& tree);

/// Log-depth W_N read off the final dichotomy tree.
[[nodiscard]] ir::Circuit build_w_log(int n, WOptions options = {});

}  // namespace ghzw::builders
