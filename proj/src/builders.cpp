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

#include "ghzw/builders.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ghzw::builders {

using ir::Circuit;
using ir::Gate;
using ir::Ratio;

Circuit build_ghz_linear(int n) {
    if (n < 1) throw std::invalid_argument("GHZ builder needs n >= 1");
    Circuit c(n);
    c.append(Gate::h(0));
    for (int k = 0; k + 1 < n; ++k) c.append(Gate::cnot(k, k + 1));
    return c;
}

Circuit build_ghz_log(int n) {
    if (n < 1) throw std::invalid_argument("GHZ builder needs n >= 1");
    Circuit c(n);
    c.append(Gate::h(0));
    for (int stride = 1; stride < n; stride *= 2) {
        for (int i = 0; i < stride && i + stride < n; ++i) c.append(Gate::cnot(i, i + stride));
    }
    return c;
}

Eigen::Matrix2d g_matrix(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("G(p) needs 0 < p < 1");
    const double a = std::sqrt(p);
    const double b = std::sqrt(1.0 - p);
    Eigen::Matrix2d g;
    g << a, -b, b, a;
    return g;
}

void emit_block(Circuit& circuit, Ratio p, int control, int target, bool first_block) {
    if (control == target) throw std::invalid_argument("B(p) block needs distinct control and target");
    if (first_block) {
        circuit.append(Gate::u3(ir::crot_theta(p), 0.0, 0.0, target));
    } else {
        circuit.append(Gate::crot(p, control, target));
    }
    circuit.append(Gate::cnot(target, control));
}

Circuit build_w_linear(int n, WOptions options) {
    if (n < 1) throw std::invalid_argument("W builder needs n >= 1");
    Circuit c(n);
    c.append(Gate::x(0));
    for (int k = 0; k + 1 < n; ++k) {
        emit_block(c, Ratio{1, n - k}, k, k + 1, options.uncontrolled_first && k == 0);
    }
    return c;
}

int DichotomyTree::depth() const {
    int d = 0;
    for (const auto& node : nodes) d = std::max(d, node.generation + 1);
    return d;
}

std::string DichotomyTree::to_text() const {
    std::ostringstream os;
    std::function<void(int, int)> walk = [&](int idx, int indent) {
        const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
        if (idx < 0) {
            os << pad << "-\n";
            return;
        }
        const auto& node = nodes[static_cast<std::size_t>(idx)];
        os << pad << "(" << node.n1 << "," << node.n2 << ")";
        if (node.control_wire >= 0) os << " wires " << node.control_wire << "->" << node.target_wire;
        os << "\n";
        if (node.upper >= 0 || node.lower >= 0) {
            walk(node.upper, indent + 1);
            walk(node.lower, indent + 1);
        }
    };
    if (!nodes.empty()) walk(0, 0);
    return os.str();
}

std::string DichotomyTree::to_compact() const {
    std::function<std::string(int)> walk = [&](int idx) -> std::string {
        if (idx < 0) return "-";
        const auto& node = nodes[static_cast<std::size_t>(idx)];
        std::string s = "(" + std::to_string(node.n1) + "," + std::to_string(node.n2) + ")";
        if (node.upper >= 0 || node.lower >= 0) s += "[" + walk(node.upper) + ", " + walk(node.lower) + "]";
        return s;
    };
    return nodes.empty() ? std::string() : walk(0);
}

std::string DichotomyTree::to_dot() const {
    std::ostringstream os;
    os << "digraph dichotomy {\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        os << "  n" << i << " [label=\"(" << nodes[i].n1 << "," << nodes[i].n2 << ")\"];\n";
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].upper >= 0) os << "  n" << i << " -> n" << nodes[i].upper << " [label=\"upper\"];\n";
        if (nodes[i].lower >= 0) os << "  n" << i << " -> n" << nodes[i].lower << " [label=\"lower\"];\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

bool is_terminal(const DichotomyNode& node) {
    return (node.n1 == 0 && node.n2 == 1) || (node.n1 == 1 && node.n2 == 1) || (node.n1 == 1 && node.n2 == 2);
}

bool is_pruned(const DichotomyNode& node) { return node.n2 == 1 && (node.n1 == 0 || node.n1 == 1); }

DichotomyTree grow(int n) {
    DichotomyTree tree;
    tree.n = n;
    tree.nodes.push_back({n / 2, n, -1, -1, 0, -1, -1});
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int idx : frontier) {
            const DichotomyNode parent = tree.nodes[static_cast<std::size_t>(idx)];
            if (is_terminal(parent)) continue;
            if (parent.n1 == 0) throw std::logic_error("dichotomy reached a (0,m) node with m > 1");
            const int g = parent.generation + 1;
            const int up = static_cast<int>(tree.nodes.size());
            tree.nodes.push_back({parent.n1 / 2, parent.n2 / 2, -1, -1, g, -1, -1});
            tree.nodes.push_back({(parent.n1 + 1) / 2, (parent.n2 + 1) / 2, -1, -1, g, -1, -1});
            tree.nodes[static_cast<std::size_t>(idx)].upper = up;
            tree.nodes[static_cast<std::size_t>(idx)].lower = up + 1;
            next.push_back(up);
            next.push_back(up + 1);
        }
        frontier = std::move(next);
    }
    return tree;
}

}  // namespace

DichotomyTree build_dichotomy_tree(int n, TreeStage stage) {
    if (n < 2) throw std::invalid_argument("dichotomy tree needs n >= 2");
    DichotomyTree raw = grow(n);
    if (stage == TreeStage::Basic) return raw;

    // The upper subtree must span n1 wires. Children come out sized
    // floor(n2/2) and ceil(n2/2), so swap them whenever n1 is the larger
    // half. Below a (2,3) node this is the pair holding (1,1); higher up it
    // catches nodes such as (3,5), which first appear at N = 10.
    for (auto& node : raw.nodes) {
        if (node.upper < 0) continue;
        if (2 * node.n1 > node.n2) std::swap(node.upper, node.lower);
    }

    // Rebuild without pruned leaves, keeping breadth-first order.
    DichotomyTree out;
    out.n = n;
    std::vector<int> remap(raw.nodes.size(), -1);
    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int idx = queue.front();
        queue.pop_front();
        const auto& node = raw.nodes[static_cast<std::size_t>(idx)];
        remap[static_cast<std::size_t>(idx)] = static_cast<int>(out.nodes.size());
        out.nodes.push_back({node.n1, node.n2, -1, -1, node.generation, -1, -1});
        for (int child : {node.upper, node.lower}) {
            if (child >= 0 && !is_pruned(raw.nodes[static_cast<std::size_t>(child)])) queue.push_back(child);
        }
    }
    for (std::size_t i = 0; i < raw.nodes.size(); ++i) {
        const int j = remap[i];
        if (j < 0) continue;
        const auto& node = raw.nodes[i];
        auto& dst = out.nodes[static_cast<std::size_t>(j)];
        if (node.upper >= 0) dst.upper = remap[static_cast<std::size_t>(node.upper)];
        if (node.lower >= 0) dst.lower = remap[static_cast<std::size_t>(node.lower)];
    }
    return out;
}

void assign_wires(DichotomyTree& tree) {
    if (tree.nodes.empty()) return;
    int next_wire = 0;
    auto& root = tree.nodes.front();
    root.control_wire = next_wire++;
    root.target_wire = next_wire++;
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int idx : frontier) {
            const DichotomyNode parent = tree.nodes[static_cast<std::size_t>(idx)];
            if (parent.upper >= 0) {
                auto& child = tree.nodes[static_cast<std::size_t>(parent.upper)];
                child.control_wire = parent.control_wire;
                child.target_wire = next_wire++;
                next.push_back(parent.upper);
            }
            if (parent.lower >= 0) {
                auto& child = tree.nodes[static_cast<std::size_t>(parent.lower)];
                child.control_wire = parent.target_wire;
                child.target_wire = next_wire++;
                next.push_back(parent.lower);
            }
        }
        frontier = std::move(next);
    }
}

Circuit build_w_log(int n, WOptions options) {
    if (n < 1) throw std::invalid_argument("W builder needs n >= 1");
    Circuit c(n);
    c.append(Gate::x(0));
    if (n == 1) return c;
    DichotomyTree tree = build_dichotomy_tree(n);
    assign_wires(tree);
    // Nodes are stored breadth-first, which is also the emission order.
    bool first = true;
    for (const auto& node : tree.nodes) {
        emit_block(c, node.ratio(), node.control_wire, node.target_wire, first && options.uncontrolled_first);
        first = false;
    }
    return c;
}

}  // namespace ghzw::builders
