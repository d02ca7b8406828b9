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

#include "ghzw/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "ghzw/statevector.hpp"

namespace ghzw::transpile {

using ir::Circuit;
using ir::Gate;
using ir::GateKind;

// ---------------------------------------------------------------------------
// CouplingGraph

CouplingGraph::CouplingGraph(int nodes) {
    if (nodes < 0) throw std::invalid_argument("node count must be nonnegative");
    grow(nodes);
}

void CouplingGraph::grow(int nodes) {
    const auto n = static_cast<std::size_t>(nodes);
    if (n <= adjacent_.size()) return;
    adjacent_.resize(n);
    directed_.resize(n);
    for (auto& row : directed_) row.resize(n, 0);
    dist_cache_.clear();
}

CouplingGraph CouplingGraph::line(int n) {
    CouplingGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

CouplingGraph CouplingGraph::ring(int n) {
    CouplingGraph g = line(n);
    if (n > 2) g.add_edge(n - 1, 0);
    return g;
}

CouplingGraph CouplingGraph::full(int n) {
    CouplingGraph g(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a != b) g.add_edge(a, b);
        }
    }
    return g;
}

bool CouplingGraph::add_edge(int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("negative node index in edge");
    if (a == b) throw std::invalid_argument("self-loop on node " + std::to_string(a));
    grow(std::max(a, b) + 1);
    auto& d = directed_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    if (d) return false;
    d = 1;
    edges_.emplace_back(a, b);
    auto link = [&](int x, int y) {
        auto& nb = adjacent_[static_cast<std::size_t>(x)];
        if (std::find(nb.begin(), nb.end(), y) == nb.end()) {
            nb.push_back(y);
            std::sort(nb.begin(), nb.end());
        }
    };
    link(a, b);
    link(b, a);
    dist_cache_.clear();
    return true;
}

bool CouplingGraph::has_directed(int a, int b) const {
    if (a < 0 || b < 0 || a >= node_count() || b >= node_count()) return false;
    return directed_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0;
}

bool CouplingGraph::adjacent(int a, int b) const { return has_directed(a, b) || has_directed(b, a); }

std::vector<int> CouplingGraph::distances_from(int src) const {
    std::vector<int> dist(adjacent_.size(), -1);
    if (src < 0 || src >= node_count()) throw std::out_of_range("node outside graph");
    std::deque<int> queue{src};
    dist[static_cast<std::size_t>(src)] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

const std::vector<std::vector<int>>& CouplingGraph::distance_matrix() const {
    if (dist_cache_.size() != adjacent_.size()) {
        dist_cache_.clear();
        for (int s = 0; s < node_count(); ++s) dist_cache_.push_back(distances_from(s));
    }
    return dist_cache_;
}

std::vector<int> CouplingGraph::shortest_path(int a, int b) const {
    const auto& dist = distance_matrix();
    if (dist.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b)) < 0) return {};
    std::vector<int> path{a};
    int u = a;
    while (u != b) {
        const int du = dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(b)];
        for (int v : neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(b)] == du - 1) {
                u = v;
                break;
            }
        }
        path.push_back(u);
    }
    return path;
}

bool CouplingGraph::connected() const {
    if (node_count() == 0) return true;
    const auto d = distances_from(0);
    return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

CouplingGraph parse_coupling(std::istream& in, std::vector<std::string>* warnings) {
    CouplingGraph g;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int a = 0;
        int b = 0;
        if (!(ls >> a)) {
            std::string rest;
            std::istringstream probe(line);
            if (probe >> rest) throw std::runtime_error("coupling line " + std::to_string(lineno) + ": expected 'a b'");
            continue;
        }
        std::string extra;
        if (!(ls >> b) || (ls >> extra)) {
            throw std::runtime_error("coupling line " + std::to_string(lineno) + ": expected exactly two node indices");
        }
        if (!g.add_edge(a, b) && warnings) {
            warnings->push_back("duplicate edge " + std::to_string(a) + " " + std::to_string(b) + " on line " +
                                std::to_string(lineno) + " ignored");
        }
    }
    if (!g.connected() && warnings) warnings->push_back("coupling graph is not connected");
    return g;
}

CouplingGraph load_coupling(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coupling file '" + path + "'");
    return parse_coupling(in, warnings);
}

// ---------------------------------------------------------------------------
// Placement

void validate_placement(const Placement& placement, int logical_width, const CouplingGraph& graph) {
    if (static_cast<int>(placement.size()) != logical_width) throw std::invalid_argument("placement size mismatch");
    std::set<int> seen;
    for (int p : placement) {
        if (p < 0 || p >= graph.node_count()) throw std::invalid_argument("placement outside graph");
        if (!seen.insert(p).second) throw std::invalid_argument("placement is not injective");
    }
}

Placement initial_placement(const Circuit& circuit, const CouplingGraph& graph, int root_node) {
    const int n = circuit.width();
    const int nodes = graph.node_count();
    if (n > nodes) {
        throw std::invalid_argument("circuit needs " + std::to_string(n) + " qubits but the graph has " +
                                    std::to_string(nodes));
    }
    Placement placement(static_cast<std::size_t>(n), -1);
    if (n == 0) return placement;
    std::vector<std::set<int>> partners(static_cast<std::size_t>(n));
    circuit.for_each_gate([&](const Gate& g) {
        if (g.arity() == 2) {
            partners[static_cast<std::size_t>(g.qubits[0])].insert(g.qubits[1]);
            partners[static_cast<std::size_t>(g.qubits[1])].insert(g.qubits[0]);
        }
    });
    int root = 0;
    for (int q = 1; q < n; ++q) {
        if (partners[static_cast<std::size_t>(q)].size() > partners[static_cast<std::size_t>(root)].size()) root = q;
    }
    const auto& dist = graph.distance_matrix();
    auto eccentric = [&](int p) {
        long s = 0;
        for (int d : dist[static_cast<std::size_t>(p)]) s += d < 0 ? nodes : d;
        return s;
    };
    int proot = root_node;
    if (proot < 0) {
        proot = 0;
        for (int p = 1; p < nodes; ++p) {
            const auto key = std::make_tuple(-graph.degree(p), eccentric(p), p);
            const auto best = std::make_tuple(-graph.degree(proot), eccentric(proot), proot);
            if (key < best) proot = p;
        }
    }
    if (proot >= nodes) throw std::invalid_argument("root node outside graph");
    std::vector<char> used(static_cast<std::size_t>(nodes), 0);
    auto seat = [&](int q, int anchor) {
        int best = -1;
        for (int p = 0; p < nodes; ++p) {
            if (used[static_cast<std::size_t>(p)]) continue;
            if (best < 0) {
                best = p;
                continue;
            }
            auto d = [&](int x) {
                const int v = dist[static_cast<std::size_t>(anchor)][static_cast<std::size_t>(x)];
                return v < 0 ? std::numeric_limits<int>::max() : v;
            };
            if (std::make_tuple(d(p), -graph.degree(p), p) < std::make_tuple(d(best), -graph.degree(best), best)) best = p;
        }
        placement[static_cast<std::size_t>(q)] = best;
        used[static_cast<std::size_t>(best)] = 1;
    };
    placement[static_cast<std::size_t>(root)] = proot;
    used[static_cast<std::size_t>(proot)] = 1;
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    visited[static_cast<std::size_t>(root)] = 1;
    std::deque<int> queue{root};
    int next_unvisited = 0;
    while (true) {
        while (!queue.empty()) {
            const int q = queue.front();
            queue.pop_front();
            for (int r : partners[static_cast<std::size_t>(q)]) {
                if (visited[static_cast<std::size_t>(r)]) continue;
                visited[static_cast<std::size_t>(r)] = 1;
                seat(r, placement[static_cast<std::size_t>(q)]);
                queue.push_back(r);
            }
        }
        while (next_unvisited < n && visited[static_cast<std::size_t>(next_unvisited)]) ++next_unvisited;
        if (next_unvisited >= n) break;
        visited[static_cast<std::size_t>(next_unvisited)] = 1;
        seat(next_unvisited, proot);
        queue.push_back(next_unvisited);
    }
    return placement;
}

// ---------------------------------------------------------------------------
// Routing

namespace {

class Router {
public:
    Router(const Circuit& circuit, const CouplingGraph& graph, const Placement& placement, RouteOptions options)
        : in_(circuit), graph_(graph), opt_(options), out_(graph.node_count()) {
        const int n = circuit.width();
        validate_placement(placement, n, graph);
        phys_ = placement;
        occ_.assign(static_cast<std::size_t>(graph.node_count()), -1);
        origin_.resize(static_cast<std::size_t>(graph.node_count()));
        for (int p = 0; p < graph.node_count(); ++p) origin_[static_cast<std::size_t>(p)] = p;
        for (int q = 0; q < n; ++q) occ_[static_cast<std::size_t>(phys_[static_cast<std::size_t>(q)])] = q;
        pristine_.assign(static_cast<std::size_t>(n), 1);
        initial_.assign(static_cast<std::size_t>(n), -1);
        cls_.assign(static_cast<std::size_t>(n), -1);
        for (int q : circuit.initial_excitations()) {
            touch(q);
            out_.add_initial_excitation(phys_[static_cast<std::size_t>(q)]);
        }
        for (const auto& slice : circuit.slices()) {
            for (const auto& g : slice.gates) flat_.push_back(g);
        }
    }

    RouteResult run() {
        std::size_t index = 0;
        for (const auto& slice : in_.slices()) {
            if (slice.is_delay()) {
                out_.append_delay(slice.idle_us);
                continue;
            }
            base_ = out_.slice_count();
            for (const auto& g : slice.gates) {
                handle(g, index);
                ++index;
            }
        }
        RouteResult r;
        for (int q = 0; q < in_.width(); ++q) {
            if (initial_[static_cast<std::size_t>(q)] < 0) {
                initial_[static_cast<std::size_t>(q)] = origin_[static_cast<std::size_t>(phys_[static_cast<std::size_t>(q)])];
            }
        }
        r.circuit = std::move(out_);
        r.initial = initial_;
        r.final_placement = phys_;
        r.swaps = swaps_;
        return r;
    }

private:
    int ph(int q) const { return phys_[static_cast<std::size_t>(q)]; }
    bool pristine(int q) const { return pristine_[static_cast<std::size_t>(q)] != 0; }

    /// A node holding |0> that no gate has acted on since it was seated.
    bool free_node(int p) const {
        const int o = occ_[static_cast<std::size_t>(p)];
        return o < 0 || pristine(o);
    }

    int free_neighbors(int p, int except) const {
        int c = 0;
        for (int v : graph_.neighbors(p)) c += (v != except && free_node(v)) ? 1 : 0;
        return c;
    }

    std::size_t ready(int p) const { return std::max(base_, out_.ready_slice(p)); }

    void touch(int q) {
        if (!pristine(q)) return;
        pristine_[static_cast<std::size_t>(q)] = 0;
        initial_[static_cast<std::size_t>(q)] = origin_[static_cast<std::size_t>(ph(q))];
    }

    /// Moves pristine q onto free node p without any gate.
    void relabel(int q, int p) {
        const int old = ph(q);
        if (old == p) return;
        const int other = occ_[static_cast<std::size_t>(p)];
        occ_[static_cast<std::size_t>(p)] = q;
        phys_[static_cast<std::size_t>(q)] = p;
        occ_[static_cast<std::size_t>(old)] = other;
        if (other >= 0) phys_[static_cast<std::size_t>(other)] = old;
    }

    void physical_swap(int a, int b) {
        out_.append_at_or_after(Gate::swap(a, b), base_);
        ++swaps_;
        const int qa = occ_[static_cast<std::size_t>(a)];
        const int qb = occ_[static_cast<std::size_t>(b)];
        occ_[static_cast<std::size_t>(a)] = qb;
        occ_[static_cast<std::size_t>(b)] = qa;
        if (qa >= 0) phys_[static_cast<std::size_t>(qa)] = b;
        if (qb >= 0) phys_[static_cast<std::size_t>(qb)] = a;
        std::swap(origin_[static_cast<std::size_t>(a)], origin_[static_cast<std::size_t>(b)]);
    }

    /// Members of q's copy class (q itself first).
    std::vector<int> members(int q) const {
        std::vector<int> m{q};
        const int c = cls_[static_cast<std::size_t>(q)];
        if (!opt_.fanout_aware || c < 0) return m;
        for (int r = 0; r < in_.width(); ++r) {
            if (r != q && cls_[static_cast<std::size_t>(r)] == c) m.push_back(r);
        }
        return m;
    }

    void join_class(int source, int copy) {
        if (!opt_.fanout_aware) return;
        auto& c = cls_[static_cast<std::size_t>(source)];
        if (c < 0) c = next_class_++;
        cls_[static_cast<std::size_t>(copy)] = c;
    }

    void leave_class(int q) { cls_[static_cast<std::size_t>(q)] = -1; }

    /// Next two-qubit partner of q after flat index `index`, with q's role.
    std::pair<int, bool> next_partner(int q, std::size_t index) const {
        for (std::size_t j = index + 1; j < flat_.size(); ++j) {
            const auto& g = flat_[j];
            if (g.arity() != 2 || !g.touches(q)) continue;
            if (g.kind == GateKind::SWAP) return {-1, false};
            const bool q_is_control = g.qubits[0] == q;
            return {q_is_control ? g.qubits[1] : g.qubits[0], q_is_control};
        }
        return {-1, false};
    }

    /// Seats pristine q next to node `anchor`; `q_controls` picks the preferred edge direction.
    bool seat_near(int q, int anchor, bool q_controls) {
        int best = -1;
        std::tuple<std::size_t, int, int, int, int> best_key{};
        for (int p : graph_.neighbors(anchor)) {
            if (!free_node(p)) continue;
            const bool native = q_controls ? graph_.has_directed(p, anchor) : graph_.has_directed(anchor, p);
            const auto key = std::make_tuple(ready(p), native ? 0 : 1, -free_neighbors(p, anchor), p == ph(q) ? 0 : 1, p);
            if (best < 0 || key < best_key) {
                best = p;
                best_key = key;
            }
        }
        if (best < 0) return false;
        relabel(q, best);
        return true;
    }

    void emit(const Gate& g) { out_.append_at_or_after(g, base_); }

    Gate remap2(const Gate& g, int a, int b) const {
        Gate r = g;
        r.qubits = {a, b};
        return r;
    }

    /// Moves control data along a shortest path until it neighbors the target.
    void bring_adjacent(int control, int target) {
        while (true) {
            const int pc = ph(control);
            const int pt = ph(target);
            const auto path = graph_.shortest_path(pc, pt);
            if (path.empty()) throw std::runtime_error("unroutable: nodes " + std::to_string(pc) + " and " +
                                                       std::to_string(pt) + " are disconnected");
            if (path.size() <= 2) return;
            physical_swap(path[0], path[1]);
        }
    }

    void handle(const Gate& g, std::size_t index) {
        if (g.arity() == 1) {
            const int q = g.qubits[0];
            if (opt_.fanout_aware && pristine(q)) {
                const auto [partner, q_controls] = next_partner(q, index);
                if (partner >= 0 && !pristine(partner) && !graph_.adjacent(ph(q), ph(partner))) {
                    seat_near(q, ph(partner), q_controls);
                }
            }
            touch(q);
            leave_class(q);
            Gate r = g;
            r.qubits = {ph(q), -1};
            emit(r);
            return;
        }
        if (g.kind == GateKind::SWAP) {
            // Logical SWAP: relabel only.
            const int a = g.qubits[0];
            const int b = g.qubits[1];
            touch(a);
            touch(b);
            const int pa = ph(a);
            const int pb = ph(b);
            phys_[static_cast<std::size_t>(a)] = pb;
            phys_[static_cast<std::size_t>(b)] = pa;
            occ_[static_cast<std::size_t>(pa)] = b;
            occ_[static_cast<std::size_t>(pb)] = a;
            std::swap(cls_[static_cast<std::size_t>(a)], cls_[static_cast<std::size_t>(b)]);
            return;
        }
        const int c = g.qubits[0];
        const int t = g.qubits[1];
        if (opt_.fanout_aware) {
            if (g.kind == GateKind::CNOT && pristine(t) && !pristine(c) && fan_out(g, c, t)) return;
            if (pristine(c) && !pristine(t)) {
                if (!graph_.adjacent(ph(c), ph(t))) seat_near(c, ph(t), true);
            } else if (pristine(t) && !pristine(c)) {
                if (!graph_.adjacent(ph(c), ph(t))) seat_near(t, ph(c), false);
            } else if (pristine(c) && pristine(t)) {
                touch(c);
                if (!graph_.adjacent(ph(c), ph(t))) seat_near(t, ph(c), false);
            }
        }
        touch(c);
        touch(t);
        int ctrl = c;
        if (g.kind == GateKind::CNOT) ctrl = pick_substitute(c, t);
        bring_adjacent(ctrl, t);
        emit(remap2(g, ph(ctrl), ph(t)));
        leave_class(t);
    }

    /// Control stand-in for CNOT(c, t) with t already placed.
    int pick_substitute(int c, int t) const {
        const auto m = members(c);
        const auto& dist = graph_.distance_matrix();
        int best = c;
        auto key = [&](int r) {
            const int d = dist[static_cast<std::size_t>(ph(r))][static_cast<std::size_t>(ph(t))];
            return std::make_tuple(d > 1 ? 1 : 0, d, ready(ph(r)), r == c ? 0 : 1, ph(r));
        };
        for (int r : m) {
            if (r == t) continue;
            if (key(r) < key(best)) best = r;
        }
        return best;
    }

    /// CNOT from a copy of c onto a fresh target, seated next to that copy.
    bool fan_out(const Gate& g, int c, int t) {
        int best_m = -1;
        int best_p = -1;
        std::tuple<std::size_t, int, int, int, int, int, int> best_key{};
        for (int m : members(c)) {
            if (m == t) continue;
            const int pm = ph(m);
            for (int p : graph_.neighbors(pm)) {
                if (!free_node(p)) continue;
                const int o = occ_[static_cast<std::size_t>(p)];
                if (o >= 0 && o != t && !pristine(o)) continue;
                const auto slot = std::max(ready(pm), ready(p));
                const auto key = std::make_tuple(slot, graph_.has_directed(pm, p) ? 0 : 1, -free_neighbors(p, pm),
                                                 m == c ? 0 : 1, p == ph(t) ? 0 : 1, pm, p);
                if (best_m < 0 || key < best_key) {
                    best_m = m;
                    best_p = p;
                    best_key = key;
                }
            }
        }
        if (best_m < 0) return false;
        relabel(t, best_p);
        touch(t);
        emit(remap2(g, ph(best_m), best_p));
        join_class(c, t);
        return true;
    }

    const Circuit& in_;
    const CouplingGraph& graph_;
    RouteOptions opt_;
    Circuit out_;
    std::vector<Gate> flat_;
    Placement phys_;
    std::vector<int> occ_;
    std::vector<int> origin_;
    std::vector<char> pristine_;
    std::vector<int> initial_;
    std::vector<int> cls_;
    int next_class_ = 0;
    std::size_t base_ = 0;
    std::size_t swaps_ = 0;
};

}  // namespace

RouteResult route(const Circuit& circuit, const CouplingGraph& graph, const Placement& placement, RouteOptions options) {
    if (circuit.width() > graph.node_count()) throw std::invalid_argument("circuit wider than coupling graph");
    return Router(circuit, graph, placement, options).run();
}

// ---------------------------------------------------------------------------
// Direction fixing and checks

Circuit fix_direction(const Circuit& circuit, const CouplingGraph& graph, bool decompose_swaps) {
    Circuit out(circuit.width());
    for (int q : circuit.initial_excitations()) out.add_initial_excitation(q);
    for (const auto& slice : circuit.slices()) {
        if (slice.is_delay()) {
            out.append_delay(slice.idle_us);
            continue;
        }
        const std::size_t base = out.slice_count();
        auto cnot = [&](int a, int b) {
            if (graph.has_directed(a, b)) {
                out.append_at_or_after(Gate::cnot(a, b), base);
            } else if (graph.has_directed(b, a)) {
                out.append_at_or_after(Gate::h(a), base);
                out.append_at_or_after(Gate::h(b), base);
                out.append_at_or_after(Gate::cnot(b, a), base);
                out.append_at_or_after(Gate::h(a), base);
                out.append_at_or_after(Gate::h(b), base);
            } else {
                throw std::invalid_argument("fix_direction: CNOT(" + std::to_string(a) + "," + std::to_string(b) +
                                            ") spans non-adjacent nodes; route first");
            }
        };
        for (const auto& g : slice.gates) {
            switch (g.kind) {
                case GateKind::CNOT: cnot(g.qubits[0], g.qubits[1]); break;
                case GateKind::SWAP:
                    if (!graph.adjacent(g.qubits[0], g.qubits[1])) {
                        throw std::invalid_argument("fix_direction: SWAP spans non-adjacent nodes");
                    }
                    if (decompose_swaps) {
                        // Orient the outer pair along the native edge.
                        const int a = graph.has_directed(g.qubits[0], g.qubits[1]) ? g.qubits[0] : g.qubits[1];
                        const int b = a == g.qubits[0] ? g.qubits[1] : g.qubits[0];
                        cnot(a, b);
                        cnot(b, a);
                        cnot(a, b);
                    } else {
                        out.append_at_or_after(g, base);
                    }
                    break;
                case GateKind::CROT: throw std::invalid_argument("fix_direction: lower CROT gates first");
                default: out.append_at_or_after(g, base); break;
            }
        }
    }
    return out;
}

Circuit cancel_hadamard_pairs(const Circuit& circuit) {
    Circuit out(circuit.width());
    for (int q : circuit.initial_excitations()) out.add_initial_excitation(q);
    // Work segment by segment between delays.
    std::vector<Gate> pending;
    std::vector<bool> alive;
    std::vector<std::vector<std::size_t>> on_qubit(static_cast<std::size_t>(circuit.width()));
    auto flush = [&] {
        for (std::size_t i = 0; i < pending.size(); ++i)
            if (alive[i]) out.append(pending[i]);
        pending.clear();
        alive.clear();
        for (auto& v : on_qubit) v.clear();
    };
    for (const auto& slice : circuit.slices()) {
        if (slice.is_delay()) {
            flush();
            out.append_delay(slice.idle_us);
            continue;
        }
        for (const auto& g : slice.gates) {
            if (g.kind == GateKind::H) {
                auto& stack = on_qubit[static_cast<std::size_t>(g.qubits[0])];
                if (!stack.empty() && pending[stack.back()].kind == GateKind::H) {
                    alive[stack.back()] = false;
                    stack.pop_back();
                    continue;
                }
            }
            const std::size_t idx = pending.size();
            pending.push_back(g);
            alive.push_back(true);
            for (int i = 0; i < g.arity(); ++i) on_qubit[static_cast<std::size_t>(g.qubits[static_cast<std::size_t>(i)])].push_back(idx);
        }
    }
    flush();
    return out;
}

bool is_hardware_legal(const Circuit& circuit, const CouplingGraph& graph) {
    bool ok = circuit.width() <= graph.node_count();
    circuit.for_each_gate([&](const Gate& g) {
        switch (g.kind) {
            case GateKind::CNOT: ok = ok && graph.has_directed(g.qubits[0], g.qubits[1]); break;
            case GateKind::SWAP: ok = ok && graph.adjacent(g.qubits[0], g.qubits[1]); break;
            case GateKind::CROT: ok = false; break;
            default: break;
        }
    });
    return ok;
}

bool verify_equivalence(const Circuit& original, const Circuit& transpiled, const Placement& placement_in,
                        const Placement& placement_out, double tolerance) {
    const int n = original.width();
    const int w = transpiled.width();
    if (static_cast<int>(placement_in.size()) != n || static_cast<int>(placement_out.size()) != n) return false;
    for (const auto* pl : {&placement_in, &placement_out}) {
        std::set<int> seen;
        for (int p : *pl) {
            if (p < 0 || p >= w || !seen.insert(p).second) return false;
        }
    }
    std::set<int> want;
    for (int q : original.initial_excitations()) want.insert(placement_in[static_cast<std::size_t>(q)]);
    const std::set<int> have(transpiled.initial_excitations().begin(), transpiled.initial_excitations().end());
    if (want != have) return false;

    const auto logical = sim::simulate(original);
    const auto physical = sim::simulate(transpiled);
    std::vector<sim::cplx> expected(physical.dim(), 0.0);
    for (std::uint64_t x = 0; x < logical.dim(); ++x) {
        std::uint64_t y = 0;
        for (int q = 0; q < n; ++q) {
            if (x & sim::qubit_mask(n, q)) y |= sim::qubit_mask(w, placement_out[static_cast<std::size_t>(q)]);
        }
        expected[y] = logical.amplitudes()[x];
    }
    sim::cplx ip = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) ip += std::conj(expected[i]) * physical.amplitudes()[i];
    if (std::abs(ip) < 0.5) return false;
    const sim::cplx phase = ip / std::abs(ip);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (std::abs(physical.amplitudes()[i] - phase * expected[i]) > tolerance) return false;
    }
    return true;
}

TranspileResult transpile(const Circuit& circuit, const CouplingGraph& graph, TranspileOptions options) {
    TranspileResult best;
    best.lowered = ir::lower_crot(circuit, options.lowering);
    std::vector<int> roots{-1};
    if (options.search_placement) {
        roots.clear();
        for (int p = 0; p < graph.node_count(); ++p) roots.push_back(p);
    }
    bool have = false;
    std::tuple<int, int, std::size_t, std::size_t> best_key{};
    for (int root : roots) {
        const auto placement = initial_placement(best.lowered, graph, root);
        auto routed = route(best.lowered, graph, placement, options.route);
        auto physical = fix_direction(routed.circuit, graph);
        if (options.cancel_hadamards) physical = cancel_hadamard_pairs(physical);
        const auto key = std::make_tuple(ir::depth(physical), ir::depth(routed.circuit), routed.swaps,
                                         ir::gate_count(physical));
        if (!have || key < best_key) {
            have = true;
            best_key = key;
            best.routed = std::move(routed.circuit);
            best.physical = std::move(physical);
            best.initial = routed.initial;
            best.final_placement = routed.final_placement;
            best.swaps = routed.swaps;
        }
    }
    return best;
}

nlohmann::json placement_report(const TranspileResult& result) {
    nlohmann::json doc;
    doc["initial_placement"] = result.initial;
    doc["final_placement"] = result.final_placement;
    doc["swaps"] = result.swaps;
    doc["depth_logical"] = ir::depth(result.lowered);
    doc["depth_routed"] = ir::depth(result.routed);
    doc["depth_physical"] = ir::depth(result.physical);
    doc["gates_physical"] = ir::gate_count(result.physical);
    return doc;
}

}  // namespace ghzw::transpile
