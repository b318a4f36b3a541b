#include "tcol/minor.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <unordered_set>

#include "tcol/planar.hpp"

namespace tcol {

std::string to_string(MinorTarget t) { return t == MinorTarget::K5 ? "k5" : "k33"; }

Graph wagner_graph() {
    Graph g(8);
    for (int i = 0; i < 8; ++i) g.add_edge(i, (i + 1) % 8);
    for (int i = 0; i < 4; ++i) g.add_edge(i, i + 4);
    return g;
}

bool is_wagner(const Graph& g) {
    if (g.num_vertices() != 8 || g.num_edges() != 12) return false;
    for (VertexId v : g.vertices())
        if (g.degree(v) != 3) return false;
    // look for a Hamiltonian cycle whose antipodal pairs are all adjacent
    std::vector<VertexId> order{g.vertices().front()};
    std::vector<char> used(g.vertex_capacity(), 0);
    used[order[0]] = 1;
    std::function<bool()> grow = [&]() -> bool {
        if (order.size() == 8) {
            if (!g.adjacent(order[7], order[0])) return false;
            for (int i = 0; i < 4; ++i)
                if (!g.adjacent(order[i], order[i + 4])) return false;
            return true;
        }
        for (VertexId w : g.neighbors(order.back())) {
            if (used[w]) continue;
            used[w] = 1;
            order.push_back(w);
            if (grow()) return true;
            order.pop_back();
            used[w] = 0;
        }
        return false;
    };
    return grow();
}

namespace {

using Mask = std::uint64_t;

struct State {
    std::vector<Mask> adj;     // per slot; slot dead when not in alive
    std::vector<Mask> branch;  // original (compact) vertices per slot
    Mask alive = 0;
};

int popc(Mask m) { return std::popcount(m); }

void remove_slot(State& s, int v) {
    for (Mask m = s.adj[v]; m; m &= m - 1) s.adj[std::countr_zero(m)] &= ~(Mask{1} << v);
    s.adj[v] = 0;
    s.branch[v] = 0;
    s.alive &= ~(Mask{1} << v);
}

// merge b into a (a, b adjacent)
void contract(State& s, int a, int b) {
    Mask nb = s.adj[b] & ~(Mask{1} << a);
    Mask keep_branch = s.branch[b];
    remove_slot(s, b);
    s.branch[a] |= keep_branch;
    for (Mask m = nb; m; m &= m - 1) {
        int w = std::countr_zero(m);
        s.adj[a] |= Mask{1} << w;
        s.adj[w] |= Mask{1} << a;
    }
}

// Drop vertices of degree <= 1 and suppress degree-2 vertices; both keep
// the existence of K5/K33 minors (targets are 3-connected, min degree 3).
void normalize(State& s) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (Mask m = s.alive; m; m &= m - 1) {
            int v = std::countr_zero(m);
            if (!(s.alive >> v & 1)) continue;
            int d = popc(s.adj[v]);
            if (d <= 1) {
                remove_slot(s, v);
                changed = true;
            } else if (d == 2) {
                int a = std::countr_zero(s.adj[v]);
                int lo = std::min(a, v), hi = std::max(a, v);
                contract(s, lo, hi);
                changed = true;
            }
        }
    }
}

bool find_k5(const State& s, std::vector<int>& out) {
    Mask cand = 0;
    for (Mask m = s.alive; m; m &= m - 1) {
        int v = std::countr_zero(m);
        if (popc(s.adj[v]) >= 4) cand |= Mask{1} << v;
    }
    std::function<bool(Mask, int)> rec = [&](Mask pool, int need) -> bool {
        if (need == 0) return true;
        for (Mask m = pool; m; m &= m - 1) {
            int v = std::countr_zero(m);
            Mask rest = pool & s.adj[v] & ~((Mask{2} << v) - 1);
            if (popc(rest) < need - 1) continue;
            out.push_back(v);
            if (rec(rest, need - 1)) return true;
            out.pop_back();
        }
        return false;
    };
    out.clear();
    return rec(cand, 5);
}

bool find_k33(const State& s, std::vector<int>& out) {
    std::vector<int> vs;
    for (Mask m = s.alive; m; m &= m - 1) {
        int v = std::countr_zero(m);
        if (popc(s.adj[v]) >= 3) vs.push_back(v);
    }
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j) {
            Mask ij = s.adj[vs[i]] & s.adj[vs[j]];
            if (popc(ij) < 3) continue;
            for (size_t k = j + 1; k < vs.size(); ++k) {
                Mask side = Mask{1} << vs[i] | Mask{1} << vs[j] | Mask{1} << vs[k];
                Mask common = ij & s.adj[vs[k]] & ~side;
                if (popc(common) >= 3) {
                    out = {vs[i], vs[j], vs[k]};
                    for (int t = 0; t < 3; ++t) {
                        int w = std::countr_zero(common);
                        out.push_back(w);
                        common &= common - 1;
                    }
                    return true;
                }
            }
        }
    return false;
}

bool state_planar(const State& s) {
    int n = popc(s.alive);
    int m2 = 0;
    for (Mask m = s.alive; m; m &= m - 1) m2 += popc(s.adj[std::countr_zero(m)]);
    if (n >= 3 && m2 / 2 > 3 * n - 6) return false;
    Graph g(64);
    for (Mask m = s.alive; m; m &= m - 1) {
        int v = std::countr_zero(m);
        for (Mask a = s.adj[v] & ~((Mask{2} << v) - 1); a; a &= a - 1) g.add_edge(v, std::countr_zero(a));
    }
    return is_planar(g);
}

struct KeyHash {
    size_t operator()(const std::vector<Mask>& k) const {
        size_t h = 1469598103934665603ULL;
        for (Mask x : k) h = (h ^ x) * 1099511628211ULL;
        return h;
    }
};

}  // namespace

std::optional<MinorModel> has_minor(const Graph& g, MinorTarget target, long long budget) {
    if (is_planar(g)) return std::nullopt;
    std::vector<VertexId> ids;
    Graph c = compact(g, &ids);
    if (c.num_vertices() > 64) throw SearchBudgetExceeded("minor search supports at most 64 vertices");
    State root;
    root.adj.assign(64, 0);
    root.branch.assign(64, 0);
    for (VertexId v : c.vertices()) {
        root.alive |= Mask{1} << v;
        root.branch[v] = Mask{1} << v;
        for (VertexId w : c.neighbors(v)) root.adj[v] |= Mask{1} << w;
    }
    const int need = target == MinorTarget::K5 ? 5 : 6;
    std::unordered_set<std::vector<Mask>, KeyHash> seen;
    long long visited = 0;
    std::vector<int> hit;
    std::optional<State> found;

    std::function<bool(State)> dfs = [&](State s) -> bool {
        normalize(s);
        if (popc(s.alive) < need) return false;
        bool ok = target == MinorTarget::K5 ? find_k5(s, hit) : find_k33(s, hit);
        if (ok) {
            found = s;
            return true;
        }
        std::vector<Mask> key(s.adj.begin(), s.adj.end());
        if (!seen.insert(key).second) return false;
        if (++visited > budget) throw SearchBudgetExceeded("minor search budget exhausted");
        if (state_planar(s)) return false;
        // contract edges, highest-degree pairs first
        std::vector<std::pair<int, std::pair<int, int>>> edges;
        for (Mask m = s.alive; m; m &= m - 1) {
            int a = std::countr_zero(m);
            for (Mask b = s.adj[a] & ~((Mask{2} << a) - 1); b; b &= b - 1) {
                int bb = std::countr_zero(b);
                edges.push_back({-(popc(s.adj[a] | s.adj[bb])), {a, bb}});
            }
        }
        std::sort(edges.begin(), edges.end());
        for (auto& [score, ab] : edges) {
            State t = s;
            contract(t, ab.first, ab.second);
            if (dfs(std::move(t))) return true;
        }
        return false;
    };
    if (!dfs(root)) return std::nullopt;

    MinorModel model{target, {}};
    for (int slot : hit) {
        std::vector<VertexId> set;
        for (Mask m = found->branch[slot]; m; m &= m - 1) set.push_back(ids[std::countr_zero(m)]);
        model.branch_sets.push_back(std::move(set));
    }
    return model;
}

std::string check_model(const Graph& g, const MinorModel& m) {
    size_t k = m.target == MinorTarget::K5 ? 5 : 6;
    if (m.branch_sets.size() != k) return "wrong number of branch sets";
    std::vector<int> owner(g.vertex_capacity(), -1);
    for (size_t i = 0; i < k; ++i) {
        if (m.branch_sets[i].empty()) return "empty branch set";
        for (VertexId v : m.branch_sets[i]) {
            if (!g.has_vertex(v)) return "unknown vertex in branch set";
            if (owner[v] >= 0) return "branch sets overlap";
            owner[v] = static_cast<int>(i);
        }
    }
    for (size_t i = 0; i < k; ++i) {
        const auto& set = m.branch_sets[i];
        std::vector<VertexId> stack{set[0]};
        std::vector<char> seen(g.vertex_capacity(), 0);
        seen[set[0]] = 1;
        size_t reached = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId w : g.neighbors(v))
                if (!seen[w] && owner[w] == static_cast<int>(i)) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached != set.size()) return "branch set not connected";
    }
    auto joined = [&](size_t a, size_t b) {
        for (VertexId v : m.branch_sets[a])
            for (VertexId w : g.neighbors(v))
                if (owner[w] == static_cast<int>(b)) return true;
        return false;
    };
    for (size_t a = 0; a < k; ++a)
        for (size_t b = a + 1; b < k; ++b) {
            bool needed = m.target == MinorTarget::K5 || ((a < 3) != (b < 3));
            if (needed && !joined(a, b)) return "missing edge between branch sets";
        }
    return {};
}

KSum k_sum(const Graph& g1, const Graph& g2, const std::vector<VertexId>& clique1,
           const std::vector<VertexId>& clique2, const std::vector<int>& drop) {
    size_t k = clique1.size();
    if (k != clique2.size()) throw GraphError("k_sum: clique sizes differ");
    if (k == 0 || k > 3) throw GraphError("k_sum: clique size must be 1..3");
    auto check = [](const Graph& g, const std::vector<VertexId>& c) {
        for (size_t i = 0; i < c.size(); ++i) {
            if (!g.has_vertex(c[i])) throw GraphError("k_sum: invalid clique vertex");
            for (size_t j = i + 1; j < c.size(); ++j)
                if (c[i] == c[j] || !g.adjacent(c[i], c[j])) throw GraphError("k_sum: not a clique");
        }
    };
    check(g1, clique1);
    check(g2, clique2);
    KSum out{g1, std::vector<VertexId>(g2.vertex_capacity(), -1)};
    for (size_t i = 0; i < k; ++i) out.from_g2[clique2[i]] = clique1[i];
    for (VertexId v : g2.vertices())
        if (out.from_g2[v] < 0) out.from_g2[v] = out.graph.add_vertex();
    for (EdgeId e : g2.edges()) {
        auto [u, v] = g2.ends(e);
        out.graph.add_edge(out.from_g2[u], out.from_g2[v]);
    }
    static const int pair_of[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int d : drop) {
        if (d < 0 || d >= static_cast<int>(k * (k - 1) / 2)) throw GraphError("k_sum: bad drop index");
        EdgeId e = out.graph.find_edge(clique1[pair_of[d][0]], clique1[pair_of[d][1]]);
        if (e >= 0) out.graph.delete_edge(e);
    }
    return out;
}

}  // namespace tcol
