#include "tcol/decomp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "json.hpp"

#include "tcol/planar.hpp"

namespace tcol {

const char* to_string(PartKind k) { return k == PartKind::Planar ? "planar" : "wagner"; }

namespace {

using Pair = std::pair<VertexId, VertexId>;

Pair ordered(VertexId a, VertexId b) { return a < b ? Pair{a, b} : Pair{b, a}; }

struct Sub {
    std::vector<std::vector<VertexId>> parts;
    std::vector<PartKind> kinds;
    std::vector<Pair> tree;
    std::set<Pair> fill;
};

Graph piece_graph(const Graph& g, const std::vector<VertexId>& verts, const std::set<Pair>& fill) {
    Graph p = induced_subgraph(g, verts);
    std::vector<char> in(g.vertex_capacity(), 0);
    for (VertexId v : verts) in[v] = 1;
    for (auto [a, b] : fill)
        if (in[a] && in[b]) p.add_edge(a, b);
    return p;
}

// Articulation points of g with the vertices in `gone` treated as deleted.
std::vector<VertexId> cut_vertices(const Graph& g, const std::vector<char>& gone) {
    int cap = g.vertex_capacity();
    std::vector<int> disc(cap, -1), low(cap, 0);
    std::vector<char> is_cut(cap, 0);
    int timer = 0;
    for (VertexId root : g.vertices()) {
        if (gone[root] || disc[root] >= 0) continue;
        // iterative DFS: (vertex, parent, next incidence index)
        struct Frame {
            VertexId v, parent;
            size_t next;
        };
        std::vector<Frame> stack{{root, -1, 0}};
        disc[root] = low[root] = timer++;
        int root_children = 0;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& inc = g.incident(f.v);
            if (f.next < inc.size()) {
                VertexId w = inc[f.next++].to;
                if (gone[w] || w == f.parent) continue;
                if (disc[w] < 0) {
                    disc[w] = low[w] = timer++;
                    if (f.v == root) ++root_children;
                    stack.push_back({w, f.v, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                VertexId v = f.v, p = f.parent;
                stack.pop_back();
                if (p >= 0) {
                    low[p] = std::min(low[p], low[v]);
                    if (p != root && low[v] >= disc[p]) is_cut[p] = 1;
                }
            }
        }
        if (root_children >= 2) is_cut[root] = 1;
    }
    std::vector<VertexId> out;
    for (VertexId v : g.vertices())
        if (is_cut[v]) out.push_back(v);
    return out;
}

// Vertex separators of exactly `size` vertices, sorted.
std::vector<std::vector<VertexId>> separators(const Graph& p, int size) {
    std::set<std::vector<VertexId>> found;
    std::vector<char> gone(p.vertex_capacity(), 0);
    auto vs = p.vertices();
    std::function<void(size_t, std::vector<VertexId>&)> rec = [&](size_t from, std::vector<VertexId>& chosen) {
        if (static_cast<int>(chosen.size()) == size - 1) {
            for (VertexId c : cut_vertices(p, gone)) {
                std::vector<VertexId> s = chosen;
                s.push_back(c);
                std::sort(s.begin(), s.end());
                found.insert(s);
            }
            return;
        }
        for (size_t i = from; i < vs.size(); ++i) {
            gone[vs[i]] = 1;
            chosen.push_back(vs[i]);
            rec(i + 1, chosen);
            chosen.pop_back();
            gone[vs[i]] = 0;
        }
    };
    std::vector<VertexId> chosen;
    rec(0, chosen);
    return {found.begin(), found.end()};
}

std::vector<std::vector<VertexId>> components_without(const Graph& p, const std::vector<VertexId>& sep) {
    std::vector<char> gone(p.vertex_capacity(), 0), seen(p.vertex_capacity(), 0);
    for (VertexId s : sep) gone[s] = 1;
    std::vector<std::vector<VertexId>> out;
    for (VertexId r : p.vertices()) {
        if (gone[r] || seen[r]) continue;
        std::vector<VertexId> comp{r}, stack{r};
        seen[r] = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId w : p.neighbors(v))
                if (!gone[w] && !seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                    stack.push_back(w);
                }
        }
        out.push_back(comp);
    }
    return out;
}

class Decomposer {
public:
    explicit Decomposer(const Graph& g) : g_(g) {}

    std::optional<Sub> solve(const std::vector<VertexId>& verts, const std::set<Pair>& fill) {
        if (++calls_ > kBudget) throw SearchBudgetExceeded("decompose: separator search budget exhausted");
        Graph p = piece_graph(g_, verts, fill);
        std::vector<VertexId> sorted = verts;
        std::sort(sorted.begin(), sorted.end());
        if (is_planar(p)) return Sub{{sorted}, {PartKind::Planar}, {}, fill};
        if (is_wagner(p)) return Sub{{sorted}, {PartKind::Wagner}, {}, fill};
        // Below 3 the piece has a cut of size 1 or 2 whose torsos are minors
        // of it (another component supplies the added edge), so the first one
        // found is as good as any and failure is final.
        for (int size = 1; size <= 2; ++size) {
            auto seps = separators(p, size);
            if (!seps.empty()) return split(p, seps.front(), fill);
        }
        // 3-connected. A torso is again a minor when the separator already
        // spans a triangle or there are three or more components; otherwise
        // try the splits with no single-vertex side first and backtrack.
        std::vector<std::vector<VertexId>> rest, trivial;
        for (const auto& sep : separators(p, 3)) {
            auto comps = components_without(p, sep);
            bool triangle = p.adjacent(sep[0], sep[1]) && p.adjacent(sep[0], sep[2]) && p.adjacent(sep[1], sep[2]);
            if (triangle || comps.size() >= 3) return split(p, sep, fill);
            bool single = std::any_of(comps.begin(), comps.end(), [](const auto& c) { return c.size() == 1; });
            (single ? trivial : rest).push_back(sep);
        }
        rest.insert(rest.end(), trivial.begin(), trivial.end());
        for (const auto& sep : rest)
            if (auto sub = split(p, sep, fill)) return sub;
        return std::nullopt;
    }

private:
    std::optional<Sub> split(const Graph& p, const std::vector<VertexId>& sep, std::set<Pair> fill) {
        for (size_t i = 0; i < sep.size(); ++i)
            for (size_t j = i + 1; j < sep.size(); ++j)
                if (!p.adjacent(sep[i], sep[j])) fill.insert(ordered(sep[i], sep[j]));
        Sub out;
        out.fill = fill;
        int anchor = -1;
        for (auto& comp : components_without(p, sep)) {
            comp.insert(comp.end(), sep.begin(), sep.end());
            auto sub = solve(comp, out.fill);
            if (!sub) return std::nullopt;
            int offset = static_cast<int>(out.parts.size());
            int holder = -1;
            for (size_t t = 0; t < sub->parts.size() && holder < 0; ++t)
                if (std::includes(sub->parts[t].begin(), sub->parts[t].end(), sep.begin(), sep.end()))
                    holder = offset + static_cast<int>(t);
            for (auto [a, b] : sub->tree) out.tree.push_back({a + offset, b + offset});
            out.parts.insert(out.parts.end(), sub->parts.begin(), sub->parts.end());
            out.kinds.insert(out.kinds.end(), sub->kinds.begin(), sub->kinds.end());
            out.fill = sub->fill;
            if (anchor < 0)
                anchor = holder;
            else
                out.tree.push_back({anchor, holder});
        }
        return out;
    }

    static constexpr long kBudget = 200000;
    const Graph& g_;
    long calls_ = 0;
};

}  // namespace

TreeDecomposition decompose(const Graph& g) {
    if (g.num_vertices() == 0) throw GraphError("decompose: empty graph");
    if (!is_connected(g)) throw GraphError("decompose: graph is not connected");
    int n = g.num_vertices();
    if (n >= 3 && g.num_edges() > 3 * n - 6) {
        std::optional<MinorModel> w;
        if (n <= 64) w = has_minor(g, MinorTarget::K5);
        throw NotK5MinorFree("graph has more than 3n-6 edges, so it has a K5 minor", w);
    }
    std::optional<Sub> sub = Decomposer(g).solve(g.vertices(), {});
    if (!sub) {
        if (n > 64) throw NotK5MinorFree("no decomposition into planar and Wagner parts", std::nullopt);
        auto w = has_minor(g, MinorTarget::K5);
        if (w) throw NotK5MinorFree("graph has a K5 minor", w);
        throw GraphError("decompose: no decomposition found although no K5 minor exists");
    }
    TreeDecomposition d;
    d.tree = Graph(static_cast<int>(sub->parts.size()));
    for (auto [a, b] : sub->tree) d.tree.add_edge(a, b);
    d.parts = std::move(sub->parts);
    d.kinds = std::move(sub->kinds);
    d.fill_edges.assign(sub->fill.begin(), sub->fill.end());
    return d;
}

Graph part_graph(const Graph& g, const TreeDecomposition& d, int t) {
    std::set<Pair> fill(d.fill_edges.begin(), d.fill_edges.end());
    return piece_graph(g, d.parts.at(t), fill);
}

std::string check_decomposition(const Graph& g, const TreeDecomposition& d) {
    const int k = static_cast<int>(d.parts.size());
    if (k == 0) return "no parts";
    if (d.tree.num_vertices() != k || static_cast<int>(d.kinds.size()) != k) return "tree, parts and kinds disagree in size";
    if (d.tree.num_edges() != k - 1 || !is_connected(d.tree)) return "tree is not a tree";
    for (auto [a, b] : d.fill_edges)
        if (!g.has_vertex(a) || !g.has_vertex(b) || a == b || g.adjacent(a, b)) return "bad fill edge";

    std::vector<std::vector<int>> holders(g.vertex_capacity());
    for (int t = 0; t < k; ++t)
        for (VertexId v : d.parts[t]) {
            if (!g.has_vertex(v)) return "part names a missing vertex";
            holders[v].push_back(t);
        }
    for (VertexId v : g.vertices())
        if (holders[v].empty()) return "vertex " + std::to_string(v + 1) + " is in no part";  // (T1)
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.ends(e);
        bool inside = false;
        for (int t : holders[u])
            if (std::binary_search(d.parts[t].begin(), d.parts[t].end(), v)) inside = true;
        if (!inside) return "edge " + std::to_string(u + 1) + " " + std::to_string(v + 1) + " is in no part";  // (T2)
    }
    for (VertexId v : g.vertices()) {  // (T3): holders form a subtree
        std::vector<VertexId> keep(holders[v].begin(), holders[v].end());
        if (!is_connected(induced_subgraph(d.tree, keep))) return "parts holding " + std::to_string(v + 1) + " are not connected in the tree";
    }
    std::set<Pair> fill(d.fill_edges.begin(), d.fill_edges.end());
    auto joined = [&](VertexId a, VertexId b) { return g.adjacent(a, b) || fill.count(ordered(a, b)); };
    for (EdgeId e : d.tree.edges()) {
        auto [a, b] = d.tree.ends(e);
        std::vector<VertexId> s;
        std::set_intersection(d.parts[a].begin(), d.parts[a].end(), d.parts[b].begin(), d.parts[b].end(),
                              std::back_inserter(s));
        if (s.empty() || s.size() > 3) return "separator of size " + std::to_string(s.size());
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j)
                if (!joined(s[i], s[j])) return "separator is not a clique";
    }
    for (int t = 0; t < k; ++t) {
        Graph p = compact(part_graph(g, d, t));
        if (d.kinds[t] == PartKind::Planar && !is_planar(p)) return "part " + std::to_string(t) + " is not planar";
        if (d.kinds[t] == PartKind::Wagner && !is_wagner(p)) return "part " + std::to_string(t) + " is not the Wagner graph";
    }
    return {};
}

Graph recompose(const Graph& g, const TreeDecomposition& d, std::vector<VertexId>* old_id) {
    std::vector<VertexId> host_of;
    Graph cur = compact(part_graph(g, d, 0), &host_of);
    std::map<VertexId, VertexId> cur_of;
    for (size_t i = 0; i < host_of.size(); ++i) cur_of[host_of[i]] = static_cast<VertexId>(i);

    std::vector<char> done(d.parts.size(), 0);
    std::vector<int> queue{0};
    done[0] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int t = queue[qi];
        for (VertexId c : d.tree.neighbors(t)) {
            if (done[c]) continue;
            done[c] = 1;
            queue.push_back(c);
            std::vector<VertexId> part_host;
            Graph p = compact(part_graph(g, d, c), &part_host);
            std::vector<VertexId> c1, c2;
            for (size_t i = 0; i < part_host.size(); ++i)
                if (std::binary_search(d.parts[t].begin(), d.parts[t].end(), part_host[i])) {
                    c1.push_back(cur_of.at(part_host[i]));
                    c2.push_back(static_cast<VertexId>(i));
                }
            KSum s = k_sum(cur, p, c1, c2);
            cur = std::move(s.graph);
            for (size_t i = 0; i < part_host.size(); ++i) {
                VertexId img = s.from_g2[i];
                if (cur_of.count(part_host[i]) == 0) {
                    cur_of[part_host[i]] = img;
                    if (static_cast<int>(host_of.size()) <= img) host_of.resize(img + 1, -1);
                    host_of[img] = part_host[i];
                }
            }
        }
    }
    for (auto [a, b] : d.fill_edges) {
        EdgeId e = cur.find_edge(cur_of.at(a), cur_of.at(b));
        if (e >= 0) cur.delete_edge(e);
    }
    if (old_id) *old_id = host_of;
    return cur;
}

std::string to_json(const TreeDecomposition& d) {
    nlohmann::json j;
    j["tree"] = nlohmann::json::array();
    for (EdgeId e : d.tree.edges()) {
        auto [a, b] = d.tree.ends(e);
        j["tree"].push_back({a, b});
    }
    j["parts"] = nlohmann::json::object();
    j["kinds"] = nlohmann::json::object();
    for (size_t t = 0; t < d.parts.size(); ++t) {
        std::vector<int> labels;
        for (VertexId v : d.parts[t]) labels.push_back(v + 1);
        j["parts"][std::to_string(t)] = labels;
        j["kinds"][std::to_string(t)] = to_string(d.kinds[t]);
    }
    j["fill_edges"] = nlohmann::json::array();
    for (auto [a, b] : d.fill_edges) j["fill_edges"].push_back({a + 1, b + 1});
    return j.dump();
}

}  // namespace tcol
