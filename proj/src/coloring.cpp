#include "tcol/coloring.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace tcol {

TotalColoring::TotalColoring(const Graph& g, int k)
    : k(k), vertex(g.vertex_capacity(), 0), edge(g.edge_capacity(), 0) {}

void TotalColoring::set_vertex(VertexId v, int c) {
    if (v >= static_cast<int>(vertex.size())) vertex.resize(v + 1, 0);
    vertex[v] = c;
}

void TotalColoring::set_edge(EdgeId e, int c) {
    if (e >= static_cast<int>(edge.size())) edge.resize(e + 1, 0);
    edge[e] = c;
}

namespace {

void check_range(const TotalColoring& tc, int c, const std::string& what) {
    if (c < 0 || c > tc.k) throw ColoringError(what + " has color " + std::to_string(c) + " outside 1.." + std::to_string(tc.k));
}

std::string label(const Graph& g, TotalElement x) {
    if (x.is_vertex()) return "v" + std::to_string(x.id + 1);
    auto [u, v] = g.ends(x.id);
    return "v" + std::to_string(u + 1) + "v" + std::to_string(v + 1);
}

}  // namespace

std::optional<Conflict> verify(const Graph& g, const TotalColoring& tc) {
    if (tc.k < 0 || tc.k > kMaxColors) throw ColoringError("k out of range");
    for (VertexId v : g.vertices()) check_range(tc, tc.of_vertex(v), label(g, TotalElement::vertex(v)));
    for (EdgeId e : g.edges()) check_range(tc, tc.of_edge(e), label(g, TotalElement::edge(e)));
    for (VertexId v : g.vertices()) {
        // every conflict involves some vertex's closed star
        std::vector<int> seen(tc.k + 1, -1);
        std::vector<TotalElement> who(tc.k + 1, TotalElement::vertex(v));
        auto note = [&](TotalElement x) -> std::optional<Conflict> {
            int c = tc.of(x);
            if (c == 0) return std::nullopt;
            if (seen[c] >= 0) return Conflict{who[c], x, c};
            seen[c] = 1;
            who[c] = x;
            return std::nullopt;
        };
        if (auto c = note(TotalElement::vertex(v))) return c;
        for (const auto& in : g.incident(v))
            if (auto c = note(TotalElement::edge(in.edge))) return c;
        int cv = tc.of_vertex(v);
        if (cv != 0)
            for (VertexId w : g.neighbors(v))
                if (w > v && tc.of_vertex(w) == cv)
                    return Conflict{TotalElement::vertex(v), TotalElement::vertex(w), cv};
    }
    return std::nullopt;
}

bool is_complete(const Graph& g, const TotalColoring& tc) {
    for (VertexId v : g.vertices())
        if (tc.of_vertex(v) == 0) return false;
    for (EdgeId e : g.edges())
        if (tc.of_edge(e) == 0) return false;
    return true;
}

std::string describe(const Graph& g, const Conflict& c) {
    return label(g, c.a) + " and " + label(g, c.b) + " share color " + std::to_string(c.color);
}

ColorSet present(const Graph& g, const TotalColoring& tc, VertexId v) {
    ColorSet s;
    s.set(tc.of_vertex(v));
    for (const auto& in : g.incident(v)) s.set(tc.of_edge(in.edge));
    s.reset(0);
    return s;
}

ColorSet missing(const Graph& g, const TotalColoring& tc, VertexId v) {
    ColorSet p = present(g, tc, v), s;
    for (int c = 1; c <= tc.k; ++c)
        if (!p.test(c)) s.set(c);
    return s;
}

ColorSet available(const Graph& g, const TotalColoring& tc, TotalElement x) {
    ColorSet used;
    if (x.is_vertex()) {
        for (const auto& in : g.incident(x.id)) used.set(tc.of_edge(in.edge)), used.set(tc.of_vertex(in.to));
    } else {
        auto [u, v] = g.ends(x.id);
        for (VertexId t : {u, v}) {
            used.set(tc.of_vertex(t));
            for (const auto& in : g.incident(t))
                if (in.edge != x.id) used.set(tc.of_edge(in.edge));
        }
    }
    ColorSet s;
    for (int c = 1; c <= tc.k; ++c)
        if (!used.test(c)) s.set(c);
    return s;
}

namespace {

struct TotalGraph {
    std::vector<TotalElement> elems;
    std::vector<std::vector<int>> adj;
};

// Elements in BFS order so the search meets constrained ones early.
TotalGraph total_graph(const Graph& g) {
    TotalGraph t;
    std::vector<int> vidx(g.vertex_capacity(), -1), eidx(g.edge_capacity(), -1);
    std::vector<char> seen(g.vertex_capacity(), 0);
    for (VertexId s : g.vertices()) {
        if (seen[s]) continue;
        std::deque<VertexId> q{s};
        seen[s] = 1;
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop_front();
            vidx[v] = static_cast<int>(t.elems.size());
            t.elems.push_back(TotalElement::vertex(v));
            for (const auto& in : g.incident(v)) {
                if (eidx[in.edge] < 0) {
                    eidx[in.edge] = static_cast<int>(t.elems.size());
                    t.elems.push_back(TotalElement::edge(in.edge));
                }
                if (!seen[in.to]) seen[in.to] = 1, q.push_back(in.to);
            }
        }
    }
    t.adj.resize(t.elems.size());
    auto link = [&](int a, int b) { t.adj[a].push_back(b), t.adj[b].push_back(a); };
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.ends(e);
        link(vidx[u], vidx[v]);
        link(eidx[e], vidx[u]);
        link(eidx[e], vidx[v]);
    }
    for (VertexId v : g.vertices()) {
        const auto& inc = g.incident(v);
        for (size_t i = 0; i < inc.size(); ++i)
            for (size_t j = i + 1; j < inc.size(); ++j) link(eidx[inc[i].edge], eidx[inc[j].edge]);
    }
    return t;
}

}  // namespace

std::optional<TotalColoring> exact_coloring(const Graph& g, int k, int budget) {
    int size = g.num_vertices() + g.num_edges();
    if (size > budget)
        throw BudgetExceeded("graph has " + std::to_string(size) + " elements, budget is " + std::to_string(budget));
    if (k > kMaxColors) throw ColoringError("too many colors");
    TotalGraph t = total_graph(g);
    int n = static_cast<int>(t.elems.size());
    std::vector<int> col(n, 0);
    // colors above max_used+1 are symmetric to max_used+1
    std::function<bool(int, int)> go = [&](int i, int max_used) {
        if (i == n) return true;
        ColorSet used;
        for (int j : t.adj[i]) used.set(col[j]);
        for (int c = 1; c <= std::min(k, max_used + 1); ++c) {
            if (used.test(c)) continue;
            col[i] = c;
            if (go(i + 1, std::max(max_used, c))) return true;
        }
        col[i] = 0;
        return false;
    };
    if (!go(0, 0)) return std::nullopt;
    TotalColoring tc(g, k);
    for (int i = 0; i < n; ++i) tc.set(t.elems[i], col[i]);
    return tc;
}

ChiResult exact_chi_total(const Graph& g, int budget) {
    int size = g.num_vertices() + g.num_edges();
    if (size > budget)
        throw BudgetExceeded("graph has " + std::to_string(size) + " elements, budget is " + std::to_string(budget));
    if (g.num_vertices() == 0) return {0, TotalColoring(g, 0)};
    for (int k = g.max_degree() + 1;; ++k)
        if (auto tc = exact_coloring(g, k, budget)) return {k, std::move(*tc)};
}

int nice_threshold_delta1() { return 6; }
int nice_threshold_tcc7() { return 5; }

bool is_nice(const Graph& g, const TotalColoring& tc, int threshold) {
    for (EdgeId e : g.edges())
        if (tc.of_edge(e) == 0) return false;
    for (VertexId v : g.vertices())
        if (g.degree(v) >= threshold && tc.of_vertex(v) == 0) return false;
    return true;
}

void complete_nice(const Graph& g, TotalColoring& tc) {
    for (VertexId v : g.vertices()) {
        if (tc.of_vertex(v) != 0) continue;
        ColorSet s = available(g, tc, TotalElement::vertex(v));
        if (s.none())
            throw ColoringError("no free color for v" + std::to_string(v + 1) + " of degree " +
                                std::to_string(g.degree(v)) + " with k = " + std::to_string(tc.k));
        tc.set_vertex(v, static_cast<int>(s._Find_first()));
    }
}

void make_nice(const Graph& g, TotalColoring& tc, int threshold) {
    for (VertexId v : g.vertices())
        if (g.degree(v) < threshold) tc.set_vertex(v, 0);
}

int kempe_swap(const Graph& g, TotalColoring& tc, int a, int b, TotalElement start, SwapScope scope) {
    auto flip = [&](TotalElement x) {
        int c = tc.of(x);
        tc.set(x, c == a ? b : a);
    };
    int c0 = tc.of(start);
    if (c0 != a && c0 != b) throw ColoringError("kempe start is not colored with either swap color");
    if (scope == SwapScope::Element) {
        flip(start);
        return 1;
    }
    if (scope == SwapScope::EdgePath && start.is_vertex()) throw ColoringError("edge path must start at an edge");
    std::vector<TotalElement> comp{start};
    std::vector<char> vseen(g.vertex_capacity(), 0), eseen(g.edge_capacity(), 0);
    auto mark = [&](TotalElement x) -> bool {
        auto& s = x.is_vertex() ? vseen[x.id] : eseen[x.id];
        if (s) return false;
        s = 1;
        return true;
    };
    mark(start);
    auto ab = [&](int c) { return c == a || c == b; };
    for (size_t i = 0; i < comp.size(); ++i) {
        TotalElement x = comp[i];
        std::vector<TotalElement> nb;
        if (x.is_vertex()) {
            for (const auto& in : g.incident(x.id)) nb.push_back(TotalElement::edge(in.edge));
            for (VertexId w : g.neighbors(x.id)) nb.push_back(TotalElement::vertex(w));
        } else {
            auto [u, v] = g.ends(x.id);
            for (VertexId t : {u, v}) {
                if (scope == SwapScope::Component) nb.push_back(TotalElement::vertex(t));
                for (const auto& in : g.incident(t))
                    if (in.edge != x.id) nb.push_back(TotalElement::edge(in.edge));
            }
        }
        for (TotalElement y : nb)
            if (ab(tc.of(y)) && mark(y)) comp.push_back(y);
    }
    for (TotalElement x : comp) flip(x);
    return static_cast<int>(comp.size());
}

std::string to_json(const Graph& g, const TotalColoring& tc) {
    nlohmann::json j;
    j["k"] = tc.k;
    j["vertex_colors"] = nlohmann::json::object();
    for (VertexId v : g.vertices())
        if (int c = tc.of_vertex(v)) j["vertex_colors"][std::to_string(v + 1)] = c;
    j["edge_colors"] = nlohmann::json::array();
    for (EdgeId e : g.edges())
        if (int c = tc.of_edge(e)) {
            auto [u, v] = g.ends(e);
            j["edge_colors"].push_back({u + 1, v + 1, c});
        }
    return j.dump();
}

TotalColoring coloring_from_json(const Graph& g, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ColoringError(std::string("bad coloring json: ") + e.what());
    }
    if (!j.contains("k") || !j["k"].is_number_integer()) throw ColoringError("coloring json needs an integer k");
    TotalColoring tc(g, j["k"].get<int>());
    if (j.contains("vertex_colors"))
        for (auto& [key, c] : j["vertex_colors"].items()) {
            int v = std::stoi(key) - 1;
            if (!g.has_vertex(v)) throw ColoringError("no vertex " + key);
            tc.set_vertex(v, c.get<int>());
        }
    if (j.contains("edge_colors"))
        for (const auto& t : j["edge_colors"]) {
            if (!t.is_array() || t.size() != 3) throw ColoringError("edge color entries are [u, v, c]");
            int u = t[0].get<int>() - 1, v = t[1].get<int>() - 1;
            EdgeId e = (g.has_vertex(u) && g.has_vertex(v)) ? g.find_edge(u, v) : -1;
            if (e < 0) throw ColoringError("no edge " + t[0].dump() + " " + t[1].dump());
            tc.set_edge(e, t[2].get<int>());
        }
    return tc;
}

}  // namespace tcol
