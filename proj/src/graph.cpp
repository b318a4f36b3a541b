#include "tcol/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tcol {

Graph::Graph(int n) {
    for (int i = 0; i < n; ++i) add_vertex();
}

VertexId Graph::add_vertex() {
    adj_.emplace_back();
    valive_.push_back(1);
    ++n_alive_;
    return static_cast<VertexId>(adj_.size()) - 1;
}

void Graph::check_vertex(VertexId v) const {
    if (!has_vertex(v)) throw GraphError("invalid vertex id " + std::to_string(v));
}

void Graph::check_edge(EdgeId e) const {
    if (!has_edge(e)) throw GraphError("invalid edge id " + std::to_string(e));
}

bool Graph::has_vertex(VertexId v) const {
    return v >= 0 && v < vertex_capacity() && valive_[v];
}

bool Graph::has_edge(EdgeId e) const {
    return e >= 0 && e < edge_capacity() && ealive_[e];
}

std::pair<EdgeId, bool> Graph::add_edge(VertexId u, VertexId v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
    if (EdgeId e = find_edge(u, v); e >= 0) return {e, false};
    EdgeId e = edge_capacity();
    edges_.push_back({u, v});
    ealive_.push_back(1);
    adj_[u].push_back({v, e});
    adj_[v].push_back({u, e});
    ++m_alive_;
    return {e, true};
}

static void drop_incidence(std::vector<Incidence>& list, EdgeId e) {
    auto it = std::find_if(list.begin(), list.end(), [e](const Incidence& i) { return i.edge == e; });
    if (it != list.end()) list.erase(it);
}

void Graph::delete_edge(EdgeId e) {
    check_edge(e);
    auto [u, v] = edges_[e];
    drop_incidence(adj_[u], e);
    drop_incidence(adj_[v], e);
    ealive_[e] = 0;
    --m_alive_;
}

void Graph::delete_vertex(VertexId v) {
    check_vertex(v);
    while (!adj_[v].empty()) delete_edge(adj_[v].back().edge);
    valive_[v] = 0;
    --n_alive_;
}

EdgeId Graph::find_edge(VertexId u, VertexId v) const {
    if (!has_vertex(u) || !has_vertex(v)) return -1;
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    VertexId target = adj_[u].size() <= adj_[v].size() ? v : u;
    for (const auto& i : a)
        if (i.to == target) return i.edge;
    return -1;
}

int Graph::degree(VertexId v) const {
    check_vertex(v);
    return static_cast<int>(adj_[v].size());
}

const std::vector<Incidence>& Graph::incident(VertexId v) const {
    check_vertex(v);
    return adj_[v];
}

std::vector<VertexId> Graph::neighbors(VertexId v) const {
    check_vertex(v);
    std::vector<VertexId> out;
    out.reserve(adj_[v].size());
    for (const auto& i : adj_[v]) out.push_back(i.to);
    return out;
}

EdgeEnds Graph::ends(EdgeId e) const {
    check_edge(e);
    return edges_[e];
}

VertexId Graph::other(EdgeId e, VertexId v) const {
    auto [a, b] = ends(e);
    if (a == v) return b;
    if (b == v) return a;
    throw GraphError("vertex " + std::to_string(v) + " not on edge " + std::to_string(e));
}

std::vector<VertexId> Graph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(n_alive_);
    for (int v = 0; v < vertex_capacity(); ++v)
        if (valive_[v]) out.push_back(v);
    return out;
}

std::vector<EdgeId> Graph::edges() const {
    std::vector<EdgeId> out;
    out.reserve(m_alive_);
    for (int e = 0; e < edge_capacity(); ++e)
        if (ealive_[e]) out.push_back(e);
    return out;
}

int Graph::max_degree() const {
    int d = 0;
    for (int v = 0; v < vertex_capacity(); ++v)
        if (valive_[v]) d = std::max(d, static_cast<int>(adj_[v].size()));
    return d;
}

int Graph::min_degree() const {
    int d = -1;
    for (int v = 0; v < vertex_capacity(); ++v)
        if (valive_[v] && (d < 0 || static_cast<int>(adj_[v].size()) < d)) d = static_cast<int>(adj_[v].size());
    return std::max(d, 0);
}

int degree(const Graph& g, VertexId v) { return g.degree(v); }

void Graph::merge_vertex(VertexId x, VertexId y) {
    check_vertex(x);
    check_vertex(y);
    std::vector<Incidence> moving = adj_[y];
    for (const auto& inc : moving) {
        VertexId w = inc.to;
        if (w == x || find_edge(x, w) >= 0) {
            delete_edge(inc.edge);
            continue;
        }
        auto& ends = edges_[inc.edge];
        if (ends.u == y) ends.u = x; else ends.v = x;
        for (auto& i : adj_[w])
            if (i.edge == inc.edge) i.to = x;
        adj_[x].push_back({w, inc.edge});
        drop_incidence(adj_[y], inc.edge);
    }
    delete_vertex(y);
}

Graph identify(const Graph& g, VertexId x, VertexId y) {
    if (!g.has_vertex(x) || !g.has_vertex(y)) throw GraphError("identify: invalid vertex id");
    if (x == y) throw GraphError("identify: vertices must be distinct");
    if (g.adjacent(x, y)) throw GraphError("identify: vertices are adjacent; use contract_edge");
    Graph h = g;
    h.merge_vertex(x, y);
    return h;
}

Graph contract_edge(const Graph& g, EdgeId e) {
    auto [u, v] = g.ends(e);
    Graph h = g;
    h.delete_edge(e);
    h.merge_vertex(std::min(u, v), std::max(u, v));
    return h;
}

Graph induced_subgraph(const Graph& g, const std::vector<VertexId>& keep) {
    std::vector<char> in(g.vertex_capacity(), 0);
    for (VertexId v : keep) {
        if (!g.has_vertex(v)) throw GraphError("induced_subgraph: invalid vertex id " + std::to_string(v));
        in[v] = 1;
    }
    Graph h = g;
    for (VertexId v : g.vertices())
        if (!in[v]) h.delete_vertex(v);
    return h;
}

Graph compact(const Graph& g, std::vector<VertexId>* old_of_new) {
    std::vector<VertexId> vs = g.vertices();
    std::vector<int> idx(g.vertex_capacity(), -1);
    for (int i = 0; i < static_cast<int>(vs.size()); ++i) idx[vs[i]] = i;
    Graph h(static_cast<int>(vs.size()));
    for (EdgeId e : g.edges()) {
        auto [a, b] = g.ends(e);
        h.add_edge(idx[a], idx[b]);
    }
    if (old_of_new) *old_of_new = vs;
    return h;
}

std::vector<std::vector<VertexId>> components(const Graph& g) {
    std::vector<std::vector<VertexId>> out;
    std::vector<char> seen(g.vertex_capacity(), 0);
    for (VertexId s : g.vertices()) {
        if (seen[s]) continue;
        std::vector<VertexId> comp{s};
        seen[s] = 1;
        for (size_t i = 0; i < comp.size(); ++i)
            for (const auto& inc : g.incident(comp[i]))
                if (!seen[inc.to]) {
                    seen[inc.to] = 1;
                    comp.push_back(inc.to);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_connected(const Graph& g) { return components(g).size() <= 1; }

bool conflicting(const Graph& g, TotalElement a, TotalElement b) {
    if (a == b) return false;
    if (a.is_vertex() && b.is_vertex()) return g.adjacent(a.id, b.id);
    if (!a.is_vertex() && !b.is_vertex()) {
        auto [p, q] = g.ends(a.id);
        auto [r, s] = g.ends(b.id);
        return p == r || p == s || q == r || q == s;
    }
    if (!a.is_vertex()) std::swap(a, b);
    auto [p, q] = g.ends(b.id);
    return a.id == p || a.id == q;
}

Graph read_tgf(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_header = false;
    int n = 0, m = 0;
    Graph g;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        auto fail = [&](const std::string& msg) {
            throw GraphError("line " + std::to_string(lineno) + ": " + msg);
        };
        if (tag == "p") {
            std::string fmt;
            if (have_header) fail("duplicate header");
            if (!(ls >> fmt >> n >> m) || fmt != "tgf" || n < 0 || m < 0) fail("bad header");
            g = Graph(n);
            have_header = true;
        } else if (tag == "e") {
            int u, v;
            if (!have_header) fail("edge before header");
            if (!(ls >> u >> v)) fail("bad edge line");
            if (u < 1 || u > n || v < 1 || v > n) fail("vertex label out of range");
            if (u == v) fail("loop");
            if (!g.add_edge(u - 1, v - 1).second) fail("parallel edge");
        } else {
            fail("unknown line type '" + tag + "'");
        }
    }
    if (!have_header) throw GraphError("missing 'p tgf' header");
    if (g.num_edges() != m) throw GraphError("header edge count does not match edge lines");
    return g;
}

Graph read_tgf_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw GraphError("cannot open " + path);
    return read_tgf(f);
}

void write_tgf(std::ostream& out, const Graph& g) {
    std::vector<int> label(g.vertex_capacity(), 0);
    int next = 1;
    for (VertexId v : g.vertices()) label[v] = next++;
    out << "p tgf " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.ends(e);
        out << "e " << label[u] << ' ' << label[v] << '\n';
    }
}

std::string to_tgf(const Graph& g) {
    std::ostringstream s;
    write_tgf(s, g);
    return s.str();
}

}  // namespace tcol
