#include "tcol/generators.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "tcol/minor.hpp"
#include "tcol/planar.hpp"

namespace tcol {

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n) {
    if (n < 3) throw GraphError("cycle needs at least 3 vertices");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

Graph star_graph(int leaves) {
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

Graph petersen_graph() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

Graph icosahedron_graph() {
    // top 0, upper ring 1..5, lower ring 6..10, bottom 11
    Graph g(12);
    for (int i = 0; i < 5; ++i) {
        int a = 1 + i, b = 1 + (i + 1) % 5;
        int c = 6 + i, d = 6 + (i + 1) % 5;
        g.add_edge(0, a);
        g.add_edge(a, b);
        g.add_edge(a, c);
        g.add_edge(b, c);
        g.add_edge(c, d);
        g.add_edge(11, c);
    }
    return g;
}

Graph octahedron_graph() {
    Graph g(6);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (j != i + 3) g.add_edge(i, j);
    return g;
}

std::uint64_t SplitRng::next() {
    std::uint64_t z = key_ + 0x9E3779B97F4A7C15ULL * (++counter_) + 0xD1B54A32D192ED03ULL * stream_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitRng::below(std::uint64_t n) {
    if (n == 0) throw GraphError("SplitRng::below(0)");
    return next() % n;
}

int SplitRng::between(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

double SplitRng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

SplitRng SplitRng::split(std::uint64_t tag) const {
    SplitRng r(key_ ^ (0xA24BAED4963EE407ULL * (tag + 1)), stream_ * 31 + tag + 1);
    return r;
}

Graph named_graph(const std::string& name) {
    auto num = [&](size_t from) {
        if (from >= name.size()) throw GraphError("bad graph name " + name);
        for (size_t i = from; i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) throw GraphError("bad graph name " + name);
        return std::stoi(name.substr(from));
    };
    if (name == "petersen") return petersen_graph();
    if (name == "icosahedron") return icosahedron_graph();
    if (name == "octahedron") return octahedron_graph();
    if (name == "wagner") return wagner_graph();
    if (name.rfind("star", 0) == 0) return star_graph(num(4));
    if (name.size() > 1 && name[0] == 'k') {
        auto us = name.find('_');
        if (us != std::string::npos) {
            return complete_bipartite(std::stoi(name.substr(1, us - 1)), num(us + 1));
        }
        return complete_graph(num(1));
    }
    if (name.size() > 1 && name[0] == 'c') return cycle_graph(num(1));
    if (name.size() > 1 && name[0] == 'p') return path_graph(num(1));
    throw GraphError("unknown graph name " + name);
}

namespace {

Graph stacked(int n, SplitRng& rng, int degree_cap) {
    if (n < 3) throw GraphError("triangulation needs n >= 3");
    if (n == 3) return complete_graph(3);
    Graph g = complete_graph(4);
    std::vector<std::array<int, 3>> faces{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    while (g.num_vertices() < n) {
        std::vector<int> ok;
        for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
            auto& f = faces[i];
            if (degree_cap <= 0 ||
                (g.degree(f[0]) < degree_cap && g.degree(f[1]) < degree_cap && g.degree(f[2]) < degree_cap))
                ok.push_back(i);
        }
        if (ok.empty()) break;
        int fi = ok[rng.below(ok.size())];
        auto f = faces[fi];
        VertexId x = g.add_vertex();
        for (int c : f) g.add_edge(x, c);
        faces[fi] = {f[0], f[1], x};
        faces.push_back({f[0], f[2], x});
        faces.push_back({f[1], f[2], x});
    }
    return g;
}

// A random clique of size k (1..3) in g, preferring low-degree vertices.
std::vector<VertexId> pick_clique(const Graph& g, int k, SplitRng& rng) {
    std::vector<VertexId> best;
    int best_score = 1 << 30;
    auto vs = g.vertices();
    for (int attempt = 0; attempt < 12; ++attempt) {
        std::vector<VertexId> c;
        VertexId a = vs[rng.below(vs.size())];
        c.push_back(a);
        if (k >= 2) {
            auto nb = g.neighbors(a);
            if (nb.empty()) continue;
            VertexId b = nb[rng.below(nb.size())];
            c.push_back(b);
            if (k == 3) {
                std::vector<VertexId> common;
                for (VertexId w : nb)
                    if (w != b && g.adjacent(w, b)) common.push_back(w);
                if (common.empty()) continue;
                c.push_back(common[rng.below(common.size())]);
            }
        }
        int score = 0;
        for (VertexId v : c) score = std::max(score, g.degree(v));
        if (score < best_score) {
            best_score = score;
            best = c;
        }
    }
    return best;
}

}  // namespace

Graph planar_triangulation(int n, SplitRng& rng) { return stacked(n, rng, 0); }

Graph stellate(const Graph& g, double fraction, SplitRng& rng) {
    auto emb = test_planarity(g);
    if (!emb) throw GraphError("stellate: graph is not planar");
    Graph out = g;
    for (const Face& f : emb->faces()) {
        if (f.degree() != 3 || rng.unit() >= fraction) continue;
        VertexId c = out.add_vertex();
        for (VertexId v : f.walk) out.add_edge(c, v);
    }
    return out;
}

Graph k5_minor_free_sum(const CliqueSumSpec& spec, SplitRng& rng) {
    if (spec.parts < 1 || spec.min_part < 3 || spec.max_part < spec.min_part)
        throw GraphError("invalid clique-sum spec");
    int cap = spec.target_max_degree > 0 ? std::max(4, spec.target_max_degree - 3) : 0;
    auto make_part = [&](bool& wagner) {
        wagner = rng.unit() < spec.wagner_probability;
        if (wagner) return wagner_graph();
        return stacked(rng.between(spec.min_part, spec.max_part), rng, cap);
    };
    bool w0 = false;
    Graph g = compact(make_part(w0));
    for (int p = 1; p < spec.parts; ++p) {
        bool wagner = false;
        Graph part = make_part(wagner);
        int k = rng.between(1, wagner ? 2 : 3);
        std::vector<VertexId> c1 = pick_clique(g, k, rng);
        if (static_cast<int>(c1.size()) != k) {
            k = static_cast<int>(c1.size()) ? static_cast<int>(c1.size()) : 1;
            if (c1.empty()) c1 = pick_clique(g, 1, rng);
        }
        std::vector<VertexId> c2 = pick_clique(part, k, rng);
        if (c2.size() != c1.size()) continue;
        std::vector<int> drop;
        int pairs = k * (k - 1) / 2;
        for (int i = 0; i < pairs; ++i)
            if (rng.unit() < 0.25) drop.push_back(i);
        g = compact(k_sum(g, part, c1, c2, drop).graph);
    }
    if (spec.target_max_degree > 0) {
        int target = spec.target_max_degree;
        // trim
        while (g.max_degree() > target) {
            VertexId hi = -1;
            for (VertexId v : g.vertices())
                if (hi < 0 || g.degree(v) > g.degree(hi)) hi = v;
            EdgeId cut = -1;
            int cut_deg = 0;
            for (const auto& i : g.incident(hi))
                if (g.degree(i.to) > cut_deg) {
                    cut_deg = g.degree(i.to);
                    cut = i.edge;
                }
            g.delete_edge(cut);
        }
        // inflate one vertex with a fan gadget
        if (g.max_degree() < target) {
            VertexId hi = g.vertices().front();
            for (VertexId v : g.vertices())
                if (g.degree(v) > g.degree(hi)) hi = v;
            VertexId prev = -1;
            while (g.degree(hi) < target) {
                VertexId x = g.add_vertex();
                g.add_edge(hi, x);
                if (prev >= 0) g.add_edge(prev, x);
                prev = x;
            }
        }
        g = compact(g);
    }
    // the trimming can disconnect; keep the largest component
    auto comps = components(g);
    if (comps.size() > 1) {
        auto big = std::max_element(comps.begin(), comps.end(),
                                    [](const auto& a, const auto& b) { return a.size() < b.size(); });
        g = compact(induced_subgraph(g, *big));
    }
    return g;
}

Graph generate(const GenSpec& spec) {
    SplitRng rng(spec.seed);
    if (auto* n = std::get_if<NamedSpec>(&spec.kind)) return named_graph(n->name);
    if (auto* t = std::get_if<TriangulationSpec>(&spec.kind)) return planar_triangulation(t->n, rng);
    return k5_minor_free_sum(std::get<CliqueSumSpec>(spec.kind), rng);
}

}  // namespace tcol
