#include "tcol/pipeline.hpp"

#include <algorithm>

#include "tcol/decomp.hpp"
#include "tcol/planar.hpp"

namespace tcol {

TotalColoring reduction_coloring(const Graph& g, ReduceMode mode, int k, PipelineStats* stats, bool verify_levels) {
    const bool tcc = mode == ReduceMode::TCC7;
    const int threshold = tcc ? nice_threshold_tcc7() : nice_threshold_delta1();
    if (k < g.max_degree() + 1 || k < (tcc ? 9 : 11))
        throw PreconditionError("k = " + std::to_string(k) + " is too small for this mode");
    std::vector<std::pair<Graph, ExtensionInstance>> levels;
    Graph cur = g;
    while (cur.num_vertices() > 0) {
        ExtensionInstance inst = plan_extension(cur, find_reducible(cur, mode));
        Graph next = reduced_graph(cur, inst);
        if (stats) {
            ++stats->sources[inst.source];
            ++stats->procedures[to_string(inst.procedure)];
        }
        levels.emplace_back(std::move(cur), std::move(inst));
        cur = std::move(next);
    }
    if (stats) stats->levels = static_cast<int>(levels.size());
    TotalColoring psi(cur, k);
    while (!levels.empty()) {
        auto& [lg, inst] = levels.back();
        psi = extend(lg, inst, psi, threshold);
        complete_nice(lg, psi);
        if (verify_levels)
            if (auto c = verify(lg, psi)) throw ColoringError("level " + inst.source + ": " + describe(lg, *c));
        levels.pop_back();
    }
    return psi;
}

namespace {

void check_k5_minor_free(const Graph& g) {
    for (const auto& comp : components(g)) {
        Graph h = induced_subgraph(g, comp);
        if (is_planar(h)) continue;
        std::vector<VertexId> old;
        Graph c = compact(h, &old);
        try {
            decompose(c);
        } catch (NotK5MinorFree& e) {
            if (e.witness)
                for (auto& set : e.witness->branch_sets)
                    for (auto& v : set) v = old[v];
            throw NotK5MinorFree(e.what(), e.witness);
        }
    }
}

// Smallest available color in a fixed order, adding colors when stuck.
TotalColoring greedy(const Graph& g, int k) {
    std::vector<TotalElement> order;
    for (EdgeId e : g.edges()) order.push_back(TotalElement::edge(e));
    auto weight = [&](TotalElement x) {
        auto [u, v] = g.ends(x.id);
        return g.degree(u) + g.degree(v);
    };
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return weight(a) > weight(b); });
    for (VertexId v : g.vertices()) order.push_back(TotalElement::vertex(v));
    for (;; ++k) {
        TotalColoring tc(g, k);
        bool ok = true;
        for (TotalElement x : order) {
            ColorSet s = available(g, tc, x);
            if (s.none()) {
                ok = false;
                break;
            }
            tc.set(x, static_cast<int>(s._Find_first()));
        }
        if (ok) return tc;
    }
}

}  // namespace

ColorResult color_k5_minor_free(const Graph& g, const ColorOptions& options) {
    if (options.check_minor) check_k5_minor_free(g);
    ColorResult res;
    int d = res.max_degree = g.max_degree();
    if (d >= 10) {
        res.coloring = reduction_coloring(g, ReduceMode::Delta1, d + 1, &res.stats, options.verify_levels);
        res.bound = d + 1, res.method = "delta1", res.guaranteed = true;
    } else if (d >= 7) {
        res.coloring = reduction_coloring(g, ReduceMode::TCC7, d + 2, &res.stats, options.verify_levels);
        res.bound = d + 2, res.method = "tcc7", res.guaranteed = true;
    } else if (g.num_vertices() + g.num_edges() <= options.exact_budget) {
        auto chi = exact_chi_total(g, options.exact_budget);
        res.coloring = std::move(chi.witness);
        res.bound = chi.chi, res.method = "exact", res.guaranteed = true;
    } else {
        res.coloring = greedy(g, d + 2);
        res.method = "greedy";
    }
    if (auto c = verify(g, res.coloring)) throw ColoringError("pipeline produced a conflict: " + describe(g, *c));
    if (!is_complete(g, res.coloring)) throw ColoringError("pipeline left elements uncolored");
    return res;
}

Suppression suppress_two_vertices(const Graph& g) {
    Suppression s;
    s.graph = g;
    for (VertexId v : g.vertices()) {
        int twos = 0;
        for (VertexId w : g.neighbors(v)) twos += g.degree(w) == 2;
        if (twos >= 2) throw PreconditionError("v" + std::to_string(v + 1) + " has two 2-neighbours");
        if (twos == 1 && g.degree(v) == 2) throw PreconditionError("adjacent 2-vertices");
        if (g.degree(v) == 2) s.removed.push_back(v);
    }
    for (VertexId v : s.removed) {
        auto nb = g.neighbors(v);
        s.graph.delete_vertex(v);
        if (!g.adjacent(nb[0], nb[1])) s.added[v] = s.graph.add_edge(nb[0], nb[1]).first;
    }
    return s;
}

}  // namespace tcol
