#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "json.hpp"
#include "support/extension_fuzz.hpp"

#include "tcol/discharging.hpp"
#include "tcol/generators.hpp"
#include "tcol/pipeline.hpp"

using namespace tcol;

namespace {

std::vector<TotalElement> elements(const Graph& g) {
    std::vector<TotalElement> out;
    for (VertexId v : g.vertices()) out.push_back(TotalElement::vertex(v));
    for (EdgeId e : g.edges()) out.push_back(TotalElement::edge(e));
    return out;
}

// Pairwise check straight from the definition.
bool proper(const Graph& g, const TotalColoring& tc) {
    auto el = elements(g);
    for (size_t i = 0; i < el.size(); ++i) {
        int c = tc.of(el[i]);
        if (c < 1 || c > tc.k) return false;
        for (size_t j = i + 1; j < el.size(); ++j)
            if (conflicting(g, el[i], el[j]) && c == tc.of(el[j])) return false;
    }
    return true;
}

// Plain backtracking in element order, no symmetry breaking.
bool colorable(const Graph& g, int k) {
    auto el = elements(g);
    TotalColoring tc(g, k);
    std::function<bool(size_t)> go = [&](size_t i) {
        if (i == el.size()) return true;
        for (int c = 1; c <= k; ++c) {
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j) ok = !(conflicting(g, el[i], el[j]) && tc.of(el[j]) == c);
            if (!ok) continue;
            tc.set(el[i], c);
            if (go(i + 1)) return true;
        }
        tc.set(el[i], 0);
        return false;
    };
    return go(0);
}

TotalColoring with_edges(const Graph& g, int k, std::initializer_list<std::tuple<int, int, int>> es) {
    TotalColoring tc(g, k);
    for (auto [u, v, c] : es) tc.set_edge(g.find_edge(u, v), c);
    return tc;
}

}  // namespace

TEST_CASE("verify: triangle with opposite colors") {
    Graph g = complete_graph(3);
    TotalColoring tc(g, 3);
    for (int v = 0; v < 3; ++v) tc.set_vertex(v, v + 1);
    // uv takes the color of the third vertex
    tc.set_edge(g.find_edge(0, 1), 3), tc.set_edge(g.find_edge(1, 2), 1), tc.set_edge(g.find_edge(0, 2), 2);
    CHECK_FALSE(verify(g, tc).has_value());
    CHECK(proper(g, tc));
    tc.set_vertex(1, 1);
    auto c = verify(g, tc);
    REQUIRE(c.has_value());
    CHECK(c->color == 1);
    tc.set_vertex(1, 4);
    CHECK_THROWS_AS(verify(g, tc), ColoringError);
    CHECK_FALSE(verify(Graph(), TotalColoring(Graph(), 0)).has_value());
}

TEST_CASE("exact oracle on small graphs") {
    CHECK(exact_chi_total(complete_graph(2)).chi == 3);
    CHECK(exact_chi_total(star_graph(5)).chi == 6);
    CHECK(exact_chi_total(complete_graph(4)).chi == 5);
    for (const char* name : {"c3", "c4", "c5", "c6", "p4", "k1_3", "k4"}) {
        Graph g = named_graph(name);
        auto r = exact_chi_total(g);
        INFO(name);
        CHECK(proper(g, r.witness));
        CHECK(colorable(g, r.chi));
        CHECK_FALSE(colorable(g, r.chi - 1));
    }
    CHECK_THROWS_AS(exact_chi_total(complete_graph(9)), BudgetExceeded);
}

TEST_CASE("complete_nice colors low vertices") {
    Graph star = star_graph(12);
    TotalColoring tc(star, 13);
    for (int i = 0; i < 12; ++i) tc.set_edge(star.find_edge(0, i + 1), i + 1);
    tc.set_vertex(0, 13);
    CHECK(is_nice(star, tc, nice_threshold_delta1()));
    complete_nice(star, tc);
    CHECK(is_complete(star, tc));
    CHECK(proper(star, tc));

    Graph c5 = cycle_graph(5);
    TotalColoring t5 = with_edges(c5, 9, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {3, 4, 2}, {4, 0, 3}});
    complete_nice(c5, t5);
    CHECK(proper(c5, t5));

    TotalColoring full = exact_chi_total(complete_graph(4)).witness;
    TotalColoring same = full;
    complete_nice(complete_graph(4), same);
    CHECK(same.vertex == full.vertex);
}

TEST_CASE("kempe swaps") {
    Graph p4 = path_graph(4);
    auto tc = with_edges(p4, 3, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}});
    auto before = tc;
    CHECK(kempe_swap(p4, tc, 1, 2, TotalElement::edge(p4.find_edge(0, 1)), SwapScope::EdgePath) == 3);
    CHECK(tc.of_edge(p4.find_edge(0, 1)) == 2);
    CHECK(tc.of_edge(p4.find_edge(1, 2)) == 1);
    CHECK(tc.of_edge(p4.find_edge(2, 3)) == 2);
    kempe_swap(p4, tc, 1, 2, TotalElement::edge(p4.find_edge(0, 1)), SwapScope::EdgePath);
    CHECK(tc.edge == before.edge);

    Graph c6 = cycle_graph(6);
    TotalColoring tc6(c6, 3);
    for (EdgeId e : c6.edges()) tc6.set_edge(e, e % 2 ? 2 : 1);
    CHECK(kempe_swap(c6, tc6, 1, 2, TotalElement::edge(0), SwapScope::EdgePath) == 6);
    for (EdgeId e : c6.edges()) CHECK(tc6.of_edge(e) == (e % 2 ? 1 : 2));

    Graph k2 = complete_graph(2);
    auto t2 = with_edges(k2, 2, {{0, 1, 1}});
    CHECK(kempe_swap(k2, t2, 1, 2, TotalElement::edge(0), SwapScope::EdgePath) == 1);
    CHECK(t2.of_edge(0) == 2);
    TotalColoring blank(k2, 2);
    CHECK_THROWS_AS(kempe_swap(k2, blank, 1, 2, TotalElement::edge(0), SwapScope::Element), ColoringError);

    // component swaps keep a proper coloring proper and undo themselves
    Graph g = icosahedron_graph();
    SplitRng rng(4);
    auto full = fuzz::random_total_coloring(g, 7, rng);
    REQUIRE(full.has_value());
    for (int i = 0; i < 50; ++i) {
        auto el = elements(g);
        TotalElement x = el[rng.below(el.size())];
        int a = full->of(x), b = 1 + (a % 7);
        auto copy = *full;
        kempe_swap(g, *full, a, b, x, SwapScope::Component);
        CHECK(proper(g, *full));
        kempe_swap(g, *full, a, b, x, SwapScope::Component);
        CHECK(full->edge == copy.edge);
        CHECK(full->vertex == copy.vertex);
    }
}

TEST_CASE("E5 follows the stated pattern") {
    SplitRng rng(21);
    std::optional<fuzz::State> s;
    while (!s) s = fuzz::make_state(Procedure::E5, rng);
    Graph r = reduced_graph(s->g, s->inst);
    VertexId u = s->inst["u"], v = s->inst["v"], x = s->inst["x"], y = s->inst["y"], z = s->inst["z"];
    auto col = [&](const Graph& h, const TotalColoring& tc, VertexId a, VertexId b) { return tc.of_edge(h.find_edge(a, b)); };
    int cxy = col(r, s->psi, x, y), cyz = col(r, s->psi, y, z), czx = col(r, s->psi, z, x);
    auto out = extend_E5(s->g, s->inst, s->psi, 6);
    CHECK(col(s->g, out, u, x) == cxy);
    CHECK(col(s->g, out, v, y) == cxy);
    CHECK(col(s->g, out, u, y) == cyz);
    CHECK(col(s->g, out, v, z) == cyz);
    CHECK(col(s->g, out, u, z) == czx);
    CHECK(col(s->g, out, v, x) == czx);

    // a color permutation of psi permutes the output
    std::vector<int> perm(s->psi.k + 1);
    for (int c = 1; c <= s->psi.k; ++c) perm[c] = s->psi.k + 1 - c;
    auto q = s->psi;
    for (auto& c : q.vertex) c = c ? perm[c] : 0;
    for (auto& c : q.edge) c = c ? perm[c] : 0;
    auto out2 = extend_E5(s->g, s->inst, q, 6);
    for (EdgeId e : s->g.edges()) CHECK(out2.of_edge(e) == perm[out.of_edge(e)]);
}

TEST_CASE("E6 list coloring of K3,3") {
    // x, y, z carry pendant edges that use up the colors outside their lists
    for (int mx = 0; mx < 5; ++mx)
        for (int my = 0; my < 5; ++my)
            for (int mz = 0; mz < 5; ++mz) {
                Graph g(6);
                // u v w = 0 1 2, x y z = 3 4 5
                for (int s = 0; s < 3; ++s)
                    for (int t = 3; t < 6; ++t) g.add_edge(s, t);
                TotalColoring tc(g, 4);
                int drop[3] = {mx, my, mz};
                for (int t = 0; t < 3; ++t)
                    if (drop[t] > 0) {
                        VertexId p = g.add_vertex();
                        tc.set_edge(g.add_edge(3 + t, p).first, drop[t]);
                    }
                auto inst = make_instance(g, Procedure::E6, {{"u", 0}, {"v", 1}, {"w", 2}, {"x", 3}, {"y", 4}, {"z", 5}});
                Graph r = reduced_graph(g, inst);
                TotalColoring psi(r, 4);
                for (EdgeId e : r.edges()) psi.set_edge(e, tc.of_edge(e));
                auto out = extend_E6(g, inst, psi, 6);
                for (EdgeId e : g.edges()) CHECK(out.of_edge(e) != 0);
                CHECK_FALSE(verify(g, out).has_value());
            }
    // a list of two colors is refused
    Graph g(6);
    for (int s = 0; s < 3; ++s)
        for (int t = 3; t < 6; ++t) g.add_edge(s, t);
    VertexId p = g.add_vertex(), q = g.add_vertex();
    g.add_edge(3, p), g.add_edge(3, q);
    auto inst = make_instance(g, Procedure::E6, {{"u", 0}, {"v", 1}, {"w", 2}, {"x", 3}, {"y", 4}, {"z", 5}});
    Graph r = reduced_graph(g, inst);
    TotalColoring psi(r, 4);
    psi.set_edge(r.find_edge(3, p), 1), psi.set_edge(r.find_edge(3, q), 2);
    CHECK_THROWS_AS(extend_E6(g, inst, psi, 6), PreconditionError);
}

TEST_CASE("D4 with xz != b swaps xz and wz") {
    // hand-built state: x misses only a, wz = a, xz = c != b
    SplitRng rng(3);
    BranchLog log;
    BranchLog* outer = set_branch_log(&log);
    int hit = 0;
    for (std::uint64_t t = 0; t < 400 && !hit; ++t) {
        SplitRng r = rng.split(t);
        auto s = fuzz::make_state(Procedure::D4, r);
        if (!s) continue;
        fuzz::steer(*s, r, 60);
        log.hits.clear();
        auto out = extend_D4(s->g, s->inst, s->psi, 6);
        complete_nice(s->g, out);
        CHECK(proper(s->g, out));
        if (log.hits.count("D4 xz != b")) {
            ++hit;
            VertexId x = s->inst["x"], z = s->inst["z"], w = s->inst["w"];
            Graph red = reduced_graph(s->g, s->inst);
            auto lifted = lift(s->g, red, s->psi, 6);
            int a = lifted.of_edge(s->g.find_edge(s->inst["u"], s->inst["u1"]));
            CHECK(out.of_edge(s->g.find_edge(x, z)) == a);
            CHECK(out.of_edge(s->g.find_edge(w, z)) == lifted.of_edge(s->g.find_edge(x, z)));
        }
    }
    set_branch_log(outer);
    CHECK(hit == 1);
}

TEST_CASE("fuzzed extensions end proper") {
    for (Procedure p : {Procedure::E5, Procedure::E6, Procedure::D4, Procedure::D5, Procedure::E7, Procedure::E8Case1}) {
        SplitRng rng(100 + static_cast<int>(p));
        int done = 0;
        std::optional<fuzz::State> host;
        for (std::uint64_t t = 0; done < 60 && t < 2000; ++t) {
            SplitRng r = rng.split(t);
            if (!host || done % 6 == 0) host = fuzz::make_state(p, r);
            if (!host) continue;
            fuzz::mix(*host, r, 10);
            fuzz::steer(*host, r, 10);
            ++done;
            INFO(fuzz::config_of(p) << " run " << done);
            TotalColoring out;
            REQUIRE_NOTHROW(out = extend(host->g, host->inst, host->psi, 6));
            CHECK(is_nice(host->g, out, 6));
            complete_nice(host->g, out);
            CHECK(proper(host->g, out));
        }
        CHECK(done == 60);
    }
}

TEST_CASE("generic extension: small vertex, light edge, D1") {
    SplitRng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        SplitRng r = rng.split(trial);
        Graph g = k5_minor_free_sum({r.between(3, 8), 4, 12, 0.2, 12}, r);
        int k = g.max_degree() + 1;
        // a pendant vertex hung on a vertex below maximum degree
        VertexId host = -1;
        for (VertexId v : g.vertices())
            if (g.degree(v) < k - 1) host = v;
        REQUIRE(host >= 0);
        VertexId leaf = g.add_vertex();
        g.add_edge(host, leaf);
        auto inst = plan_extension(g, SmallVertex{leaf, 1});
        Graph red = reduced_graph(g, inst);
        auto psi = reduction_coloring(red, ReduceMode::Delta1, std::max(k, 11));
        GenericStats st;
        auto out = generic_extend(g, inst, psi, 6, {}, &st);
        complete_nice(g, out);
        CHECK(proper(g, out));
        CHECK(st.kempe_swaps == 0);  // a free color always exists
        CHECK_FALSE(st.used_local);
    }
    // D1 shows up in the contexts that survive the light-edge rules
    int d1 = 0;
    for (int trial = 0; trial < 400 && d1 < 10; ++trial) {
        SplitRng r = rng.split(1000 + trial);
        auto ctx = random_context(ChargeSystem::Deg10, 30, r);
        if (!ctx) continue;
        Graph g = ctx->graph();
        int k = std::max(11, g.max_degree() + 1);
        // walk down the reduction chain to the first D1
        ReducibleInstance ri;
        for (;;) {
            if (g.num_vertices() == 0) break;
            ri = find_reducible(g, ReduceMode::Delta1);
            auto* m = std::get_if<ConfigMatch>(&ri);
            if (m && m->name == "D1") break;
            g = reduced_graph(g, plan_extension(g, ri));
        }
        if (g.num_vertices() == 0) continue;
        ++d1;
        auto inst = plan_extension(g, ri);
        auto psi = reduction_coloring(reduced_graph(g, inst), ReduceMode::Delta1, k);
        auto out = generic_extend(g, inst, psi, 6);
        complete_nice(g, out);
        CHECK(proper(g, out));
    }
    CHECK(d1 > 0);
}

TEST_CASE("pipeline bounds") {
    SplitRng rng(12);
    Graph g = k5_minor_free_sum({12, 4, 12, 0.3, 12}, rng);
    REQUIRE(g.max_degree() == 12);
    auto res = color_k5_minor_free(g);
    CHECK(res.coloring.k <= 13);
    CHECK(res.method == "delta1");
    CHECK(proper(g, res.coloring));

    SplitRng r2(13);
    Graph t = planar_triangulation(60, r2);
    while (t.max_degree() > 8) {
        VertexId hi = t.vertices().front();
        for (VertexId v : t.vertices())
            if (t.degree(v) > t.degree(hi)) hi = v;
        t.delete_edge(t.incident(hi).front().edge);
    }
    REQUIRE(t.max_degree() >= 7);
    {
        auto r = color_k5_minor_free(t);
        CHECK(r.coloring.k <= t.max_degree() + 2);
        CHECK(proper(t, r.coloring));
    }

    auto k4 = color_k5_minor_free(complete_graph(4));
    CHECK(k4.method == "exact");
    CHECK(k4.coloring.k == 5);

    try {
        color_k5_minor_free(complete_graph(5));
        FAIL("accepted K5");
    } catch (const GraphError& e) {
        CHECK(std::string(e.what()).size() > 0);
    }
}

TEST_CASE("two-vertex suppression") {
    // two degree-10 hubs joined by a 2-path with nonadjacent ends
    Graph g(2);
    for (VertexId h : {0, 1})
        for (int i = 0; i < 9; ++i) g.add_edge(h, g.add_vertex());
    VertexId mid = g.add_vertex();
    g.add_edge(0, mid), g.add_edge(mid, 1);
    // leaves are 1-vertices, so only mid has degree 2
    auto s = suppress_two_vertices(g);
    REQUIRE(s.removed == std::vector<VertexId>{mid});
    CHECK(s.graph.adjacent(0, 1));
    CHECK(s.graph.degree(0) == g.degree(0));

    // adjacent neighbours: both lose one
    Graph t = complete_graph(4);
    VertexId m = t.add_vertex();
    t.add_edge(0, m), t.add_edge(1, m);
    auto st = suppress_two_vertices(t);
    CHECK(st.added.empty());
    CHECK(st.graph.degree(0) == t.degree(0) - 1);
    CHECK(st.graph.degree(1) == t.degree(1) - 1);

    CHECK_THROWS_AS(suppress_two_vertices(cycle_graph(6)), PreconditionError);
}

TEST_CASE("coloring json") {
    Graph g = complete_graph(3);
    auto tc = exact_chi_total(g).witness;
    auto back = coloring_from_json(g, to_json(g, tc));
    CHECK(back.k == tc.k);
    for (VertexId v : g.vertices()) CHECK(back.of_vertex(v) == tc.of_vertex(v));
    for (EdgeId e : g.edges()) CHECK(back.of_edge(e) == tc.of_edge(e));
    auto j = nlohmann::json::parse(to_json(g, tc));
    CHECK(j["edge_colors"].size() == 3);
    CHECK(j["vertex_colors"].contains("1"));
    CHECK_THROWS_AS(coloring_from_json(g, R"({"k": 3, "edge_colors": [[1, 9, 2]]})"), ColoringError);
}
