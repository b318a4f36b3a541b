#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "tcol/generators.hpp"
#include "tcol/minor.hpp"
#include "tcol/planar.hpp"

using namespace tcol;

namespace {

// Independent oracle: assign each vertex to one of k branch sets or to none,
// then check the model. Only for tiny graphs.
bool brute_minor(const Graph& g, MinorTarget t) {
    int k = t == MinorTarget::K5 ? 5 : 6;
    auto vs = g.vertices();
    std::vector<int> label(vs.size(), -1);
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == vs.size()) {
            std::vector<std::vector<VertexId>> sets(k);
            for (size_t j = 0; j < vs.size(); ++j)
                if (label[j] >= 0) sets[label[j]].push_back(vs[j]);
            if (t == MinorTarget::K5) return check_model(g, {t, sets}).empty();
            // labels are only canonical up to renaming; try every side split
            for (int a = 0; a < 6; ++a)
                for (int b = a + 1; b < 6; ++b)
                    for (int c = b + 1; c < 6; ++c) {
                        std::vector<std::vector<VertexId>> order{sets[a], sets[b], sets[c]};
                        for (int r = 0; r < 6; ++r)
                            if (r != a && r != b && r != c) order.push_back(sets[r]);
                        if (check_model(g, {t, order}).empty()) return true;
                    }
            return false;
        }
        // symmetry: a new set may only open as the next unused index
        int used = -1;
        for (size_t j = 0; j < i; ++j) used = std::max(used, label[j]);
        for (int l = -1; l <= std::min(used + 1, k - 1); ++l) {
            label[i] = l;
            if (rec(i + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

}  // namespace

TEST_CASE("wagner graph") {
    Graph w = wagner_graph();
    CHECK(w.num_vertices() == 8);
    CHECK(w.num_edges() == 12);
    for (VertexId v : w.vertices()) CHECK(w.degree(v) == 3);
    for (EdgeId e : w.edges()) {
        auto [a, b] = w.ends(e);
        for (VertexId c : w.neighbors(a)) CHECK_FALSE(w.adjacent(b, c));
    }
    CHECK_FALSE(is_planar(w));
    CHECK(is_wagner(w));
    CHECK_FALSE(is_wagner(complete_bipartite(4, 4)));
}

TEST_CASE("has_minor on named graphs") {
    auto pk5 = has_minor(petersen_graph(), MinorTarget::K5);
    REQUIRE(pk5);
    CHECK(check_model(petersen_graph(), *pk5).empty());
    CHECK_FALSE(has_minor(wagner_graph(), MinorTarget::K5));
    CHECK(has_minor(wagner_graph(), MinorTarget::K33));
    CHECK_FALSE(has_minor(icosahedron_graph(), MinorTarget::K5));
    CHECK(has_minor(complete_graph(5), MinorTarget::K5));
    CHECK_FALSE(has_minor(complete_graph(5), MinorTarget::K33));
    auto k33 = has_minor(complete_bipartite(3, 3), MinorTarget::K33);
    REQUIRE(k33);
    CHECK(check_model(complete_bipartite(3, 3), *k33).empty());
    CHECK(has_minor(complete_graph(6), MinorTarget::K33));
}

TEST_CASE("has_minor matches brute force on tiny graphs") {
    SplitRng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        int n = rng.between(5, 7);
        Graph g(n);
        int m = rng.between(8, n * (n - 1) / 2);
        for (int i = 0; i < m; ++i) {
            int u = rng.between(0, n - 1), v = rng.between(0, n - 1);
            if (u != v) g.add_edge(u, v);
        }
        for (MinorTarget t : {MinorTarget::K5, MinorTarget::K33}) {
            auto model = has_minor(g, t);
            CHECK(model.has_value() == brute_minor(g, t));
            if (model) CHECK(check_model(g, *model).empty());
        }
    }
}

TEST_CASE("planar iff no K5 and no K33 minor") {
    SplitRng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        int n = rng.between(5, 12);
        Graph g(n);
        int m = rng.between(n, 3 * n);
        for (int i = 0; i < m; ++i) {
            int u = rng.between(0, n - 1), v = rng.between(0, n - 1);
            if (u != v) g.add_edge(u, v);
        }
        bool planar = is_planar(g);
        bool k5 = has_minor(g, MinorTarget::K5).has_value();
        bool k33 = has_minor(g, MinorTarget::K33).has_value();
        CHECK(planar == (!k5 && !k33));
    }
}

TEST_CASE("minor monotone under supergraphs") {
    SplitRng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = petersen_graph();
        for (int i = 0; i < 3; ++i) {
            int u = rng.between(0, 9), v = rng.between(0, 9);
            if (u != v) g.add_edge(u, v);
        }
        CHECK(has_minor(g, MinorTarget::K5));
    }
}

TEST_CASE("k_sum") {
    auto s1 = k_sum(complete_graph(4), complete_graph(4), {0}, {0});
    CHECK(s1.graph.num_vertices() == 7);
    CHECK(s1.graph.num_edges() == 12);
    auto s3 = k_sum(complete_graph(4), complete_graph(4), {0, 1, 2}, {0, 1, 2});
    CHECK(s3.graph.num_vertices() == 5);
    CHECK(s3.graph.num_edges() == 9);
    CHECK_FALSE(has_minor(s3.graph, MinorTarget::K5));
    auto s2 = k_sum(complete_graph(3), complete_graph(3), {0, 1}, {1, 0}, {0});
    CHECK(s2.graph.num_vertices() == 4);
    CHECK(s2.graph.num_edges() == 4);
    for (VertexId v : s2.graph.vertices()) CHECK(s2.graph.degree(v) == 2);
    CHECK_THROWS_AS(k_sum(path_graph(3), complete_graph(3), {0, 2}, {0, 1}), GraphError);
    CHECK_THROWS_AS(k_sum(complete_graph(5), complete_graph(5), {0, 1, 2, 3}, {0, 1, 2, 3}), GraphError);
}

TEST_CASE("k-sums of K5-minor-free graphs stay K5-minor-free") {
    SplitRng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        Graph a = planar_triangulation(rng.between(4, 7), rng);
        Graph b = trial % 3 == 0 ? wagner_graph() : planar_triangulation(rng.between(4, 7), rng);
        int k = trial % 3 == 0 ? rng.between(1, 2) : rng.between(1, 3);
        std::vector<VertexId> c1{0, 1, 2}, c2{0, 1, 2};
        c1.resize(k);
        c2.resize(k);
        auto s = k_sum(a, b, c1, c2);
        REQUIRE(s.graph.num_vertices() <= 14);
        CHECK_FALSE(has_minor(s.graph, MinorTarget::K5));
    }
}
