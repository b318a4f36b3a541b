#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "tcol/generators.hpp"
#include "tcol/minor.hpp"
#include "tcol/planar.hpp"

using namespace tcol;

namespace {

void check_invariants(const PlaneEmbedding& emb) {
    const Graph& g = emb.graph();
    std::map<EdgeId, int> sides;
    int total = 0;
    for (const Face& f : emb.faces()) {
        total += f.degree();
        for (EdgeId e : f.edges) ++sides[e];
    }
    CHECK(total == 2 * g.num_edges());
    for (EdgeId e : g.edges()) CHECK(sides[e] == 2);
    // Euler per component
    auto comps = components(g);
    std::vector<int> comp_of(g.vertex_capacity(), -1);
    for (size_t i = 0; i < comps.size(); ++i)
        for (VertexId v : comps[i]) comp_of[v] = static_cast<int>(i);
    std::vector<int> nv(comps.size()), ne(comps.size()), nf(comps.size());
    for (VertexId v : g.vertices()) ++nv[comp_of[v]];
    for (EdgeId e : g.edges()) ++ne[comp_of[g.ends(e).u]];
    for (const Face& f : emb.faces()) ++nf[comp_of[f.walk[0]]];
    for (size_t i = 0; i < comps.size(); ++i) CHECK(nv[i] - ne[i] + nf[i] == 2);
}

Graph bowtie() {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(0, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 0);
    return g;
}

}  // namespace

TEST_CASE("test_planarity") {
    auto k4 = test_planarity(complete_graph(4));
    REQUIRE(k4);
    CHECK(k4->num_faces() == 4);
    check_invariants(*k4);
    CHECK_FALSE(test_planarity(complete_graph(5)));
    CHECK_FALSE(brute_force_planar(complete_graph(5)));
    CHECK_FALSE(test_planarity(complete_bipartite(3, 3)));
    CHECK_FALSE(brute_force_planar(complete_bipartite(3, 3)));
    CHECK(brute_force_planar(complete_graph(4)));
    CHECK_FALSE(test_planarity(petersen_graph()));
    CHECK_FALSE(brute_force_planar(petersen_graph()));
    CHECK_FALSE(test_planarity(wagner_graph()));

    auto ico = test_planarity(icosahedron_graph());
    REQUIRE(ico);
    CHECK(ico->num_faces() == 20);
    check_invariants(*ico);
}

TEST_CASE("trees have one face") {
    SplitRng rng(3);
    for (int n = 1; n <= 30; ++n) {
        Graph t(n);
        for (int v = 1; v < n; ++v) t.add_edge(v, static_cast<int>(rng.below(v)));
        auto emb = test_planarity(t);
        REQUIRE(emb);
        CHECK(emb->num_faces() == 1);
        check_invariants(*emb);
    }
}

TEST_CASE("disconnected input embeds per component") {
    Graph g(7);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(3, 4);
    auto emb = test_planarity(g);
    REQUIRE(emb);
    check_invariants(*emb);
    CHECK(emb->num_faces() == 2 + 1 + 2);  // triangle, edge, two isolated vertices
}

TEST_CASE("brute force agrees with the planarity test on small random graphs") {
    SplitRng rng(11);
    int nonplanar = 0;
    for (int trial = 0; trial < 150; ++trial) {
        int n = rng.between(5, 8);
        Graph g(n);
        // degree cap keeps the rotation count small enough to enumerate
        for (int i = 0; i < 3 * n; ++i) {
            int u = rng.between(0, n - 1), v = rng.between(0, n - 1);
            if (u != v && g.degree(u) < 4 && g.degree(v) < 4) g.add_edge(u, v);
        }
        bool fast = is_planar(g);
        CHECK(fast == brute_force_planar(g));
        nonplanar += !fast;
        if (auto emb = test_planarity(g)) check_invariants(*emb);
    }
    CHECK(nonplanar > 10);
}

TEST_CASE("embed_with_outer_face") {
    Graph k4 = complete_graph(4);
    auto e3 = embed_with_outer_face(k4, {0, 2, 3});
    REQUIRE(e3);
    for (VertexId v : {0, 2, 3}) CHECK(e3->on_face(e3->outer_face(), v));
    check_invariants(*e3);
    CHECK_FALSE(embed_with_outer_face(k4, {0, 1, 2, 3}));

    Graph c5 = cycle_graph(5);
    auto e5 = embed_with_outer_face(c5, {0, 1, 2, 3, 4});
    REQUIRE(e5);
    CHECK(e5->face(e5->outer_face()).degree() == 5);

    // every pair of faces of the icosahedron: required set from one face
    Graph ico = icosahedron_graph();
    auto base = test_planarity(ico);
    for (const Face& f : base->faces()) {
        auto e = embed_with_outer_face(ico, f.walk);
        REQUIRE(e);
        for (VertexId v : f.walk) CHECK(e->on_face(e->outer_face(), v));
    }
}

TEST_CASE("t_count") {
    auto c4 = test_planarity(cycle_graph(4));
    for (FaceId f = 0; f < c4->num_faces(); ++f)
        for (VertexId v : c4->face(f).walk) CHECK(c4->t_count(f, v) == 1);

    auto bt = test_planarity(bowtie());
    REQUIRE(bt);
    // the face touching both triangles passes through the cut vertex twice
    int twice = 0;
    for (FaceId f = 0; f < bt->num_faces(); ++f)
        if (bt->face(f).degree() == 6) {
            CHECK(bt->t_count(f, 0) == 2);
            ++twice;
        }
    CHECK(twice == 1);

    auto star = test_planarity(star_graph(3));
    REQUIRE(star->num_faces() == 1);
    CHECK(star->t_count(0, 0) == 3);
    CHECK(star->t_count(0, 1) == 1);
    CHECK(star->face(0).degree() == 6);
    CHECK_THROWS_AS(c4->t_count(0, 99), GraphError);
}

TEST_CASE("face dump is canonical") {
    auto e = test_planarity(complete_graph(4));
    std::string d = dump_faces(*e);
    CHECK(d.rfind("f 0: 1 ", 0) == 0);
    int lines = 0;
    for (char c : d) lines += c == '\n';
    CHECK(lines == 4);
    CHECK(dump_faces(*test_planarity(complete_graph(4))) == d);
}
