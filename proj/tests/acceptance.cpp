// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "support/extension_fuzz.hpp"

#include "tcol/decomp.hpp"
#include "tcol/discharging.hpp"
#include "tcol/minor.hpp"
#include "tcol/pipeline.hpp"
#include "tcol/planar.hpp"

using namespace tcol;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Linear check: at each vertex, its color, its edges' colors and its
// neighbours' colors must be distinct, all within 1..bound.
std::string check_total(const Graph& g, const TotalColoring& tc, int bound) {
    for (VertexId v : g.vertices()) {
        int cv = tc.of_vertex(v);
        if (cv < 1 || cv > bound) return "vertex v" + std::to_string(v + 1) + " has color " + std::to_string(cv);
        std::set<int> at{cv};
        for (const auto& inc : g.incident(v)) {
            int ce = tc.of_edge(inc.edge);
            if (ce < 1 || ce > bound) return "edge color " + std::to_string(ce) + " out of range";
            if (!at.insert(ce).second) return "clash at v" + std::to_string(v + 1);
            if (tc.of_vertex(inc.to) == cv) return "adjacent vertices share a color at v" + std::to_string(v + 1);
        }
    }
    return "";
}

// Backtracking in incidence order (each vertex, then its unvisited edges);
// a new color is only opened as the next unused one.
bool colorable(const Graph& g, int k) {
    std::vector<TotalElement> el;
    std::vector<char> seen(g.edge_capacity(), 0);
    for (VertexId v : g.vertices()) {
        el.push_back(TotalElement::vertex(v));
        for (const auto& inc : g.incident(v))
            if (!seen[inc.edge]) seen[inc.edge] = 1, el.push_back(TotalElement::edge(inc.edge));
    }
    std::vector<int> col(el.size(), 0);
    std::function<bool(size_t, int)> go = [&](size_t i, int used) {
        if (i == el.size()) return true;
        for (int c = 1; c <= std::min(k, used + 1); ++c) {
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j) ok = !(col[j] == c && conflicting(g, el[i], el[j]));
            if (!ok) continue;
            col[i] = c;
            if (go(i + 1, std::max(used, c))) return true;
        }
        col[i] = 0;
        return false;
    };
    return go(0, 0);
}

Outcome color_corpus(int dlo, int dhi, int extra, std::uint64_t seed) {
    SplitRng rng(seed);
    Outcome o;
    int done = 0, worst_n = 0;
    for (std::uint64_t t = 0; done < 100 && t < 5000; ++t) {
        SplitRng r = rng.split(t);
        int d = r.between(dlo, dhi);
        Graph g = k5_minor_free_sum({r.between(6, 60), 4, 14, 0.2, d}, r);
        if (g.num_vertices() < 50 || g.num_vertices() > 400 || g.max_degree() != d) continue;
        ++done;
        worst_n = std::max(worst_n, g.num_vertices());
        try {
            auto res = color_k5_minor_free(g);
            std::string bad = check_total(g, res.coloring, d + extra);
            if (!bad.empty()) {
                o.pass = false;
                o.detail = "seed " + std::to_string(t) + ": " + bad;
                return o;
            }
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = "seed " + std::to_string(t) + ": " + e.what();
            return o;
        }
    }
    o.pass = done == 100;
    o.detail = std::to_string(done) + " graphs, up to " + std::to_string(worst_n) + " vertices";
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::vector<std::string> names = {"c3", "c4", "c5", "c6", "c7", "c8", "k2", "k3", "k4", "star3", "star4",
                                      "star5", "star6", "star7", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "wagner"};
    for (const auto& name : names) {
        Graph g = named_graph(name);
        auto r = exact_chi_total(g);
        int d = g.max_degree();
        bool ok = check_total(g, r.witness, r.chi).empty() && colorable(g, r.chi) && !colorable(g, r.chi - 1) &&
                  (r.chi == d + 1 || r.chi == d + 2);
        if (!ok) {
            o.pass = false;
            o.detail = name + ": oracle says " + std::to_string(r.chi);
            return o;
        }
    }
    o.detail = std::to_string(names.size()) + " graphs";
    return o;
}

// Contexts from the discharging generator plus clique sums, each reduced
// all the way down; every level asks find_reducible for a witness.
Outcome reduction_chain(ReduceMode mode, std::uint64_t seed) {
    bool tcc = mode == ReduceMode::TCC7;
    SplitRng rng(seed);
    Outcome o;
    int done = 0;
    long calls = 0;
    std::map<std::string, int> kinds;
    for (std::uint64_t t = 0; done < 500 && t < 20000; ++t) {
        SplitRng r = rng.split(t);
        Graph g;
        if (t % 2 == 0) {
            auto ctx = random_context(tcc ? ChargeSystem::Deg7 : ChargeSystem::Deg10, r.between(16, 40), r);
            if (!ctx) continue;
            g = ctx->graph();
        } else {
            int d = tcc ? r.between(7, 9) : r.between(10, 16);
            g = k5_minor_free_sum({r.between(2, 12), 4, 12, 0.3, d}, r);
        }
        if (!is_connected(g)) continue;
        ++done;
        try {
            while (g.num_vertices() > 0) {
                auto ri = find_reducible(g, mode);
                ++calls;
                ExtensionInstance inst = plan_extension(g, ri);
                ++kinds[inst.source];
                g = reduced_graph(g, inst);
            }
        } catch (const StructureViolation& e) {
            o.pass = false;
            o.detail = "instance " + std::to_string(t) + ": " + e.what();
            return o;
        }
    }
    o.pass = done == 500;
    std::ostringstream s;
    s << done << " instances, " << calls << " searches; configs:";
    for (const auto& [k, n] : kinds)
        if (k != "small-vertex" && k != "light-edge") s << " " << k << "=" << n;
    o.detail = s.str();
    return o;
}

std::vector<StructuralContext> contexts(ChargeSystem sys, std::uint64_t seed) {
    SplitRng rng(seed);
    std::vector<StructuralContext> out;
    for (std::uint64_t t = 0; out.size() < 200 && t < 100000; ++t) {
        SplitRng r = rng.split(t);
        if (auto c = random_context(sys, r.between(12, 40), r)) out.push_back(std::move(*c));
    }
    return out;
}

Outcome criterion6() {
    Outcome o;
    long transfers = 0;
    for (auto sys : {ChargeSystem::Deg7, ChargeSystem::Deg10}) {
        auto ctxs = contexts(sys, 600 + static_cast<int>(sys));
        if (ctxs.size() != 200) return {false, "only " + std::to_string(ctxs.size()) + " contexts"};
        for (const auto& ctx : ctxs) {
            auto L = run_rules(ctx, sys);
            auto rep = audit(ctx, L);
            transfers += static_cast<long>(L.transfers.size());
            Rational in(0), out(0);
            for (const auto& [el, c] : L.initial) in += c;
            for (const auto& [el, c] : L.final) out += c;
            if (!rep.conserved || !rep.balanced || in != out)
                return {false, to_string(sys) + ": charge not conserved"};
        }
    }
    o.detail = "400 contexts, " + std::to_string(transfers) + " transfers";
    return o;
}

bool has_config(const StructuralContext& ctx, char series) {
    auto ex = ctx.excluded();
    for (const auto& p : default_catalog())
        if (p.name[0] == series && !match_pattern(ctx.graph(), p, ex, 1).empty()) return true;
    return false;
}

Outcome criterion7() {
    Outcome o;
    int negatives = 0;
    for (auto sys : {ChargeSystem::Deg7, ChargeSystem::Deg10}) {
        auto ctxs = contexts(sys, 700 + static_cast<int>(sys));
        if (ctxs.size() != 200) return {false, "only " + std::to_string(ctxs.size()) + " contexts"};
        for (const auto& ctx : ctxs) {
            if (check_hypotheses(ctx, sys)) return {false, "generator produced a context outside the hypotheses"};
            auto rep = audit(ctx, run_rules(ctx, sys));
            negatives += !rep.negative.empty();
            if (!has_config(ctx, sys == ChargeSystem::Deg7 ? 'A' : 'C')) {
                o.pass = false;
                o.detail = to_string(sys) + ": configuration-free context with " +
                           std::to_string(rep.negative.size()) + " negative elements";
                return o;
            }
        }
    }
    o.detail = "400 contexts all contain a configuration (" + std::to_string(negatives) + " show negative charge)";
    return o;
}

Outcome criterion8() {
    SplitRng rng(800);
    int done = 0, multi = 0, wagner = 0;
    for (std::uint64_t t = 0; done < 100 && t < 5000; ++t) {
        SplitRng r = rng.split(t);
        Graph g = k5_minor_free_sum({r.between(2, 8), 4, 10, 0.4}, r);
        if (g.num_vertices() > 60 || !is_connected(g)) continue;
        ++done;
        auto d = decompose(g);
        if (auto bad = check_decomposition(g, d); !bad.empty()) return {false, "instance " + std::to_string(t) + ": " + bad};
        for (size_t i = 0; i < d.parts.size(); ++i) {
            Graph part = part_graph(g, d, static_cast<int>(i));
            bool ok = d.kinds[i] == PartKind::Planar ? is_planar(part) : is_wagner(part);
            if (!ok) return {false, "instance " + std::to_string(t) + ": part of the wrong kind"};
            wagner += d.kinds[i] == PartKind::Wagner;
        }
        multi += d.parts.size() > 1;
        std::vector<VertexId> old;
        Graph back = recompose(g, d, &old);
        std::set<std::pair<VertexId, VertexId>> a, b;
        for (EdgeId e : g.edges()) a.insert(std::minmax(g.ends(e).u, g.ends(e).v));
        for (EdgeId e : back.edges()) b.insert(std::minmax(old[back.ends(e).u], old[back.ends(e).v]));
        if (a != b || back.num_vertices() != g.num_vertices())
            return {false, "instance " + std::to_string(t) + ": recomposition differs"};
    }
    return {done == 100, std::to_string(done) + " instances, " + std::to_string(multi) + " with several parts, " +
                             std::to_string(wagner) + " Wagner parts"};
}

Outcome criterion9() {
    std::vector<Graph> corpus;
    for (const char* name : {"k1", "k2", "k3", "k4", "k5", "k6", "c5", "c12", "p10", "star11", "k2_3", "k3_3", "k3_4",
                             "k4_4", "petersen", "wagner", "octahedron", "icosahedron"})
        corpus.push_back(named_graph(name));
    SplitRng rng(900);
    for (int t = 0; t < 300; ++t) {
        SplitRng r = rng.split(t);
        int n = r.between(5, 12);
        Graph g(n);
        int m = r.between(n, 3 * n);
        for (int i = 0; i < m; ++i) {
            int u = r.between(0, n - 1), v = r.between(0, n - 1);
            if (u != v && !g.adjacent(u, v)) g.add_edge(u, v);
        }
        corpus.push_back(std::move(g));
    }
    int planar = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        const Graph& g = corpus[i];
        bool p = test_planarity(g).has_value();
        bool k5 = has_minor(g, MinorTarget::K5).has_value();
        bool k33 = has_minor(g, MinorTarget::K33).has_value();
        if (p != (!k5 && !k33)) return {false, "graph " + std::to_string(i) + " disagrees"};
        planar += p;
    }
    return {true, std::to_string(corpus.size()) + " graphs, " + std::to_string(planar) + " planar"};
}

Outcome criterion10() {
    const std::vector<std::string> all_branches = {
        "uy-step (i)", "uy-step (ii)", "uy-step holds", "D4 xz != b", "D4 b missing at y", "D4 vy = a", "D4 vy = b",
        "D5 xz", "D5 xy", "D5 yz", "D5 path yxvzw", "D5 swap yx xv", "pair-step closure recolors",
        "E7 pair-step (iii) at w", "E7 C_z = {1,3}", "E7 swap wx1 xx1, xy opposite", "E7 C_x = C_y = C_z",
        "E7 swap wx1 xx1", "E8 case 1 split {1,3}", "E8 case 1 other split", "E8 2.1 pair-step (iii)",
        "E8 2.1 path, recolor xy", "E8 2.1 path, recolor xw", "E8 2.2 pair-step (iii)"};
    BranchLog log;
    BranchLog* outer = set_branch_log(&log);
    Outcome o;
    std::ostringstream s;
    for (Procedure p : {Procedure::E5, Procedure::E6, Procedure::D4, Procedure::D5, Procedure::E7, Procedure::E8Case1}) {
        SplitRng rng(1000 + static_cast<int>(p));
        int done = 0;
        std::optional<fuzz::State> host;
        for (std::uint64_t t = 0; done < 1000 && t < 100000; ++t) {
            SplitRng r = rng.split(t);
            if (!host || done % 10 == 0) {
                host = fuzz::make_state(p, r);
                if (!host) continue;
            }
            fuzz::mix(*host, r, 20);
            fuzz::steer(*host, r, 40);
            ++done;
            std::string fail;
            try {
                auto tc = extend(host->g, host->inst, host->psi, 6);
                if (!is_nice(host->g, tc, 6)) fail = "result is not nice";
                complete_nice(host->g, tc);
                if (auto c = verify(host->g, tc)) fail = describe(host->g, *c);
                if (!is_complete(host->g, tc)) fail = "uncolored elements remain";
            } catch (const std::exception& e) {
                fail = e.what();
            }
            if (!fail.empty()) {
                set_branch_log(outer);
                return {false, std::string(fuzz::config_of(p)) + " run " + std::to_string(done) + ": " + fail};
            }
        }
        if (done != 1000) {
            set_branch_log(outer);
            return {false, std::string(fuzz::config_of(p)) + ": only " + std::to_string(done) + " states"};
        }
    }
    set_branch_log(outer);
    int hit = 0;
    std::string missed;
    for (const auto& b : all_branches)
        if (log.hits.count(b))
            ++hit;
        else
            missed += " [" + b + "]";
    s << "6000 runs, " << hit << "/" << all_branches.size() << " proof branches reached";
    if (!missed.empty()) s << "; not reached:" << missed;
    o.detail = s.str();
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    // optional arguments pick criteria by number
    struct Criterion {
        const char* name;
        double limit;  // seconds, 0 for none
        std::function<Outcome()> run;
    };
    std::vector<Criterion> list = {
        {"1 Delta in [10,20] colored with Delta+1", 120, [] { return color_corpus(10, 20, 1, 101); }},
        {"2 Delta in [7,9] colored with Delta+2", 120, [] { return color_corpus(7, 9, 2, 102); }},
        {"3 exact oracle against brute force", 60, criterion3},
        {"4 find_reducible Delta1 never fails", 60, [] { return reduction_chain(ReduceMode::Delta1, 401); }},
        {"5 find_reducible TCC7 never fails", 60, [] { return reduction_chain(ReduceMode::TCC7, 501); }},
        {"6 discharging conserves charge", 0, criterion6},
        {"7 no configuration-free context", 0, criterion7},
        {"8 decompose/recompose round trip", 0, criterion8},
        {"9 planarity agrees with minor search", 0, criterion9},
        {"10 extension procedures fuzzed", 120, criterion10},
    };
    int failed = 0;
    for (const auto& c : list) {
        if (argc > 1) {
            std::string num = std::string(c.name).substr(0, std::string(c.name).find(' '));
            if (std::find(argv + 1, argv + argc, num) == argv + argc) continue;
        }
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit > 0 && secs > c.limit) {
            o.pass = false;
            o.detail += "; over the time limit";
        }
        failed += !o.pass;
        std::printf("%s criterion %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
