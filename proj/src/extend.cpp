#include "tcol/extend.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

namespace tcol {

std::string to_string(Procedure p) {
    switch (p) {
        case Procedure::E5: return "E5";
        case Procedure::E6: return "E6";
        case Procedure::D4: return "D4";
        case Procedure::D5: return "D5";
        case Procedure::E7: return "E7";
        case Procedure::E8Case1: return "E8 case 1";
        case Procedure::E8Sub21: return "E8 subcase 2.1";
        case Procedure::E8Sub22: return "E8 subcase 2.2";
        case Procedure::Generic: return "generic";
    }
    return "?";
}

VertexId ExtensionInstance::operator[](const std::string& role) const {
    auto it = at.find(role);
    if (it == at.end()) throw PreconditionError("instance has no vertex " + role);
    return it->second;
}

ExtensionInstance make_instance(const Graph& g, Procedure p, std::map<std::string, VertexId> roles,
                                std::string source) {
    ExtensionInstance inst;
    inst.procedure = p;
    inst.source = source.empty() ? to_string(p) : std::move(source);
    inst.at = std::move(roles);
    for (const auto& [name, v] : inst.at)
        if (!g.has_vertex(v)) throw PreconditionError("role " + name + " is not a vertex");
    auto& I = inst;
    auto del = [&](std::initializer_list<const char*> names) {
        for (const char* s : names) I.delete_vertices.push_back(I[s]);
    };
    auto add = [&](const char* a, const char* b) { I.add_edges.emplace_back(I[a], I[b]); };
    switch (p) {
        case Procedure::E5:
            del({"u", "v"});
            add("x", "y"), add("y", "z"), add("z", "x");
            break;
        case Procedure::E6: del({"u", "v", "w"}); break;
        case Procedure::D4: I.delete_edges.emplace_back(I["u"], I["x"]); break;
        case Procedure::D5: I.delete_edges.emplace_back(I["u"], I["y"]); break;
        case Procedure::E7:
        case Procedure::E8Sub21: del({"u", "v"}); break;
        case Procedure::E8Case1:
            del({"u", "v", "w", "y"});
            add("x", "x1"), add("x", "x2"), add("x", "x3"), add("x", "x4");
            break;
        case Procedure::E8Sub22:
            del({"u", "v"});
            add("x", "x4"), add("x3", "x4");
            break;
        case Procedure::Generic:
            if (I.at.count("edge_u"))
                I.delete_edges.emplace_back(I["edge_u"], I["edge_v"]);
            else
                del({"del"});
            break;
    }
    return inst;
}

Graph reduced_graph(const Graph& g, const ExtensionInstance& inst) {
    Graph r = g;
    for (auto [a, b] : inst.delete_edges) {
        EdgeId e = r.find_edge(a, b);
        if (e < 0) throw PreconditionError("reduction deletes a missing edge");
        r.delete_edge(e);
    }
    for (VertexId v : inst.delete_vertices) r.delete_vertex(v);
    for (auto [a, b] : inst.add_edges)
        if (!r.add_edge(a, b).second) throw PreconditionError("reduction adds an edge that is already present");
    return r;
}

TotalColoring lift(const Graph& g, const Graph& reduced, const TotalColoring& psi, int threshold) {
    TotalColoring tc(g, psi.k);
    for (VertexId v : g.vertices())
        if (reduced.has_vertex(v) && g.degree(v) >= threshold) tc.set_vertex(v, psi.of_vertex(v));
    for (EdgeId e : g.edges())
        if (e < reduced.edge_capacity() && reduced.has_edge(e)) tc.set_edge(e, psi.of_edge(e));
    return tc;
}

namespace {

thread_local BranchLog* branch_log = nullptr;

void note(const char* branch) {
    if (branch_log) ++branch_log->hits[branch];
}

}  // namespace

BranchLog* set_branch_log(BranchLog* log) { return std::exchange(branch_log, log); }

namespace {

std::string set_text(const ColorSet& s) {
    std::string out = "{";
    for (int c = 1; c <= kMaxColors; ++c)
        if (s.test(c)) out += (out.size() > 1 ? "," : "") + std::to_string(c);
    return out + "}";
}

// The coloring of G under construction plus the instance's vertex names.
struct Work {
    const Graph& g;
    const ExtensionInstance& inst;
    TotalColoring tc;

    Work(const Graph& g, const ExtensionInstance& inst, TotalColoring tc) : g(g), inst(inst), tc(std::move(tc)) {}

    VertexId operator[](const std::string& r) const { return inst[r]; }
    EdgeId e(VertexId a, VertexId b) const {
        EdgeId id = g.find_edge(a, b);
        if (id < 0) throw PreconditionError("expected edge v" + std::to_string(a + 1) + "v" + std::to_string(b + 1));
        return id;
    }
    int c(VertexId a, VertexId b) const { return tc.of_edge(e(a, b)); }
    void set(VertexId a, VertexId b, int col) { tc.set_edge(e(a, b), col); }
    void swap(VertexId a, VertexId b, VertexId p, VertexId q) {
        int s = c(a, b), t = c(p, q);
        set(a, b, t), set(p, q, s);
    }
    ColorSet miss(VertexId v) const { return missing(g, tc, v); }
    bool misses(VertexId v, int col) const { return miss(v).test(col); }

    // Exchanges a and b on the edges of the walk p[0] p[1] ... .
    void swap_path(const std::vector<VertexId>& p, int a, int b) {
        for (size_t i = 0; i + 1 < p.size(); ++i) {
            int col = c(p[i], p[i + 1]);
            if (col != a && col != b) impossible("path edge without color a or b");
            set(p[i], p[i + 1], col == a ? b : a);
        }
    }

    std::string dump() const {
        std::ostringstream os;
        os << inst.source << " (" << to_string(inst.procedure) << ") k=" << tc.k << "\n";
        std::set<VertexId> roles;
        for (const auto& [name, v] : inst.at) {
            roles.insert(v);
            os << "  " << name << " = v" << v + 1 << " deg " << g.degree(v) << " color " << tc.of_vertex(v)
               << " missing " << set_text(miss(v)) << "\n";
        }
        for (VertexId a : roles)
            for (const auto& in : g.incident(a))
                if (roles.count(in.to) && a < in.to)
                    os << "  v" << a + 1 << "v" << in.to + 1 << " = " << tc.of_edge(in.edge) << "\n";
        return os.str();
    }

    [[noreturn]] void impossible(const std::string& why) const {
        throw ImpossibleBranch(why + "\n" + dump());
    }

    // Backtracking over uncolored edges; allowed[i] narrows edge i. Leaves
    // the edges uncolored on failure.
    bool assign(const std::vector<EdgeId>& edges, const std::vector<ColorSet>& allowed = {}, long* budget = nullptr) {
        std::function<bool(size_t)> go = [&](size_t i) {
            if (i == edges.size()) return true;
            if (budget && --*budget < 0) return false;
            ColorSet s = available(g, tc, TotalElement::edge(edges[i]));
            if (!allowed.empty()) s &= allowed[i];
            for (int col = 1; col <= tc.k; ++col) {
                if (!s.test(col)) continue;
                tc.set_edge(edges[i], col);
                if (go(i + 1)) return true;
            }
            tc.set_edge(edges[i], 0);
            return false;
        };
        return go(0);
    }

    // Colors the six edges from {a, b} to {x, y, z}, optionally narrowing
    // the colors used at x.
    bool finish_pair(VertexId a, VertexId b, VertexId x, VertexId y, VertexId z,
                     const ColorSet* at_x = nullptr) {
        std::vector<EdgeId> es;
        std::vector<ColorSet> allowed;
        ColorSet all;
        all.set();
        for (VertexId s : {a, b})
            for (VertexId t : {x, y, z}) {
                es.push_back(e(s, t));
                allowed.push_back(t == x && at_x ? *at_x : all);
            }
        return assign(es, allowed);
    }

    // pair step's escapes for the pair a, b on x, y, z: finish directly, or
    // after recoloring an edge among x, y, z with a color missing at both
    // of its ends.
    bool pair_closure(VertexId a, VertexId b, VertexId x, VertexId y, VertexId z) {
        if (finish_pair(a, b, x, y, z)) return true;
        note("pair-step closure recolors");
        for (auto [p, q] : {std::pair{x, y}, std::pair{x, z}, std::pair{y, z}}) {
            EdgeId pq = g.find_edge(p, q);
            if (pq < 0) continue;
            int old = tc.of_edge(pq);
            ColorSet both = miss(p) & miss(q);
            for (int col = 1; col <= tc.k; ++col) {
                if (!both.test(col)) continue;
                tc.set_edge(pq, col);
                if (finish_pair(a, b, x, y, z)) return true;
            }
            tc.set_edge(pq, old);
        }
        return false;
    }

    // pair step (iii) escape: if `col` is missing at w, recolor xw with it and
    // retry the closure. Restores xw on failure.
    bool recolor_closure(VertexId x, VertexId w, int col, VertexId a, VertexId b, VertexId y, VertexId z) {
        if (!misses(w, col) || !misses(x, col)) return false;
        int old = c(x, w);
        set(x, w, col);
        if (pair_closure(a, b, x, y, z)) return true;
        set(x, w, old);
        return false;
    }
};

// Lifts psi and returns the work state plus the reduced graph, which the
// procedures consult for the colors of added edges.
std::pair<Work, Graph> start(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold,
                             Procedure expected) {
    if (inst.procedure != expected)
        throw PreconditionError("instance is " + to_string(inst.procedure) + ", not " + to_string(expected));
    Graph r = reduced_graph(g, inst);
    for (EdgeId e : r.edges())
        if (psi.of_edge(e) == 0) throw PreconditionError("coloring of the reduced graph leaves an edge uncolored");
    return {Work(g, inst, lift(g, r, psi, threshold)), std::move(r)};
}

int added_color(const Graph& r, const TotalColoring& psi, VertexId a, VertexId b) {
    EdgeId e = r.find_edge(a, b);
    if (e < 0) throw PreconditionError("reduced graph lacks an added edge");
    return psi.of_edge(e);
}

void check_done(const Work& w) {
    for (EdgeId e : w.g.edges())
        if (w.tc.of_edge(e) == 0) w.impossible("extension left an edge uncolored");
    if (auto c = verify(w.g, w.tc)) w.impossible("extension produced a conflict: " + describe(w.g, *c));
}

}  // namespace

TotalColoring extend_E5(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold) {
    auto [w, r] = start(g, inst, psi, threshold, Procedure::E5);
    VertexId u = w["u"], v = w["v"], x = w["x"], y = w["y"], z = w["z"];
    int xy = added_color(r, psi, x, y), yz = added_color(r, psi, y, z), zx = added_color(r, psi, z, x);
    w.set(u, x, xy), w.set(v, y, xy);
    w.set(u, y, yz), w.set(v, z, yz);
    w.set(u, z, zx), w.set(v, x, zx);
    check_done(w);
    return w.tc;
}

TotalColoring extend_E6(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold) {
    auto [w, r] = start(g, inst, psi, threshold, Procedure::E6);
    std::vector<EdgeId> es;
    for (const char* t : {"x", "y", "z"}) {
        ColorSet m = w.miss(w[t]);
        if (m.count() < 3) throw PreconditionError(std::string("list at ") + t + " has fewer than three colors");
        for (const char* s : {"u", "v", "w"}) es.push_back(w.e(w[s], w[t]));
    }
    if (!w.assign(es)) throw ColoringError("K3,3 list edge coloring failed\n" + w.dump());
    check_done(w);
    return w.tc;
}

namespace {

// uy step: u is a 2-vertex with ux colored a and uy uncolored. Colors uy
// directly or after recoloring one edge at y; false when neither works,
// in which case a is the only color missing at y and is present at every
// other neighbour of y.
bool uy_step(Work& w, VertexId u, VertexId x, VertexId y) {
    int a = w.c(u, x);
    ColorSet my = w.miss(y);
    for (int b = 1; b <= w.tc.k; ++b)
        if (my.test(b) && b != a) {
            note("uy-step (i)");
            w.set(u, y, b);
            return true;
        }
    if (!my.test(a)) w.impossible("uy step: nothing missing at y");
    for (VertexId z : w.g.neighbors(y)) {
        if (z == u || !w.misses(z, a)) continue;
        note("uy-step (ii)");
        int old = w.c(y, z);
        w.set(y, z, a);
        w.set(u, y, old);
        return true;
    }
    note("uy-step holds");
    return false;
}

}  // namespace

TotalColoring extend_D4(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold) {
    auto [W, r] = start(g, inst, psi, threshold, Procedure::D4);
    VertexId u = W["u"], u1 = W["u1"], w = W["w"], x = W["x"], y = W["y"], z = W["z"], v = W["v"],
             y1 = W["y1"];
    int a = W.c(u, u1), b = W.c(u1, w);
    if (!uy_step(W, u, u1, x)) {
        if (W.c(w, z) != a) W.impossible("D4: a must sit on wz");
        if (W.c(x, z) != b) {
            note("D4 xz != b");
            int old = W.c(x, z);
            W.swap(x, z, w, z);
            W.set(u, x, old);
        } else if (W.misses(y, b)) {
            note("D4 b missing at y");
            int old = W.c(x, y);
            W.swap_path({u, u1, w, z, x}, a, b);
            W.set(x, y, b);
            W.set(u, x, old);
        } else {
            int vy = W.c(v, y), yy1 = W.c(y, y1);
            if (!((vy == a && yy1 == b) || (vy == b && yy1 == a))) W.impossible("D4: vy, yy1 must carry a and b");
            note(vy == b ? "D4 vy = b" : "D4 vy = a");
            int old = W.c(v, x);
            W.swap(v, y, v, x);
            W.set(u, x, old);
            if (vy == b) W.swap_path({u, u1, w, z, x}, a, b);
        }
    }
    check_done(W);
    return W.tc;
}

TotalColoring extend_D5(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold) {
    auto [W, r] = start(g, inst, psi, threshold, Procedure::D5);
    VertexId u = W["u"], u1 = W["u1"], v = W["v"], w = W["w"], x = W["x"], y = W["y"], z = W["z"];
    int a = W.c(u, u1);
    if (!uy_step(W, u, u1, y)) {
        // normalise so that vx and wz carry a
        if (W.c(v, x) != a) std::swap(v, w);
        if (W.c(v, x) != a || W.c(w, z) != a) W.impossible("D5: a must sit on vx and wz");
        if (g.adjacent(x, z)) {
            // the symmetry v<->w, x<->z keeps vx, wz at a
            note("D5 xz");
            if (W.c(x, z) == W.c(v, y)) std::swap(v, w), std::swap(x, z);
            int c = W.c(x, z);
            W.swap_path({v, x, z, w}, a, c);
            W.set(w, y, a);
        } else if (g.adjacent(x, y) || g.adjacent(y, z)) {
            // the yz case is the mirror image of xy
            note(g.adjacent(x, y) ? "D5 xy" : "D5 yz");
            if (!g.adjacent(x, y)) std::swap(v, w), std::swap(x, z);
            int b = W.c(x, y);
            note(W.c(v, z) == b ? "D5 path yxvzw" : "D5 swap yx xv");
            if (W.c(v, z) == b)
                W.swap_path({y, x, v, z, w}, a, b);
            else
                W.swap(y, x, x, v);
        } else {
            throw PreconditionError("D5 with {x,y,z} independent reduces as E5");
        }
        if (W.misses(y, a)) W.impossible("D5: a still missing at y");
        ColorSet my = W.miss(y);
        my.reset(a);
        if (my.none()) W.impossible("D5: y misses nothing besides a");
        W.set(u, y, static_cast<int>(my._Find_first()));
    }
    check_done(W);
    return W.tc;
}

namespace {

int first(const ColorSet& s) {
    for (int c = 1; c <= kMaxColors; ++c)
        if (s.test(c)) return c;
    return 0;
}

}  // namespace

TotalColoring extend_E7(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold) {
    auto [W, r] = start(g, inst, psi, threshold, Procedure::E7);
    VertexId u = W["u"], v = W["v"], w = W["w"], x = W["x"], y = W["y"], z = W["z"], x1 = W["x1"], x2 = W["x2"];
    auto closure = [&] { return W.pair_closure(u, v, x, y, z); };
    // color 1 must be present at w, else recolor xw with it
    auto at_w = [&](int col) {
        if (!W.misses(w, col)) return false;
        note("E7 pair-step (iii) at w");
        if (W.recolor_closure(x, w, col, u, v, y, z)) return true;
        W.impossible("pair step (iii): recoloring xw did not finish");
    };
    auto wx_pair_is = [&](int p, int q) {
        int s = W.c(w, x1), t = W.c(w, x2);
        return (s == p && t == q) || (s == q && t == p);
    };
    if (!closure()) {
        ColorSet common = W.miss(x) & W.miss(y) & W.miss(z);
        if (common.none()) W.impossible("pair step (i): no common missing color");
        int c1 = first(common), c3 = W.c(x, y), c4 = W.c(x, x1);
        if (!at_w(c1)) {
            if (W.misses(z, c3)) {
                // C_z = {1,3}: move 1 onto xy so that 3 is common
                note("E7 C_z = {1,3}");
                W.set(x, y, c1);
                if (!(W.misses(x, c3) && W.misses(y, c3) && W.misses(z, c3))) W.impossible("E7: 3 not common");
                if (!at_w(c3)) {
                    if (!wx_pair_is(c1, c3)) W.impossible("E7: wx1, wx2 must carry 1 and 3");
                    note("E7 swap wx1 xx1, xy opposite");
                    int c = W.c(w, x1);
                    W.set(w, x1, c4);
                    W.set(x, x1, c);
                    W.set(x, y, c == c1 ? c3 : c1);
                    if (!closure()) W.impossible("E7: pair step (i) after swapping wx1 and xx1");
                }
            } else {
                // C_x = C_y = C_z = {1,2}
                note("E7 C_x = C_y = C_z");
                ColorSet rest = common;
                rest.reset(c1);
                if (rest.none()) W.impossible("pair step (ii): C_z is neither {1,3} nor {1,2}");
                int c2 = first(rest);
                if (!at_w(c2)) {
                    if (!wx_pair_is(c1, c2)) W.impossible("E7: wx1, wx2 must carry 1 and 2");
                    note("E7 swap wx1 xx1");
                    W.swap(w, x1, x, x1);
                    if (!closure()) W.impossible("E7: pair step (ii) after swapping wx1 and xx1");
                }
            }
        }
    }
    check_done(W);
    return W.tc;
}

namespace {

// Colors the pair a, b on x, s, t with the two colors `at_x` used at x,
// recoloring st first if that is what it takes.
bool half(Work& W, VertexId a, VertexId b, VertexId x, VertexId s, VertexId t, const ColorSet& at_x) {
    if (W.finish_pair(a, b, x, s, t, &at_x)) return true;
    EdgeId st = W.g.find_edge(s, t);
    if (st < 0) return false;
    int old = W.tc.of_edge(st);
    ColorSet both = W.miss(s) & W.miss(t);
    for (int c = 1; c <= W.tc.k; ++c) {
        if (!both.test(c)) continue;
        W.tc.set_edge(st, c);
        if (W.finish_pair(a, b, x, s, t, &at_x)) return true;
    }
    W.tc.set_edge(st, old);
    return false;
}

void e8_case1(Work& W, const Graph& r, const TotalColoring& psi) {
    VertexId u = W["u"], v = W["v"], w = W["w"], y = W["y"], x = W["x"];
    VertexId xs[4] = {W["x1"], W["x2"], W["x3"], W["x4"]};
    int c[4];
    for (int i = 0; i < 4; ++i) c[i] = added_color(r, psi, x, xs[i]);
    // one color from each of {1,2}, {3,4} for w, y; the rest for u, v
    for (int p = 0; p < 2; ++p)
        for (int q = 2; q < 4; ++q) {
            ColorSet wy, uv;
            wy.set(c[p]), wy.set(c[q]);
            uv.set(c[1 - p]), uv.set(c[5 - q]);
            TotalColoring saved = W.tc;
            if (half(W, w, y, x, xs[0], xs[1], wy) && half(W, u, v, x, xs[2], xs[3], uv)) {
                note(p == 0 && q == 2 ? "E8 case 1 split {1,3}" : "E8 case 1 other split");
                return;
            }
            W.tc = saved;
        }
    W.impossible("E8 case 1: no split of the four colors at x works");
}

void e8_sub21(Work& W) {
    VertexId u = W["u"], v = W["v"], w = W["w"], y = W["y"], x = W["x"], x1 = W["x1"], x2 = W["x2"],
             x3 = W["x3"], x4 = W["x4"];
    auto closure = [&] { return W.pair_closure(u, v, x, x3, x4); };
    if (closure()) return;
    ColorSet common = W.miss(x) & W.miss(x3) & W.miss(x4);
    if (common.none()) W.impossible("pair step (i): no common missing color");
    int c1 = first(common), c4 = W.c(x, y);
    for (VertexId t : {w, y}) {
        if (!W.misses(t, c1)) continue;
        note("E8 2.1 pair-step (iii)");
        if (W.recolor_closure(x, t, c1, u, v, x3, x4)) return;
        W.impossible("pair step (iii): recoloring at x did not finish");
    }
    if (W.c(w, x1) != c1) std::swap(x1, x2);
    if (W.c(w, x1) != c1 || W.c(y, x2) != c1) W.impossible("E8 subcase 2.1: 1 must sit on wx1 and yx2");
    int c = W.c(x1, x2);
    note(c == c4 ? "E8 2.1 path, recolor xy" : "E8 2.1 path, recolor xw");
    W.swap_path({w, x1, x2, y}, c1, c);
    if (c == c4)
        W.set(x, y, c1);
    else
        W.set(x, w, c1);
    if (!closure()) W.impossible("E8 subcase 2.1: pair step after the path swap");
}

void e8_sub22(Work& W) {
    VertexId u = W["u"], v = W["v"], w = W["w"], y = W["y"], x = W["x"], x3 = W["x3"], x4 = W["x4"];
    if (W.pair_closure(u, v, x, x3, x4)) return;
    ColorSet common = W.miss(x) & W.miss(x3) & W.miss(x4);
    // 1 and 2 cannot both be present at w and at y
    for (int c = 1; c <= W.tc.k; ++c) {
        if (!common.test(c)) continue;
        for (VertexId t : {w, y})
            if (W.recolor_closure(x, t, c, u, v, x3, x4)) {
                note("E8 2.2 pair-step (iii)");
                return;
            }
    }
    W.impossible("E8 subcase 2.2: colors 1 and 2 present at both w and y");
}

}  // namespace

TotalColoring extend_E8(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold) {
    Procedure p = inst.procedure;
    if (p != Procedure::E8Case1 && p != Procedure::E8Sub21 && p != Procedure::E8Sub22)
        throw PreconditionError("instance is " + to_string(p) + ", not E8");
    auto [W, r] = start(g, inst, psi, threshold, p);
    if (p == Procedure::E8Case1)
        e8_case1(W, r, psi);
    else if (p == Procedure::E8Sub21)
        e8_sub21(W);
    else
        e8_sub22(W);
    check_done(W);
    return W.tc;
}

namespace {

std::vector<TotalElement> to_color(const Work& W, int threshold) {
    std::vector<TotalElement> out;
    for (EdgeId e : W.g.edges())
        if (W.tc.of_edge(e) == 0) out.push_back(TotalElement::edge(e));
    for (VertexId v : W.g.vertices())
        if (W.tc.of_vertex(v) == 0 && W.g.degree(v) >= threshold) out.push_back(TotalElement::vertex(v));
    return out;
}

// Most-constrained-first backtracking over the listed elements.
bool mrv(Work& W, const std::vector<TotalElement>& elems, long& budget, long& nodes) {
    int best = -1;
    ColorSet best_set;
    size_t best_count = kMaxColors + 1;
    for (size_t i = 0; i < elems.size(); ++i) {
        if (W.tc.of(elems[i]) != 0) continue;
        ColorSet s = available(W.g, W.tc, elems[i]);
        if (s.count() < best_count) best = static_cast<int>(i), best_set = s, best_count = s.count();
        if (best_count == 0) break;
    }
    if (best < 0) return true;
    if (--budget < 0) return false;
    ++nodes;
    for (int c = 1; c <= W.tc.k; ++c) {
        if (!best_set.test(c)) continue;
        W.tc.set(elems[best], c);
        if (mrv(W, elems, budget, nodes)) return true;
        if (budget < 0) break;
    }
    W.tc.set(elems[best], 0);
    return false;
}

// Tries up to `depth` chained Kempe swaps that free a color at the most
// constrained element, searching after each.
bool kempe_search(Work& W, const std::vector<TotalElement>& elems, int depth, long& budget, long& nodes,
                  int& swaps, int& attempts) {
    long local = 2000;
    if (mrv(W, elems, local, nodes)) return true;
    if (depth == 0 || budget < 0) return false;
    // the uncolored element with the fewest options
    TotalElement target = elems[0];
    size_t fewest = kMaxColors + 1;
    for (TotalElement x : elems) {
        if (W.tc.of(x) != 0) continue;
        size_t n = available(W.g, W.tc, x).count();
        if (n < fewest) fewest = n, target = x;
    }
    std::vector<TotalElement> blockers;
    for (VertexId t : {target.is_vertex() ? target.id : W.g.ends(target.id).u,
                       target.is_vertex() ? target.id : W.g.ends(target.id).v}) {
        if (!target.is_vertex() || t != target.id) blockers.push_back(TotalElement::vertex(t));
        for (const auto& in : W.g.incident(t)) {
            if (!target.is_vertex() && in.edge == target.id) continue;
            blockers.push_back(TotalElement::edge(in.edge));
            if (target.is_vertex()) blockers.push_back(TotalElement::vertex(in.to));
        }
    }
    for (TotalElement b : blockers) {
        int alpha = W.tc.of(b);
        if (alpha == 0) continue;
        for (int beta = 1; beta <= W.tc.k; ++beta) {
            if (beta == alpha || --budget < 0) continue;
            if (++attempts > 400) return false;
            TotalColoring saved = W.tc;
            kempe_swap(W.g, W.tc, alpha, beta, b, SwapScope::Component);
            ++swaps;
            if (available(W.g, W.tc, target).test(alpha) &&
                kempe_search(W, elems, depth - 1, budget, nodes, swaps, attempts))
                return true;
            W.tc = saved;
        }
    }
    return false;
}

}  // namespace

TotalColoring generic_extend(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold,
                             GenericBudget budget, GenericStats* stats) {
    auto [W, r] = start(g, inst, psi, threshold, Procedure::Generic);
    GenericStats st;
    auto elems = to_color(W, threshold);
    long nodes = budget.nodes;
    bool ok = mrv(W, elems, nodes, st.nodes);
    if (!ok) {
        for (TotalElement x : elems) W.tc.set(x, 0);
        long kb = budget.nodes;
        int attempts = 0;
        ok = kempe_search(W, elems, budget.kempe_chain, kb, st.nodes, st.kempe_swaps, attempts);
    }
    if (!ok) {
        // uncolor everything within distance one of the affected vertices
        st.used_local = true;
        for (TotalElement x : elems) W.tc.set(x, 0);
        std::set<VertexId> core;
        for (TotalElement x : elems) {
            if (x.is_vertex()) {
                core.insert(x.id);
            } else {
                auto [a, b] = g.ends(x.id);
                core.insert(a), core.insert(b);
            }
        }
        std::set<VertexId> ball = core;
        for (VertexId c : core)
            for (VertexId n : g.neighbors(c)) ball.insert(n);
        std::vector<TotalElement> region;
        std::set<EdgeId> seen;
        for (VertexId c : ball) {
            if (g.degree(c) >= threshold) W.tc.set_vertex(c, 0), region.push_back(TotalElement::vertex(c));
            for (const auto& in : g.incident(c))
                if (seen.insert(in.edge).second) W.tc.set_edge(in.edge, 0), region.push_back(TotalElement::edge(in.edge));
        }
        long lb = budget.local_nodes;
        ok = mrv(W, region, lb, st.nodes);
    }
    if (stats) *stats = st;
    if (!ok) throw ColoringError("generic extension exhausted its budget\n" + W.dump());
    check_done(W);
    return W.tc;
}

TotalColoring extend(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold) {
    switch (inst.procedure) {
        case Procedure::E5: return extend_E5(g, inst, psi, threshold);
        case Procedure::E6: return extend_E6(g, inst, psi, threshold);
        case Procedure::D4: return extend_D4(g, inst, psi, threshold);
        case Procedure::D5: return extend_D5(g, inst, psi, threshold);
        case Procedure::E7: return extend_E7(g, inst, psi, threshold);
        case Procedure::E8Case1:
        case Procedure::E8Sub21:
        case Procedure::E8Sub22: return extend_E8(g, inst, psi, threshold);
        case Procedure::Generic: return generic_extend(g, inst, psi, threshold);
    }
    throw PreconditionError("unknown procedure");
}

namespace {

using Roles = std::map<std::string, VertexId>;

ExtensionInstance plan_e8(const Graph& g, Roles m) {
    auto adj = [&](const char* a, const char* b) { return g.adjacent(m.at(a), m.at(b)); };
    auto swap_roles = [&](const char* a, const char* b) { std::swap(m.at(a), m.at(b)); };
    bool a1 = adj("x", "x1"), a2 = adj("x", "x2"), a3 = adj("x", "x3"), a4 = adj("x", "x4");
    if (!a1 && !a2 && !a3 && !a4) {
        std::set<VertexId> s{m["x1"], m["x2"]};
        if (!adj("x1", "x2") || !adj("x3", "x4") || s.count(m["x3"]) || s.count(m["x4"]))
            throw PreconditionError("E8 case 1 needs x1x2, x3x4 and disjoint pairs (E5/E7 present)");
        return make_instance(g, Procedure::E8Case1, m, "E8");
    }
    // normal form: xx3 is an edge
    if (!a3) {
        if (a4) {
            swap_roles("x3", "x4");
        } else {
            swap_roles("u", "w"), swap_roles("v", "y"), swap_roles("x1", "x3"), swap_roles("x2", "x4");
            if (!adj("x", "x3")) swap_roles("x3", "x4");
        }
    }
    if (m["x3"] != m["x1"] && m["x3"] != m["x2"]) {
        if (adj("x", "x1") || adj("x", "x2") || !adj("x1", "x2"))
            throw PreconditionError("E8 subcase 2.1 needs x1x2 and x nonadjacent to x1, x2 (E5/E7 present)");
        return make_instance(g, Procedure::E8Sub21, m, "E8");
    }
    if (m["x3"] == m["x2"]) swap_roles("x1", "x2");
    if (m["x2"] == m["x4"] || adj("x1", "x2") || adj("x3", "x4") || adj("x", "x4"))
        throw PreconditionError("E8 subcase 2.2 shape violated (E7 present)");
    return make_instance(g, Procedure::E8Sub22, m, "E8");
}

// The vertex a generic reduction deletes: the lowest-degree solid vertex,
// else the lowest-degree vertex with an exact degree.
VertexId generic_victim(const Graph& g, const ConfigurationPattern& p, const Embedding& emb) {
    VertexId best = -1;
    for (int pass = 0; pass < 3 && best < 0; ++pass)
        for (int i = 0; i < p.size(); ++i) {
            const auto& pv = p.vertices[i];
            bool ok = pass == 0 ? pv.solid : pass == 1 ? pv.deg.kind == DegreeSpec::Kind::Exact : true;
            if (ok && (best < 0 || g.degree(emb[i]) < g.degree(best))) best = emb[i];
        }
    return best;
}

}  // namespace

ExtensionInstance plan_extension(const Graph& g, const ReducibleInstance& r,
                                 const std::vector<ConfigurationPattern>& catalog) {
    if (auto* s = std::get_if<SmallVertex>(&r)) return make_instance(g, Procedure::Generic, {{"del", s->v}}, "small-vertex");
    if (auto* l = std::get_if<LightEdge>(&r))
        return make_instance(g, Procedure::Generic, {{"edge_u", l->u}, {"edge_v", l->v}}, "light-edge");
    if (auto* t = std::get_if<ThreeVertexPair>(&r))
        return make_instance(g, Procedure::Generic, {{"del", t->u}, {"pair", t->v}}, "three-vertex-pair");
    const auto& c = std::get<ConfigMatch>(r);
    const auto& p = find_pattern(catalog, c.name);
    Roles m;
    for (int i = 0; i < p.size(); ++i) m[p.vertices[i].label] = c.embedding.at(i);
    if (c.name == "E5") return make_instance(g, Procedure::E5, m, "E5");
    if (c.name == "E6") return make_instance(g, Procedure::E6, m, "E6");
    if (c.name == "D4") return make_instance(g, Procedure::D4, m, "D4");
    if (c.name == "E7") return make_instance(g, Procedure::E7, m, "E7");
    if (c.name == "E8") return plan_e8(g, m);
    if (c.name == "D5") {
        VertexId x = m["x"], y = m["y"], z = m["z"];
        if (!g.adjacent(x, y) && !g.adjacent(y, z) && !g.adjacent(x, z))
            return make_instance(g, Procedure::E5, {{"u", m["v"]}, {"v", m["w"]}, {"x", x}, {"y", y}, {"z", z}}, "D5");
        return make_instance(g, Procedure::D5, m, "D5");
    }
    Roles gm = m;
    gm["del"] = generic_victim(g, p, c.embedding);
    return make_instance(g, Procedure::Generic, gm, c.name);
}

}  // namespace tcol
