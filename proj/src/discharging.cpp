#include "tcol/discharging.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace tcol {

std::string to_string(ChargeSystem s) { return s == ChargeSystem::Deg7 ? "deg7" : "deg10"; }

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

bool StructuralContext::in_n(VertexId v) const { return std::binary_search(N.begin(), N.end(), v); }

std::vector<char> StructuralContext::excluded() const {
    std::vector<char> ex(graph().vertex_capacity(), 0);
    for (VertexId v : N) ex[v] = 1;
    return ex;
}

StructuralContext make_context(const Graph& g, std::vector<VertexId> N) {
    std::sort(N.begin(), N.end());
    N.erase(std::unique(N.begin(), N.end()), N.end());
    if (N.empty() || N.size() > 3) throw HypothesisViolation("N must have 1 to 3 vertices", Element::vertex(-1));
    for (VertexId v : N)
        if (!g.has_vertex(v)) throw HypothesisViolation("N names a missing vertex", Element::vertex(v));
    for (size_t i = 0; i < N.size(); ++i)
        for (size_t j = i + 1; j < N.size(); ++j)
            if (g.adjacent(N[i], N[j])) throw HypothesisViolation("N is not independent", Element::vertex(N[i]));
    if (!is_connected(g)) throw HypothesisViolation("graph is not connected", Element::vertex(-1));
    auto emb = embed_with_outer_face(g, N);
    if (!emb) throw HypothesisViolation("no plane embedding puts N on one face", Element::vertex(N.front()));
    StructuralContext ctx;
    ctx.f0 = emb->outer_face();
    ctx.embedding = std::move(*emb);
    ctx.N = std::move(N);
    return ctx;
}

std::optional<HypothesisViolation> check_hypotheses(const StructuralContext& ctx, ChargeSystem system) {
    const Graph& g = ctx.graph();
    const int bound = system == ChargeSystem::Deg7 ? 10 : 12;
    for (VertexId v : g.vertices()) {
        int d = g.degree(v);
        if (d < 1) return HypothesisViolation("isolated vertex", Element::vertex(v));
        if (!ctx.in_n(v) && d < 3) return HypothesisViolation("(a) fails: H-vertex of degree " + std::to_string(d), Element::vertex(v));
    }
    for (VertexId v : ctx.N)
        if (!ctx.embedding.on_face(ctx.f0, v)) return HypothesisViolation("N-vertex not on f0", Element::vertex(v));
    bool h_edge = false;
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.ends(e);
        if (ctx.in_n(u) && ctx.in_n(v)) return HypothesisViolation("N is not independent", Element::vertex(u));
        if (ctx.in_n(u) || ctx.in_n(v)) continue;
        h_edge = true;
        if (g.degree(u) + g.degree(v) < bound)
            return HypothesisViolation("(b) fails on edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1),
                                       Element::vertex(u));
    }
    if (!h_edge) return HypothesisViolation("H has no edge", Element::vertex(-1));
    return std::nullopt;
}

ChargeLedger initial_charges(const StructuralContext& ctx, ChargeSystem system) {
    if (auto bad = check_hypotheses(ctx, system)) throw *bad;
    const Graph& g = ctx.graph();
    const auto& emb = ctx.embedding;
    ChargeLedger L;
    L.system = system;
    Rational total = 0;
    for (VertexId v : g.vertices()) {
        Rational c;
        if (system == ChargeSystem::Deg7)
            c = g.degree(v) - 4 + (ctx.in_n(v) ? Rational(8, static_cast<long long>(ctx.N.size())) : Rational(0));
        else
            c = g.degree(v) - 6;
        L.initial[Element::vertex(v)] = c;
        total += c;
    }
    for (FaceId f = 0; f < emb.num_faces(); ++f) {
        int d = emb.face(f).degree();
        Rational c = system == ChargeSystem::Deg7 ? Rational(d - 4) : Rational(f == ctx.f0 ? 2 * d + 6 : 2 * d - 6);
        L.initial[Element::face(f)] = c;
        total += c;
    }
    if (total > Rational(0)) throw std::logic_error("initial charge sum is positive: " + to_string(total));
    L.final = L.initial;
    return L;
}

R2Choice deg7_r2(int du, int dv, int dw, int fuv, int fuw, int fvw) {
    struct Option {
        const char* tag;
        bool applies;
        std::array<Rational, 3> out;
    };
    using R = Rational;
    const Option table[] = {
        {"R2.1", du <= 4, {R(0), R(1, 2), R(1, 2)}},
        {"R2.2", du >= 6 || (du == 5 && dv == 5 && dw == 5), {R(1, 3), R(1, 3), R(1, 3)}},
        {"R2.3", du == 5 && dv == 5 && dw == 6, {R(1, 6), R(1, 6), R(2, 3)}},
        {"R2.4", du == 5 && dv == 5 && dw >= 7,
         (fuw >= 4 || fvw >= 4) ? std::array{R(3, 14), R(3, 14), R(4, 7)} : std::array{R(2, 7), R(2, 7), R(3, 7)}},
        {"R2.5", du == 5 && dv == 6 && dw == 6,
         fuv == 3 && fuw == 3 ? std::array{R(1, 3), R(1, 3), R(1, 3)}
         : fuv == 3           ? std::array{R(1, 6), R(1, 3), R(1, 2)}
         : fuw == 3           ? std::array{R(1, 6), R(1, 2), R(1, 3)}
                              : std::array{R(1, 6), R(5, 12), R(5, 12)}},
        {"R2.6", du == 5 && dv == 6 && dw >= 7,
         fuw >= 4   ? std::array{R(1, 14), R(2, 7), R(9, 14)}
         : fuv >= 4 ? std::array{R(1, 14), R(1, 2), R(3, 7)}
                    : std::array{R(5, 21), R(1, 3), R(3, 7)}},
        {"R2.7", du == 5 && dv >= 7 && dw >= dv, {R(1, 7), R(3, 7), R(3, 7)}},
    };
    if (!(du <= dv && dv <= dw)) throw std::invalid_argument("deg7_r2: degrees must be sorted");
    const Option* pick = nullptr;
    for (const auto& o : table) {
        if (!o.applies) continue;
        if (pick) throw RuleConflict(std::string("3-face matches ") + pick->tag + " and " + o.tag);
        pick = &o;
    }
    if (!pick)
        throw RuleConflict("3-face with degrees " + std::to_string(du) + "," + std::to_string(dv) + "," +
                           std::to_string(dw) + " matches no R2 sub-rule");
    return {pick->tag, pick->out};
}

std::pair<Rational, const char*> deg10_r4(int dv, int f1, bool lo1, int f2, bool lo2) {
    bool two_tri = f1 == 3 && f2 == 3;
    bool tri_lo = (f1 == 3 && lo2) || (f2 == 3 && lo1);
    if (dv == 3 && two_tri) return {Rational(1), "R4.1"};
    if (dv == 3 && tri_lo) return {Rational(1, 2), "R4.1"};
    if (dv == 4 && two_tri) return {Rational(1, 2), "R4.2"};
    if (dv == 5 && two_tri) return {Rational(1, 5), "R4.3"};
    return {Rational(0), nullptr};
}

namespace {

class RuleRunner {
public:
    RuleRunner(const StructuralContext& ctx, ChargeLedger& L) : ctx_(ctx), g_(ctx.graph()), emb_(ctx.embedding), L_(L) {}

    void send(Element from, Element to, Rational amount, const std::string& rule) {
        if (amount == Rational(0)) return;
        L_.transfers.push_back({from, to, amount, rule});
        L_.final[from] -= amount;
        L_.final[to] += amount;
    }

    int deg(VertexId v) const { return g_.degree(v); }
    int fdeg(FaceId f) const { return emb_.face(f).degree(); }
    bool in_h(VertexId v) const { return !ctx_.in_n(v); }

    FaceId across(EdgeId e, FaceId f) const {
        auto [a, b] = emb_.faces_of_edge(e);
        return a == f ? b : a;
    }

    std::vector<VertexId> distinct_on(FaceId f) const {
        std::vector<VertexId> w = emb_.face(f).walk;
        std::sort(w.begin(), w.end());
        w.erase(std::unique(w.begin(), w.end()), w.end());
        return w;
    }

    void deg7() {
        for (VertexId v : g_.vertices())  // R1
            if (in_h(v) && deg(v) == 3)
                for (VertexId u : g_.neighbors(v)) send(Element::vertex(u), Element::vertex(v), Rational(1, 3), "R1");

        for (FaceId f = 0; f < emb_.num_faces(); ++f) {
            const Face& face = emb_.face(f);
            if (face.degree() != 3) continue;
            int in_n = 0;
            for (VertexId v : face.walk) in_n += ctx_.in_n(v);
            if (in_n > 0) {  // R3; R2 needs all three in H
                for (VertexId v : face.walk)
                    if (ctx_.in_n(v)) send(Element::vertex(v), Element::face(f), 1, "R3");
                continue;
            }
            r2(f, face);
        }

        FaceId f0 = ctx_.f0;
        for (VertexId v : ctx_.N) {  // R4
            if (deg(v) == 1)
                send(Element::face(f0), Element::vertex(v), 1, "R4");
            else if (fdeg(f0) >= 6)
                send(Element::face(f0), Element::vertex(v), Rational(1, 2), "R4");
        }
    }

    void r2(FaceId f, const Face& face) {
        std::array<VertexId, 3> s{face.walk[0], face.walk[1], face.walk[2]};
        std::sort(s.begin(), s.end(), [&](VertexId a, VertexId b) { return std::pair(deg(a), a) < std::pair(deg(b), b); });
        auto [u, v, w] = s;
        auto edge_face = [&](VertexId a, VertexId b) { return fdeg(across(g_.find_edge(a, b), f)); };
        R2Choice c = deg7_r2(deg(u), deg(v), deg(w), edge_face(u, v), edge_face(u, w), edge_face(v, w));
        for (int i = 0; i < 3; ++i) send(Element::vertex(s[i]), Element::face(f), c.amounts[i], c.rule);
    }

    bool lo_face(FaceId f) const {
        if (f == ctx_.f0 || fdeg(f) != 4) return false;
        int small = 0;
        for (VertexId v : distinct_on(f)) small += in_h(v) && deg(v) <= 5;
        return small >= 2;
    }

    void deg10() {
        const FaceId f0 = ctx_.f0;
        for (VertexId v : distinct_on(f0)) {  // R1
            if (ctx_.in_n(v))
                send(Element::face(f0), Element::vertex(v), deg(v) == 1 ? 5 : 4, "R1.1");
            else
                send(Element::face(f0), Element::vertex(v), 1 + emb_.t_count(f0, v), "R1.2");
        }
        for (FaceId f = 0; f < emb_.num_faces(); ++f) {  // R2
            if (f == f0 || fdeg(f) < 4) continue;
            bool lo = lo_face(f);
            for (VertexId v : distinct_on(f))
                if (in_h(v) && deg(v) <= 5)
                    send(Element::face(f), Element::vertex(v), lo ? 1 : 2 * emb_.t_count(f, v), "R2");
        }
        for (EdgeId e : g_.edges()) {
            auto [f1, f2] = emb_.faces_of_edge(e);
            if (f1 == f0 || f2 == f0) continue;
            auto [a, b] = g_.ends(e);
            for (auto [v, w] : {std::pair{a, b}, std::pair{b, a}}) {
                if (ctx_.in_n(v)) {
                    send(Element::vertex(v), Element::vertex(w), 1, "R3");
                    continue;
                }
                // R4: w gives to the 5--vertex v, both in H
                if (!in_h(w) || deg(v) > 5) continue;
                if (f1 == f2) continue;
                auto [amount, rule] = deg10_r4(deg(v), fdeg(f1), lo_face(f1), fdeg(f2), lo_face(f2));
                if (rule) send(Element::vertex(w), Element::vertex(v), amount, rule);
            }
        }
    }

private:
    const StructuralContext& ctx_;
    const Graph& g_;
    const PlaneEmbedding& emb_;
    ChargeLedger& L_;
};

}  // namespace

ChargeLedger run_rules(const StructuralContext& ctx, ChargeSystem system) {
    ChargeLedger L = initial_charges(ctx, system);
    RuleRunner r(ctx, L);
    if (system == ChargeSystem::Deg7)
        r.deg7();
    else
        r.deg10();
    return L;
}

AuditReport audit(const StructuralContext& ctx, const ChargeLedger& L) {
    AuditReport rep;
    for (const auto& [x, c] : L.initial) rep.total_initial += c;
    for (const auto& [x, c] : L.final) rep.total_final += c;
    rep.conserved = rep.total_initial == rep.total_final;

    std::map<Element, Rational> replay = L.initial;
    for (const auto& t : L.transfers) {
        replay[t.from] -= t.amount;
        replay[t.to] += t.amount;
    }
    rep.balanced = replay == L.final;

    for (const auto& [x, c] : L.final) {
        if (c < Rational(0)) rep.negative.push_back(x);
        if (L.system == ChargeSystem::Deg10 && x.kind == Element::Kind::Vertex && c > Rational(0) && !ctx.in_n(x.id))
            rep.witness.push_back(x.id);
    }
    return rep;
}

namespace {

std::string label(Element x) { return (x.kind == Element::Kind::Vertex ? "v" : "f") + std::to_string(x.id + (x.kind == Element::Kind::Vertex)); }

}  // namespace

std::string format_report(const StructuralContext& ctx, const ChargeLedger& L, const AuditReport& rep) {
    std::ostringstream out;
    out << "system " << to_string(L.system) << "\n";
    out << "N:";
    for (VertexId v : ctx.N) out << " v" << v + 1;
    out << "\nf0: " << label(Element::face(ctx.f0)) << " degree " << ctx.embedding.face(ctx.f0).degree() << "\n";
    out << "charges (initial -> final):\n";
    for (const auto& [x, c] : L.initial) out << "  " << label(x) << " " << to_string(c) << " -> " << to_string(L.final.at(x)) << "\n";
    out << "transfers:\n";
    for (const auto& t : L.transfers)
        out << "  " << t.rule << " " << label(t.from) << " -> " << label(t.to) << " " << to_string(t.amount) << "\n";
    out << "conservation: initial " << to_string(rep.total_initial) << " final " << to_string(rep.total_final)
        << (rep.conserved && rep.balanced ? " ok" : " VIOLATED") << "\n";
    out << "negative:";
    if (rep.negative.empty()) out << " none";
    for (Element x : rep.negative) out << " " << label(x);
    out << "\n";
    if (L.system == ChargeSystem::Deg10) {
        out << "positive H-vertices:";
        if (rep.witness.empty()) out << " none";
        for (VertexId v : rep.witness) out << " v" << v + 1;
        out << "\n";
    }
    return out.str();
}

namespace {

using Tri = std::array<VertexId, 3>;

bool has(const Tri& t, VertexId v) { return t[0] == v || t[1] == v || t[2] == v; }

VertexId third(const Tri& t, VertexId a, VertexId b) {
    for (VertexId v : t)
        if (v != a && v != b) return v;
    return -1;
}

// Stacked triangulation followed by degree-levelling flips.
void balanced_triangulation(int n, SplitRng& rng, Graph& g, std::vector<Tri>& tris) {
    g = Graph(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) g.add_edge(i, j);
    tris = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    while (g.num_vertices() < n) {
        size_t t = rng.below(tris.size());
        auto [a, b, c] = tris[t];
        VertexId v = g.add_vertex();
        g.add_edge(v, a), g.add_edge(v, b), g.add_edge(v, c);
        tris[t] = {a, b, v};
        tris.push_back({b, c, v});
        tris.push_back({a, c, v});
    }
    const int rounds = rng.between(2, 20) * n;
    for (int r = 0; r < rounds; ++r) {
        size_t t = rng.below(tris.size());
        int k = rng.between(0, 2);
        VertexId a = tris[t][k], b = tris[t][(k + 1) % 3];
        size_t s = 0;
        while (s < tris.size() && (s == t || !has(tris[s], a) || !has(tris[s], b))) ++s;
        if (s == tris.size()) continue;
        VertexId c = third(tris[t], a, b), d = third(tris[s], a, b);
        if (c == d || g.adjacent(c, d) || g.degree(a) <= 3 || g.degree(b) <= 3) continue;
        if (g.degree(a) + g.degree(b) < g.degree(c) + g.degree(d) + 3) continue;
        g.delete_edge(g.find_edge(a, b));
        g.add_edge(c, d);
        tris[t] = {a, c, d};
        tris[s] = {b, c, d};
    }
}

}  // namespace

std::optional<StructuralContext> random_context(ChargeSystem system, int base, SplitRng& rng) {
    const int bound = system == ChargeSystem::Deg7 ? 10 : 12;
    Graph g;
    std::vector<Tri> tris;
    balanced_triangulation(std::max(4, rng.between(std::max(4, base / 2), std::max(4, base))), rng, g, tris);

    const VertexId first_added = g.vertex_capacity();  // added 3-vertices may be removed during repair
    std::vector<char> skip(tris.size(), 0);
    if (system == ChargeSystem::Deg7) {
        double fraction = rng.unit();
        for (auto& s : skip) s = rng.unit() >= fraction;
    } else {
        // A 3-vertex needs neighbours of degree >= 9, so a base vertex of
        // degree d may keep at most 2d - 9 of its faces empty.
        std::vector<int> budget(g.vertex_capacity());
        for (VertexId v : g.vertices()) budget[v] = 2 * g.degree(v) - 9;
        double q = 0.5 * rng.unit();
        for (size_t i = 0; i < tris.size(); ++i) {
            const Tri& t = tris[i];
            bool room = budget[t[0]] > 0 && budget[t[1]] > 0 && budget[t[2]] > 0;
            if (room && rng.unit() < q) {
                skip[i] = 1;
                for (VertexId v : t) --budget[v];
            }
        }
    }
    for (size_t i = 0; i < tris.size(); ++i) {
        if (skip[i]) continue;
        VertexId c = g.add_vertex();
        for (VertexId v : tris[i]) g.add_edge(c, v);
    }
    auto stell = [&](VertexId v) { return v >= first_added; };

    std::vector<VertexId> N;
    std::vector<VertexId> pool;
    if (rng.unit() < 0.6 && g.num_vertices() > 6) {
        // open a larger f0 by deleting a base vertex
        std::vector<VertexId> base_vs;
        for (VertexId v : g.vertices())
            if (!stell(v)) base_vs.push_back(v);
        VertexId x = base_vs[rng.below(base_vs.size())];
        pool = g.neighbors(x);
        g.delete_vertex(x);
    } else {
        const Tri& t = tris[rng.below(tris.size())];
        pool = {t[0], t[1], t[2]};
    }
    int want = rng.between(1, 3);
    for (size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
    for (VertexId v : pool) {
        if (static_cast<int>(N.size()) == want) break;
        bool ok = true;
        for (VertexId u : N) ok = ok && !g.adjacent(u, v);
        if (ok) N.push_back(v);
    }
    std::vector<char> in_n(g.vertex_capacity(), 0);
    for (VertexId v : N) in_n[v] = 1;

    // Remove added 3-vertices that break (a) or (b); give up on anything else.
    for (bool changed = true; changed;) {
        changed = false;
        for (VertexId v : g.vertices()) {
            if (in_n[v]) continue;
            VertexId kill = -1;
            if (g.degree(v) < 3) {
                if (!stell(v)) return std::nullopt;
                kill = v;
            } else {
                for (VertexId w : g.neighbors(v))
                    if (!in_n[w] && g.degree(v) + g.degree(w) < bound) {
                        if (stell(v))
                            kill = v;
                        else if (stell(w))
                            kill = w;
                        else
                            return std::nullopt;
                        break;
                    }
            }
            if (kill >= 0) {
                g.delete_vertex(kill);
                changed = true;
                break;
            }
        }
    }
    for (VertexId v : N)
        if (g.degree(v) == 0) return std::nullopt;
    if (!is_connected(g)) return std::nullopt;

    std::vector<VertexId> old;
    Graph c = compact(g, &old);
    std::vector<VertexId> cn;
    for (VertexId i = 0; i < static_cast<VertexId>(old.size()); ++i)
        if (in_n[old[i]]) cn.push_back(i);
    StructuralContext ctx;
    try {
        ctx = make_context(c, cn);
    } catch (const HypothesisViolation&) {
        return std::nullopt;
    }
    if (check_hypotheses(ctx, system)) return std::nullopt;
    return ctx;
}

}  // namespace tcol
