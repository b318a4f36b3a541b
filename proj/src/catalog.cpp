#include "tcol/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#ifndef TCOL_DATA_DIR
#define TCOL_DATA_DIR "data"
#endif

namespace tcol {

int ConfigurationPattern::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (vertices[i].label == label) return i;
    return -1;
}

bool ConfigurationPattern::may_coincide(int a, int b) const {
    auto in = [](const std::vector<int>& s, int x) { return std::find(s.begin(), s.end(), x) != s.end(); };
    for (const auto& d : distinct)
        if ((in(d.a, a) && in(d.b, b)) || (in(d.a, b) && in(d.b, a))) return true;
    return false;
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw CatalogError("line " + std::to_string(line) + ": " + msg);
}

DegreeSpec parse_degree(const std::string& s, int line) {
    if (s == "*") return {};
    DegreeSpec d;
    std::string num = s;
    d.kind = DegreeSpec::Kind::Exact;
    if (!num.empty() && num.back() == '+') {
        d.kind = DegreeSpec::Kind::AtLeast;
        num.pop_back();
    }
    try {
        size_t used = 0;
        d.value = std::stoi(num, &used);
        if (used != num.size() || d.value < 0) throw std::invalid_argument(num);
    } catch (const std::exception&) {
        fail(line, "bad degree '" + s + "'");
    }
    return d;
}

std::string field(const std::string& tok, const std::string& key, int line) {
    if (tok.rfind(key + "=", 0) != 0) fail(line, "expected " + key + "=...");
    return tok.substr(key.size() + 1);
}

bool yes_no(const std::string& s, const std::string& yes, const std::string& no, int line) {
    if (s == yes) return true;
    if (s == no) return false;
    fail(line, "expected " + yes + " or " + no + ", got '" + s + "'");
}

void finish(ConfigurationPattern& p, int line) {
    if (p.vertices.empty()) fail(line, "configuration " + p.name + " has no vertices");
    if (!is_connected(p.pattern)) fail(line, "configuration " + p.name + " is not connected");
    for (int i = 0; i < p.size(); ++i) {
        const auto& v = p.vertices[i];
        int pd = p.pattern.degree(i);
        if (v.deg.kind == DegreeSpec::Kind::Exact && v.deg.value < pd)
            fail(line, "vertex " + v.label + " has more pattern edges than its degree");
        if (v.solid && !v.deg.accepts(pd))
            fail(line, "solid vertex " + v.label + " cannot have its pattern degree");
    }
}

}  // namespace

std::vector<ConfigurationPattern> parse_catalog(std::istream& in) {
    std::vector<ConfigurationPattern> out;
    std::optional<ConfigurationPattern> cur;
    std::string raw;
    int line = 0;
    auto vertex_of = [&](const std::string& label) {
        int i = cur->index_of(label);
        if (i < 0) fail(line, "unknown vertex '" + label + "'");
        return i;
    };
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ss(raw);
        std::string kw;
        if (!(ss >> kw) || kw[0] == '#') continue;
        if (kw == "config") {
            if (cur) fail(line, "missing 'end' before new config");
            cur.emplace();
            if (!(ss >> cur->name)) fail(line, "config needs a name");
            for (const auto& p : out)
                if (p.name == cur->name) fail(line, "duplicate config " + cur->name);
            continue;
        }
        if (!cur) fail(line, "'" + kw + "' outside a config block");
        if (kw == "vertex") {
            std::string label, d, m, h;
            if (!(ss >> label >> d >> m >> h)) fail(line, "vertex needs label deg= mark= in_h=");
            if (cur->index_of(label) >= 0) fail(line, "duplicate vertex '" + label + "'");
            PatternVertex v;
            v.label = label;
            v.deg = parse_degree(field(d, "deg", line), line);
            v.solid = yes_no(field(m, "mark", line), "solid", "open", line);
            v.in_h = yes_no(field(h, "in_h", line), "yes", "no", line);
            cur->vertices.push_back(v);
            cur->pattern.add_vertex();
        } else if (kw == "edge" || kw == "nonedge") {
            std::string a, b;
            if (!(ss >> a >> b)) fail(line, kw + " needs two vertices");
            int ia = vertex_of(a), ib = vertex_of(b);
            if (ia == ib) fail(line, "loop at '" + a + "'");
            if (kw == "edge") {
                if (!cur->pattern.add_edge(ia, ib).second) fail(line, "repeated edge " + a + " " + b);
            } else {
                cur->nonedges.push_back({ia, ib});
            }
        } else if (kw == "distinct_atmost") {
            DistinctAtMost d;
            if (!(ss >> d.k) || d.k < 0) fail(line, "distinct_atmost needs a bound");
            std::string rest;
            std::getline(ss, rest);
            std::vector<std::vector<int>> sets;
            size_t pos = 0;
            while ((pos = rest.find('{', pos)) != std::string::npos) {
                size_t close = rest.find('}', pos);
                if (close == std::string::npos) fail(line, "unclosed '{'");
                std::istringstream items(rest.substr(pos + 1, close - pos - 1));
                std::vector<int> s;
                for (std::string lab; items >> lab;) s.push_back(vertex_of(lab));
                sets.push_back(s);
                pos = close + 1;
            }
            if (sets.size() != 2) fail(line, "distinct_atmost needs exactly two sets");
            d.a = sets[0];
            d.b = sets[1];
            cur->distinct.push_back(d);
        } else if (kw == "end") {
            for (auto [a, b] : cur->nonedges)
                if (cur->pattern.adjacent(a, b)) fail(line, "pair is both edge and nonedge");
            finish(*cur, line);
            out.push_back(std::move(*cur));
            cur.reset();
        } else {
            fail(line, "unknown keyword '" + kw + "'");
        }
    }
    if (cur) fail(line, "missing 'end' for " + cur->name);
    return out;
}

std::vector<ConfigurationPattern> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open " + path);
    return parse_catalog(in);
}

std::vector<ConfigurationPattern> load_catalog() {
    return load_catalog(std::string(TCOL_DATA_DIR) + "/configurations.txt");
}

const std::vector<ConfigurationPattern>& default_catalog() {
    static const std::vector<ConfigurationPattern> cat = load_catalog();
    return cat;
}

const ConfigurationPattern& find_pattern(const std::vector<ConfigurationPattern>& catalog,
                                         const std::string& name) {
    for (const auto& p : catalog)
        if (p.name == name) return p;
    throw CatalogError("no configuration named " + name);
}

namespace {

bool is_excluded(const std::vector<char>& ex, VertexId v) {
    return v < static_cast<int>(ex.size()) && ex[v];
}

bool vertex_ok(const Graph& g, const ConfigurationPattern& p, int i, VertexId h,
               const std::vector<char>& excluded) {
    const auto& pv = p.vertices[i];
    int d = g.degree(h);
    if (!pv.deg.accepts(d)) return false;
    if (pv.solid && d != p.pattern.degree(i)) return false;
    if (pv.in_h && is_excluded(excluded, h)) return false;
    return true;
}

bool overlap_ok(const ConfigurationPattern& p, const Embedding& emb) {
    for (const auto& d : p.distinct) {
        int shared = 0;
        for (int a : d.a)
            for (int b : d.b)
                if (emb[a] == emb[b]) ++shared;
        if (shared > d.k) return false;
    }
    return true;
}

}  // namespace

std::vector<Embedding> match_pattern(const Graph& g, const ConfigurationPattern& p,
                                     const std::vector<char>& excluded, size_t limit) {
    const int k = p.size();
    std::vector<std::vector<VertexId>> cand(k);
    for (int i = 0; i < k; ++i)
        for (VertexId h : g.vertices())
            if (vertex_ok(g, p, i, h, excluded)) cand[i].push_back(h);
    for (const auto& c : cand)
        if (c.empty()) return {};

    // anchor on the rarest vertex, then grow along pattern edges
    std::vector<int> order;
    std::vector<char> placed(k, 0);
    int anchor = 0;
    for (int i = 1; i < k; ++i)
        if (cand[i].size() < cand[anchor].size()) anchor = i;
    order.push_back(anchor);
    placed[anchor] = 1;
    std::vector<int> parent(k, -1);
    while (static_cast<int>(order.size()) < k) {
        int best = -1, via = -1;
        for (int i = 0; i < k; ++i) {
            if (placed[i]) continue;
            for (VertexId j : p.pattern.neighbors(i))
                if (placed[j] && (best < 0 || cand[i].size() < cand[best].size())) {
                    best = i;
                    via = j;
                    break;
                }
        }
        order.push_back(best);
        placed[best] = 1;
        parent[best] = via;
    }
    std::vector<int> pos(k);
    for (int t = 0; t < k; ++t) pos[order[t]] = t;

    std::vector<Embedding> out;
    Embedding emb(k, -1);
    std::function<bool(int)> rec = [&](int t) -> bool {
        if (t == k) {
            if (!overlap_ok(p, emb)) return false;
            out.push_back(emb);
            return limit && out.size() >= limit;
        }
        int i = order[t];
        std::vector<VertexId> pool = parent[i] < 0 ? cand[i] : g.neighbors(emb[parent[i]]);
        for (VertexId h : pool) {
            if (parent[i] >= 0 && !vertex_ok(g, p, i, h, excluded)) continue;
            bool ok = true;
            for (int s = 0; s < t && ok; ++s) {
                int r = order[s];
                if (emb[r] == h && !p.may_coincide(i, r)) ok = false;
            }
            for (VertexId r : p.pattern.neighbors(i))
                if (ok && pos[r] < t && (emb[r] == h || !g.adjacent(h, emb[r]))) ok = false;
            for (auto [a, b] : p.nonedges) {
                if (!ok) break;
                int r = a == i ? b : b == i ? a : -1;
                if (r >= 0 && pos[r] < t && (emb[r] == h || g.adjacent(h, emb[r]))) ok = false;
            }
            if (!ok) continue;
            emb[i] = h;
            if (rec(t + 1)) return true;
            emb[i] = -1;
        }
        return false;
    };
    rec(0);
    return out;
}

std::optional<Embedding> first_match(const Graph& g, const ConfigurationPattern& p,
                                     const std::vector<char>& excluded) {
    auto all = match_pattern(g, p, excluded, 1);
    if (all.empty()) return std::nullopt;
    return all.front();
}

std::string check_embedding(const Graph& g, const ConfigurationPattern& p, const Embedding& emb,
                            const std::vector<char>& excluded) {
    if (static_cast<int>(emb.size()) != p.size()) return "embedding has the wrong size";
    for (int i = 0; i < p.size(); ++i) {
        const std::string& lab = p.vertices[i].label;
        if (!g.has_vertex(emb[i])) return lab + " maps to a missing vertex";
        if (!p.vertices[i].deg.accepts(g.degree(emb[i]))) return lab + " has the wrong degree";
        if (p.vertices[i].solid && g.degree(emb[i]) != p.pattern.degree(i))
            return lab + " has edges outside the pattern";
        if (p.vertices[i].in_h && is_excluded(excluded, emb[i])) return lab + " lies in the excluded set";
        for (int j = i + 1; j < p.size(); ++j)
            if (emb[i] == emb[j] && !p.may_coincide(i, j)) return lab + " and " + p.vertices[j].label + " coincide";
    }
    for (EdgeId e : p.pattern.edges()) {
        auto [a, b] = p.pattern.ends(e);
        if (!g.adjacent(emb[a], emb[b])) return "missing edge " + p.vertices[a].label + " " + p.vertices[b].label;
    }
    for (auto [a, b] : p.nonedges)
        if (emb[a] == emb[b] || g.adjacent(emb[a], emb[b]))
            return "forbidden edge " + p.vertices[a].label + " " + p.vertices[b].label;
    if (!overlap_ok(p, emb)) return "distinctness bound exceeded";
    return {};
}

namespace {

std::optional<ThreeVertexPair> three_vertex_pair(const Graph& g) {
    std::vector<int> seen(g.vertex_capacity(), 0);
    std::vector<std::vector<VertexId>> via(g.vertex_capacity());
    for (VertexId u : g.vertices()) {
        if (g.degree(u) != 3) continue;
        std::vector<VertexId> touched;
        for (VertexId x : g.neighbors(u))
            for (VertexId v : g.neighbors(x)) {
                if (v == u || g.degree(v) != 3) continue;
                if (via[v].empty()) touched.push_back(v);
                via[v].push_back(x);
            }
        std::optional<ThreeVertexPair> hit;
        for (VertexId v : touched) {
            if (!hit && via[v].size() >= 2) hit = ThreeVertexPair{u, v, via[v]};
            via[v].clear();
        }
        if (hit) return hit;
    }
    return std::nullopt;
}

}  // namespace

ReducibleInstance find_reducible(const Graph& g, ReduceMode mode,
                                 const std::vector<ConfigurationPattern>& catalog) {
    const bool tcc = mode == ReduceMode::TCC7;
    const int small = tcc ? 2 : 1;
    const int light = tcc ? 9 : 11;
    for (VertexId v : g.vertices())
        if (g.degree(v) <= small) return SmallVertex{v, g.degree(v)};
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.ends(e);
        if (g.degree(u) + g.degree(v) <= light) return LightEdge{u, v, light};
    }
    if (tcc)
        if (auto pair = three_vertex_pair(g)) return *pair;
    for (const auto& p : catalog) {
        char series = p.name.empty() ? '?' : p.name[0];
        bool wanted = tcc ? series == 'A' : (series == 'D' || series == 'E');
        if (!wanted) continue;
        if (auto emb = first_match(g, p)) return ConfigMatch{p.name, *emb};
    }
    throw StructureViolation(std::string("no reducible configuration found (mode ") + (tcc ? "tcc7" : "delta1") +
                             ", n=" + std::to_string(g.num_vertices()) + ", m=" + std::to_string(g.num_edges()) + ")");
}

std::string describe(const ReducibleInstance& r, const std::vector<ConfigurationPattern>& catalog) {
    std::ostringstream os;
    if (auto* s = std::get_if<SmallVertex>(&r)) {
        os << "small-vertex " << s->v + 1 << " degree " << s->degree;
    } else if (auto* l = std::get_if<LightEdge>(&r)) {
        os << "light-edge " << l->u + 1 << " " << l->v + 1 << " bound " << l->bound;
    } else if (auto* t = std::get_if<ThreeVertexPair>(&r)) {
        os << "three-vertex-pair " << t->u + 1 << " " << t->v + 1 << " common";
        for (VertexId c : t->common) os << " " << c + 1;
    } else {
        const auto& c = std::get<ConfigMatch>(r);
        const auto& p = find_pattern(catalog, c.name);
        os << c.name;
        for (int i = 0; i < p.size(); ++i) os << " " << p.vertices[i].label << "=" << c.embedding[i] + 1;
    }
    return os.str();
}

}  // namespace tcol
