#include "tcol/planar.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace tcol {

int PlaneEmbedding::dart(VertexId from, EdgeId e) const {
    return 2 * e + (g_.ends(e).u == from ? 0 : 1);
}

PlaneEmbedding::PlaneEmbedding(const Graph& g, std::vector<std::vector<EdgeId>> rotation)
    : g_(g), rot_(std::move(rotation)) {
    rot_.resize(g_.vertex_capacity());
    dart_pos_.assign(2 * g_.edge_capacity(), -1);
    for (VertexId v : g_.vertices()) {
        if (static_cast<int>(rot_[v].size()) != g_.degree(v))
            throw GraphError("rotation at vertex " + std::to_string(v) + " does not match its degree");
        for (int i = 0; i < static_cast<int>(rot_[v].size()); ++i) {
            EdgeId e = rot_[v][i];
            auto [a, b] = g_.ends(e);
            if (a != v && b != v) throw GraphError("rotation lists a non-incident edge");
            dart_pos_[dart(v, e)] = i;
        }
    }

    std::vector<char> seen(2 * g_.edge_capacity(), 0);
    std::vector<Face> raw;
    for (VertexId v : g_.vertices()) {
        if (g_.degree(v) == 0) {
            raw.push_back({{v}, {}});
            continue;
        }
        for (EdgeId e0 : rot_[v]) {
            if (seen[dart(v, e0)]) continue;
            Face f;
            VertexId x = v;
            EdgeId e = e0;
            while (!seen[dart(x, e)]) {
                seen[dart(x, e)] = 1;
                f.walk.push_back(x);
                f.edges.push_back(e);
                VertexId y = g_.other(e, x);
                e = next_at(y, e);
                x = y;
            }
            // rotate to the smallest (vertex, edge) dart
            size_t best = 0;
            for (size_t i = 1; i < f.walk.size(); ++i)
                if (std::pair(f.walk[i], f.edges[i]) < std::pair(f.walk[best], f.edges[best])) best = i;
            std::rotate(f.walk.begin(), f.walk.begin() + best, f.walk.end());
            std::rotate(f.edges.begin(), f.edges.begin() + best, f.edges.end());
            raw.push_back(std::move(f));
        }
    }
    auto key = [](const Face& f) { return std::pair(f.walk[0], f.edges.empty() ? -1 : f.edges[0]); };
    std::sort(raw.begin(), raw.end(), [&](const Face& a, const Face& b) { return key(a) < key(b); });
    faces_ = std::move(raw);

    dart_face_.assign(2 * g_.edge_capacity(), -1);
    isolated_face_.assign(g_.vertex_capacity(), -1);
    for (FaceId f = 0; f < num_faces(); ++f) {
        const Face& fc = faces_[f];
        if (fc.edges.empty()) isolated_face_[fc.walk[0]] = f;
        for (size_t i = 0; i < fc.edges.size(); ++i) dart_face_[dart(fc.walk[i], fc.edges[i])] = f;
    }
    outer_ = faces_.empty() ? -1 : 0;
    for (FaceId f = 1; f < num_faces(); ++f)
        if (faces_[f].degree() > faces_[outer_].degree()) outer_ = f;
}

void PlaneEmbedding::set_outer_face(FaceId f) {
    if (f < 0 || f >= num_faces()) throw GraphError("invalid face id " + std::to_string(f));
    outer_ = f;
}

EdgeId PlaneEmbedding::next_at(VertexId v, EdgeId e) const {
    const auto& r = rot_[v];
    int i = dart_pos_[dart(v, e)];
    return r[(i + 1) % r.size()];
}

FaceId PlaneEmbedding::face_of_dart(VertexId from, EdgeId e) const {
    return dart_face_.at(dart(from, e));
}

std::pair<FaceId, FaceId> PlaneEmbedding::faces_of_edge(EdgeId e) const {
    auto [u, v] = g_.ends(e);
    return {face_of_dart(u, e), face_of_dart(v, e)};
}

std::vector<FaceId> PlaneEmbedding::faces_at(VertexId v) const {
    if (g_.degree(v) == 0) return {isolated_face_[v]};
    std::vector<FaceId> out;
    for (EdgeId e : rot_[v]) out.push_back(face_of_dart(v, e));
    return out;
}

int PlaneEmbedding::t_count(FaceId f, VertexId v) const {
    int t = static_cast<int>(std::count(face(f).walk.begin(), face(f).walk.end(), v));
    if (t == 0) throw GraphError("vertex " + std::to_string(v) + " is not on face " + std::to_string(f));
    return t;
}

bool PlaneEmbedding::on_face(FaceId f, VertexId v) const {
    const auto& w = face(f).walk;
    return std::find(w.begin(), w.end(), v) != w.end();
}

namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;

std::optional<std::vector<std::vector<EdgeId>>> boost_rotation(const Graph& g) {
    std::vector<VertexId> vs = g.vertices();
    std::vector<int> idx(g.vertex_capacity(), -1);
    for (int i = 0; i < static_cast<int>(vs.size()); ++i) idx[vs[i]] = i;
    BoostGraph bg(vs.size());
    std::vector<EdgeId> ours;
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.ends(e);
        boost::add_edge(idx[u], idx[v], static_cast<int>(ours.size()), bg);
        ours.push_back(e);
    }
    using EdgeDesc = boost::graph_traits<BoostGraph>::edge_descriptor;
    std::vector<std::vector<EdgeDesc>> emb(vs.size());
    if (vs.empty()) return std::vector<std::vector<EdgeId>>(g.vertex_capacity());
    bool ok = boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                                  boost::boyer_myrvold_params::embedding = &emb[0]);
    if (!ok) return std::nullopt;
    std::vector<std::vector<EdgeId>> rot(g.vertex_capacity());
    auto eidx = get(boost::edge_index, bg);
    for (size_t i = 0; i < vs.size(); ++i)
        for (const auto& ed : emb[i]) rot[vs[i]].push_back(ours[eidx[ed]]);
    return rot;
}

}  // namespace

std::optional<PlaneEmbedding> test_planarity(const Graph& g) {
    if (g.num_vertices() >= 3 && g.num_edges() > 3 * g.num_vertices() - 6) return std::nullopt;
    auto rot = boost_rotation(g);
    if (!rot) return std::nullopt;
    return PlaneEmbedding(g, std::move(*rot));
}

bool is_planar(const Graph& g) { return test_planarity(g).has_value(); }

std::optional<PlaneEmbedding> embed_with_outer_face(const Graph& g, const std::vector<VertexId>& required) {
    if (required.empty()) return test_planarity(g);
    for (VertexId v : required)
        if (!g.has_vertex(v)) throw GraphError("embed_with_outer_face: invalid vertex id");
    Graph h = g;
    VertexId apex = h.add_vertex();
    for (VertexId v : required) h.add_edge(apex, v);
    auto rot = boost_rotation(h);
    if (!rot) return std::nullopt;
    // Remove the apex edges from the rotations; the faces around the apex
    // merge into one face that contains every required vertex.
    std::vector<std::vector<EdgeId>> r(g.vertex_capacity());
    for (VertexId v : g.vertices())
        for (EdgeId e : (*rot)[v])
            if (g.has_edge(e)) r[v].push_back(e);
    PlaneEmbedding emb(g, std::move(r));
    VertexId w = required.front();
    FaceId outer;
    if (g.degree(w) == 0) {
        outer = emb.faces_at(w).front();
    } else {
        // corner at w that used to hold the apex edge
        const auto& full = (*rot)[w];
        auto it = std::find_if(full.begin(), full.end(), [&](EdgeId e) { return !g.has_edge(e); });
        EdgeId after = -1;
        for (size_t k = 1; k <= full.size(); ++k) {
            EdgeId e = full[(it - full.begin() + k) % full.size()];
            if (g.has_edge(e)) {
                after = e;
                break;
            }
        }
        outer = emb.face_of_dart(w, after);
    }
    emb.set_outer_face(outer);
    for (VertexId v : required)
        if (!emb.on_face(outer, v)) return std::nullopt;
    return emb;
}

bool brute_force_planar(const Graph& g, long long limit) {
    std::vector<VertexId> vs = g.vertices();
    long long total = 1;
    std::vector<std::vector<EdgeId>> rot(g.vertex_capacity());
    for (VertexId v : vs) {
        for (const auto& i : g.incident(v)) rot[v].push_back(i.edge);
        std::sort(rot[v].begin(), rot[v].end());
        for (int k = 2; k < g.degree(v); ++k) {
            total *= k;
            if (total > limit) throw GraphError("brute_force_planar: too many rotation systems");
        }
    }
    int comps = static_cast<int>(components(g).size());
    int want = g.num_edges() - g.num_vertices() + 2 * comps;

    std::vector<int> dart_pos(2 * g.edge_capacity());
    std::vector<char> seen(2 * g.edge_capacity());
    auto dart = [&](VertexId from, EdgeId e) { return 2 * e + (g.ends(e).u == from ? 0 : 1); };
    auto count_faces = [&]() {
        for (VertexId v : vs)
            for (int i = 0; i < static_cast<int>(rot[v].size()); ++i) dart_pos[dart(v, rot[v][i])] = i;
        std::fill(seen.begin(), seen.end(), 0);
        int faces = 0;
        for (VertexId v : vs) {
            if (rot[v].empty()) {
                ++faces;
                continue;
            }
            for (EdgeId e0 : rot[v]) {
                if (seen[dart(v, e0)]) continue;
                ++faces;
                VertexId x = v;
                EdgeId e = e0;
                while (!seen[dart(x, e)]) {
                    seen[dart(x, e)] = 1;
                    VertexId y = g.other(e, x);
                    const auto& r = rot[y];
                    e = r[(dart_pos[dart(y, e)] + 1) % r.size()];
                    x = y;
                }
            }
        }
        return faces;
    };
    // odometer over permutations of rot[v][1..]
    while (true) {
        if (count_faces() == want) return true;
        size_t i = 0;
        for (; i < vs.size(); ++i) {
            auto& r = rot[vs[i]];
            if (r.size() > 2 && std::next_permutation(r.begin() + 1, r.end())) break;
        }
        if (i == vs.size()) return false;
    }
}

std::string dump_faces(const PlaneEmbedding& emb) {
    const Graph& g = emb.graph();
    std::vector<int> label(g.vertex_capacity(), 0);
    int next = 1;
    for (VertexId v : g.vertices()) label[v] = next++;
    std::ostringstream out;
    for (FaceId f = 0; f < emb.num_faces(); ++f) {
        out << "f " << f << ':';
        for (VertexId v : emb.face(f).walk) out << ' ' << label[v];
        out << '\n';
    }
    return out.str();
}

}  // namespace tcol
