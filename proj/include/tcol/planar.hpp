#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcol/graph.hpp"

namespace tcol {

using FaceId = int;

struct Face {
    // walk[i] --edges[i]--> walk[i+1]; closed. An isolated vertex has a
    // face with walk {v} and no edges.
    std::vector<VertexId> walk;
    std::vector<EdgeId> edges;
    int degree() const { return static_cast<int>(edges.size()); }
};

class PlaneEmbedding {
public:
    PlaneEmbedding() = default;
    // rotation[v] lists the edges at v in cyclic order. Faces are traced and
    // canonicalized; the outer face is the largest one (lowest id on ties).
    PlaneEmbedding(const Graph& g, std::vector<std::vector<EdgeId>> rotation);

    const Graph& graph() const { return g_; }
    const std::vector<EdgeId>& rotation(VertexId v) const { return rot_[v]; }
    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(FaceId f) const { return faces_.at(f); }
    int num_faces() const { return static_cast<int>(faces_.size()); }
    FaceId outer_face() const { return outer_; }
    void set_outer_face(FaceId f);

    // Face on the side of e traversed when leaving `from` along e.
    FaceId face_of_dart(VertexId from, EdgeId e) const;
    // The two faces incident with e (equal for a cut-edge).
    std::pair<FaceId, FaceId> faces_of_edge(EdgeId e) const;
    // Faces around v in rotation order, one per corner (with multiplicity).
    std::vector<FaceId> faces_at(VertexId v) const;
    int t_count(FaceId f, VertexId v) const;
    bool on_face(FaceId f, VertexId v) const;
    // Successor of e in the rotation at v.
    EdgeId next_at(VertexId v, EdgeId e) const;

private:
    int dart(VertexId from, EdgeId e) const;

    Graph g_;
    std::vector<std::vector<EdgeId>> rot_;
    std::vector<int> dart_pos_;  // index of the dart's edge in rot_[from]
    std::vector<Face> faces_;
    std::vector<FaceId> dart_face_;
    std::vector<FaceId> isolated_face_;
    FaceId outer_ = -1;
};

std::optional<PlaneEmbedding> test_planarity(const Graph& g);
bool is_planar(const Graph& g);
// Embedding with every required vertex on the outer face, or nullopt when
// no embedding has them on a common face.
std::optional<PlaneEmbedding> embed_with_outer_face(const Graph& g, const std::vector<VertexId>& required);

// Reference oracle: tries every rotation system. Throws GraphError when the
// number of rotation systems exceeds `limit`.
bool brute_force_planar(const Graph& g, long long limit = 5'000'000);

// "f <id>: v1 ... vk" per face, 1-based labels in vertex order.
std::string dump_faces(const PlaneEmbedding& emb);

}  // namespace tcol
