#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tcol {

using VertexId = int;
using EdgeId = int;

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Incidence {
    VertexId to;
    EdgeId edge;
};

struct EdgeEnds {
    VertexId u;
    VertexId v;
};

// Simple undirected graph. Ids are slots that stay valid until the element
// is deleted; deleted slots are never reused.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    VertexId add_vertex();
    // Returns the edge id and whether a new edge was created. Re-adding an
    // existing pair is a no-op that returns the existing id.
    std::pair<EdgeId, bool> add_edge(VertexId u, VertexId v);
    void delete_edge(EdgeId e);
    void delete_vertex(VertexId v);
    // Moves y's edges onto x (same ids; duplicates and loops dropped), then
    // deletes y.
    void merge_vertex(VertexId x, VertexId y);

    bool has_vertex(VertexId v) const;
    bool has_edge(EdgeId e) const;
    EdgeId find_edge(VertexId u, VertexId v) const;  // -1 if absent
    bool adjacent(VertexId u, VertexId v) const { return find_edge(u, v) >= 0; }

    int degree(VertexId v) const;
    const std::vector<Incidence>& incident(VertexId v) const;
    std::vector<VertexId> neighbors(VertexId v) const;
    EdgeEnds ends(EdgeId e) const;
    VertexId other(EdgeId e, VertexId v) const;

    int num_vertices() const { return n_alive_; }
    int num_edges() const { return m_alive_; }
    // Upper bounds on ids, for sizing per-element arrays.
    int vertex_capacity() const { return static_cast<int>(adj_.size()); }
    int edge_capacity() const { return static_cast<int>(edges_.size()); }

    std::vector<VertexId> vertices() const;
    std::vector<EdgeId> edges() const;

    int max_degree() const;
    int min_degree() const;

private:
    void check_vertex(VertexId v) const;
    void check_edge(EdgeId e) const;

    std::vector<std::vector<Incidence>> adj_;
    std::vector<char> valive_;
    std::vector<EdgeEnds> edges_;
    std::vector<char> ealive_;
    int n_alive_ = 0;
    int m_alive_ = 0;
};

int degree(const Graph& g, VertexId v);

// x and y must be distinct and nonadjacent. The merged vertex keeps id x;
// edges from y are moved to x (same edge id) unless they would duplicate one.
Graph identify(const Graph& g, VertexId x, VertexId y);
// Merged vertex keeps the smaller endpoint id.
Graph contract_edge(const Graph& g, EdgeId e);
// Keeps the ids of the retained vertices and edges.
Graph induced_subgraph(const Graph& g, const std::vector<VertexId>& keep);
// Same graph with ids renumbered 0..n-1, 0..m-1 in increasing old-id order.
Graph compact(const Graph& g, std::vector<VertexId>* old_of_new = nullptr);

bool is_connected(const Graph& g);
std::vector<std::vector<VertexId>> components(const Graph& g);

struct TotalElement {
    enum class Kind { Vertex, Edge };
    Kind kind;
    int id;

    static TotalElement vertex(VertexId v) { return {Kind::Vertex, v}; }
    static TotalElement edge(EdgeId e) { return {Kind::Edge, e}; }
    bool is_vertex() const { return kind == Kind::Vertex; }
    bool operator==(const TotalElement&) const = default;
};

bool conflicting(const Graph& g, TotalElement a, TotalElement b);

// "p tgf n m" / "e u v" with 1-based labels; "c" lines are comments.
Graph read_tgf(std::istream& in);
Graph read_tgf_file(const std::string& path);
void write_tgf(std::ostream& out, const Graph& g);
std::string to_tgf(const Graph& g);

}  // namespace tcol
