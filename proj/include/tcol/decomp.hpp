#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcol/graph.hpp"
#include "tcol/minor.hpp"

namespace tcol {

enum class PartKind { Planar, Wagner };

struct TreeDecomposition {
    Graph tree;                                // node t <-> parts[t]
    std::vector<std::vector<VertexId>> parts;  // sorted host ids
    std::vector<PartKind> kinds;
    std::vector<std::pair<VertexId, VertexId>> fill_edges;  // u < v, not in the host
};

// Thrown by decompose when the input has a K5 minor; carries the model when
// the search could produce one.
class NotK5MinorFree : public GraphError {
public:
    NotK5MinorFree(const std::string& what, std::optional<MinorModel> witness)
        : GraphError(what), witness(std::move(witness)) {}
    std::optional<MinorModel> witness;
};

TreeDecomposition decompose(const Graph& g);

// Host plus fill edges, restricted to one part.
Graph part_graph(const Graph& g, const TreeDecomposition& d, int t);

// Empty string when (T1)-(T3), separator, and part-kind conditions all hold.
std::string check_decomposition(const Graph& g, const TreeDecomposition& d);

// Glues the parts back together with k_sum along the tree and removes the
// fill edges. `old_id[v]` is the host id of result vertex v.
Graph recompose(const Graph& g, const TreeDecomposition& d, std::vector<VertexId>* old_id = nullptr);

std::string to_json(const TreeDecomposition& d);
const char* to_string(PartKind k);

}  // namespace tcol
