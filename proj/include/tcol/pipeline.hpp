#pragma once

#include <map>
#include <string>
#include <vector>

#include "tcol/catalog.hpp"
#include "tcol/coloring.hpp"
#include "tcol/extend.hpp"

namespace tcol {

struct PipelineStats {
    int levels = 0;
    std::map<std::string, int> sources;  // reductions by instance source
    std::map<std::string, int> procedures;
};

// Reduce to the empty graph with find_reducible, then extend back up one
// level at a time. k must be at least Delta+1 and at least 11 (Delta1) or
// 9 (TCC7).
TotalColoring reduction_coloring(const Graph& g, ReduceMode mode, int k, PipelineStats* stats = nullptr,
                                 bool verify_levels = false);

struct ColorOptions {
    int exact_budget = 40;
    bool check_minor = true;
    bool verify_levels = false;
};

struct ColorResult {
    TotalColoring coloring;
    int max_degree = 0;
    int bound = 0;         // Delta+1 or Delta+2; 0 when there is no guarantee
    std::string method;    // "delta1", "tcc7", "exact", "greedy"
    bool guaranteed = false;
    PipelineStats stats;
};

// Delta >= 10: Delta+1 colors. 7 <= Delta <= 9: Delta+2 colors. Smaller
// Delta: the exact oracle when the graph is small enough, else a greedy
// coloring with no bound. Throws NotK5MinorFree on a K5 minor.
ColorResult color_k5_minor_free(const Graph& g, const ColorOptions& options = {});

// Deletes every 2-vertex; one whose neighbours are nonadjacent is replaced
// by an edge between them. Vertex ids are kept.
struct Suppression {
    Graph graph;
    std::vector<VertexId> removed;
    std::map<VertexId, EdgeId> added;  // 2-vertex -> new edge in graph, for the nonadjacent case
};

// Refuses (PreconditionError) when some vertex has two 2-neighbours or two
// 2-vertices are adjacent.
Suppression suppress_two_vertices(const Graph& g);

}  // namespace tcol
