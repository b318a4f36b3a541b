#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcol/graph.hpp"

namespace tcol {

enum class MinorTarget { K5, K33 };

struct MinorModel {
    MinorTarget target;
    // K5: five sets. K33: sides {0,1,2} and {3,4,5}.
    std::vector<std::vector<VertexId>> branch_sets;
};

class SearchBudgetExceeded : public GraphError {
public:
    using GraphError::GraphError;
};

// Exhaustive search over contractions. Planar inputs return immediately.
// Throws SearchBudgetExceeded after `budget` search states.
std::optional<MinorModel> has_minor(const Graph& g, MinorTarget target, long long budget = 1'000'000);
// Empty string when the model is valid, else the first violated condition.
std::string check_model(const Graph& g, const MinorModel& m);

// C8 plus the four antipodal chords.
Graph wagner_graph();
bool is_wagner(const Graph& g);

struct KSum {
    Graph graph;                    // g1's ids are kept
    std::vector<VertexId> from_g2;  // image of each g2 vertex id (-1 for dead ids)
};

// Identifies clique1[i] with clique2[i]; `drop` lists indices into the
// clique's pair order (0,1), (0,2), (1,2) of edges to delete afterwards.
KSum k_sum(const Graph& g1, const Graph& g2, const std::vector<VertexId>& clique1,
           const std::vector<VertexId>& clique2, const std::vector<int>& drop = {});

std::string to_string(MinorTarget t);

}  // namespace tcol
