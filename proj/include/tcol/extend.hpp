#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tcol/catalog.hpp"
#include "tcol/coloring.hpp"

namespace tcol {

enum class Procedure { E5, E6, D4, D5, E7, E8Case1, E8Sub21, E8Sub22, Generic };

std::string to_string(Procedure p);

// A reducible instance with the reduction its extension expects: the
// reduced graph is G minus the listed vertices and edges plus the listed
// new edges.
struct ExtensionInstance {
    Procedure procedure = Procedure::Generic;
    std::string source;  // config name, "small-vertex", "light-edge", ...
    std::map<std::string, VertexId> at;
    std::vector<VertexId> delete_vertices;
    std::vector<std::pair<VertexId, VertexId>> delete_edges;
    std::vector<std::pair<VertexId, VertexId>> add_edges;

    VertexId operator[](const std::string& role) const;
};

// Thrown when G does not have the shape a procedure assumes.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Chooses the reduction for r. D5 with {x,y,z} independent becomes E5 on
// v, w; E8 picks its case from the adjacencies at x and relabels so that
// the case's normal form holds.
ExtensionInstance plan_extension(const Graph& g, const ReducibleInstance& r,
                                 const std::vector<ConfigurationPattern>& catalog = default_catalog());

ExtensionInstance make_instance(const Graph& g, Procedure p, std::map<std::string, VertexId> roles,
                                std::string source = "");

// Keeps every surviving id of g; added edges get fresh ids.
Graph reduced_graph(const Graph& g, const ExtensionInstance& inst);

// Each extension takes a coloring psi of reduced_graph(g, inst) (nice or
// complete) and returns a nice coloring of g for the given threshold.
// A state the argument rules out raises ImpossibleBranch.
TotalColoring extend_E5(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold);
TotalColoring extend_E6(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold);
TotalColoring extend_D4(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold);
TotalColoring extend_D5(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold);
TotalColoring extend_E7(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold);
TotalColoring extend_E8(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold);

struct GenericBudget {
    long nodes = 100000;
    int kempe_chain = 3;
    long local_nodes = 1000000;
};

struct GenericStats {
    long nodes = 0;
    int kempe_swaps = 0;
    bool used_local = false;
};

// Bounded search with Kempe swaps, then backtracking over the radius-2
// neighbourhood. Throws ColoringError when everything is exhausted.
TotalColoring generic_extend(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold,
                             GenericBudget budget = {}, GenericStats* stats = nullptr);

// Counts of the proof branches taken, collected while installed. Per thread.
struct BranchLog {
    std::map<std::string, long> hits;
};
// Returns the previously installed log.
BranchLog* set_branch_log(BranchLog* log);

// Dispatches on inst.procedure.
TotalColoring extend(const Graph& g, const ExtensionInstance& inst, const TotalColoring& psi, int threshold);

// The coloring psi of the reduced graph restricted to g, as a nice coloring
// with vertices of degree below the threshold in g uncolored.
TotalColoring lift(const Graph& g, const Graph& reduced, const TotalColoring& psi, int threshold);

}  // namespace tcol
