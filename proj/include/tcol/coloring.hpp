#pragma once

#include <bitset>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcol/graph.hpp"

namespace tcol {

// Colors are 1..k; 0 means uncolored. Arrays are indexed by element id and
// may be shorter than the graph's capacity (missing entries are uncolored).
struct TotalColoring {
    int k = 0;
    std::vector<int> vertex;
    std::vector<int> edge;

    TotalColoring() = default;
    TotalColoring(const Graph& g, int k);

    int of_vertex(VertexId v) const { return v < static_cast<int>(vertex.size()) ? vertex[v] : 0; }
    int of_edge(EdgeId e) const { return e < static_cast<int>(edge.size()) ? edge[e] : 0; }
    int of(TotalElement x) const { return x.is_vertex() ? of_vertex(x.id) : of_edge(x.id); }
    void set_vertex(VertexId v, int c);
    void set_edge(EdgeId e, int c);
    void set(TotalElement x, int c) { x.is_vertex() ? set_vertex(x.id, c) : set_edge(x.id, c); }
};

class ColoringError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A branch the reducibility argument rules out was reached. The message
// carries a dump of the local state.
class ImpossibleBranch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Conflict {
    TotalElement a, b;
    int color;
};

// Conflicts among colored elements only; uncolored ones are ignored.
// Throws ColoringError on a color outside 1..k.
std::optional<Conflict> verify(const Graph& g, const TotalColoring& tc);
bool is_complete(const Graph& g, const TotalColoring& tc);
std::string describe(const Graph& g, const Conflict& c);

constexpr int kMaxColors = 255;
using ColorSet = std::bitset<kMaxColors + 1>;

// Colors on v and its incident edges.
ColorSet present(const Graph& g, const TotalColoring& tc, VertexId v);
// Colors 1..k not present at v.
ColorSet missing(const Graph& g, const TotalColoring& tc, VertexId v);
// Colors an uncolored element could take without a conflict.
ColorSet available(const Graph& g, const TotalColoring& tc, TotalElement x);

struct ChiResult {
    int chi;
    TotalColoring witness;
};

// Exhaustive; refuses when |V|+|E| exceeds the budget.
ChiResult exact_chi_total(const Graph& g, int budget = 40);
// Proper total coloring with exactly k colors, or nullopt.
std::optional<TotalColoring> exact_coloring(const Graph& g, int k, int budget = 40);

// Nice: every edge and every vertex of degree >= threshold is colored.
int nice_threshold_delta1();
int nice_threshold_tcc7();
bool is_nice(const Graph& g, const TotalColoring& tc, int threshold);
// Greedily colors the remaining vertices. Each uncolored vertex of degree
// below the threshold sees at most 2d < k colors when k is large enough.
void complete_nice(const Graph& g, TotalColoring& tc);
// Drops vertex colors below the threshold.
void make_nice(const Graph& g, TotalColoring& tc, int threshold);

enum class SwapScope {
    EdgePath,   // the a/b alternating path or cycle of edges through start
    Element,    // just start
    Component,  // the a/b component of the total graph through start
};

// Exchanges a and b on the chosen elements; an involution. Returns the
// number of elements recolored. EdgePath ignores vertex colors, so callers
// must keep the result proper themselves.
int kempe_swap(const Graph& g, TotalColoring& tc, int a, int b, TotalElement start, SwapScope scope);

// JSON with 1-based vertex labels:
// {"k": 4, "vertex_colors": {"1": 2}, "edge_colors": [[1, 2, 3]]}
std::string to_json(const Graph& g, const TotalColoring& tc);
TotalColoring coloring_from_json(const Graph& g, const std::string& text);

}  // namespace tcol
