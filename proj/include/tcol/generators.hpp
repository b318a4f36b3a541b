#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tcol/graph.hpp"

namespace tcol {

Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph star_graph(int leaves);
Graph petersen_graph();
Graph icosahedron_graph();
Graph octahedron_graph();

// Counter-based stream keyed by (seed, stream); splitting never touches a
// shared state.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0) : key_(seed), stream_(stream) {}
    std::uint64_t next();
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n);
    int between(int lo, int hi);  // inclusive
    double unit();
    SplitRng split(std::uint64_t tag) const;

private:
    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

struct NamedSpec {
    std::string name;  // k<n>, c<n>, p<n>, star<n>, k<a>_<b>, petersen, icosahedron, octahedron, wagner
};
struct TriangulationSpec {
    int n;
};
struct CliqueSumSpec {
    int parts;
    int min_part = 4;
    int max_part = 12;
    double wagner_probability = 0.2;
    // Inflate degrees until the maximum degree reaches this value (0: off).
    int target_max_degree = 0;
};
struct GenSpec {
    std::uint64_t seed = 1;
    std::variant<NamedSpec, TriangulationSpec, CliqueSumSpec> kind;
};

Graph named_graph(const std::string& name);
// Stacked triangulation: K4, then repeatedly a new vertex inside a random face.
Graph planar_triangulation(int n, SplitRng& rng);
// Puts a new 3-vertex inside each triangular face of a planar graph with
// probability `fraction` (1.0 gives the Kleetope).
Graph stellate(const Graph& g, double fraction, SplitRng& rng);
Graph k5_minor_free_sum(const CliqueSumSpec& spec, SplitRng& rng);
Graph generate(const GenSpec& spec);

}  // namespace tcol
