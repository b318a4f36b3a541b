#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tcol/graph.hpp"

namespace tcol {

class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DegreeSpec {
    enum class Kind { Exact, AtLeast, Any };
    Kind kind = Kind::Any;
    int value = 0;

    bool accepts(int d) const {
        return kind == Kind::Any || (kind == Kind::Exact ? d == value : d >= value);
    }
};

struct PatternVertex {
    std::string label;
    DegreeSpec deg;
    bool solid = false;  // host degree must equal the pattern degree
    bool in_h = false;   // must avoid the excluded set
};

// The images of `a` and `b` may share at most `k` host vertices. Vertices
// named in one of these constraints are the only ones allowed to coincide,
// and only across the two sets.
struct DistinctAtMost {
    int k = 0;
    std::vector<int> a, b;
};

struct ConfigurationPattern {
    std::string name;
    Graph pattern;
    std::vector<PatternVertex> vertices;
    std::vector<std::pair<int, int>> nonedges;
    std::vector<DistinctAtMost> distinct;

    int size() const { return static_cast<int>(vertices.size()); }
    int index_of(const std::string& label) const;  // -1 if absent
    bool may_coincide(int a, int b) const;
};

// pattern vertex index -> host vertex
using Embedding = std::vector<VertexId>;

std::vector<ConfigurationPattern> parse_catalog(std::istream& in);
std::vector<ConfigurationPattern> load_catalog(const std::string& path);
std::vector<ConfigurationPattern> load_catalog();  // the shipped file
const std::vector<ConfigurationPattern>& default_catalog();
const ConfigurationPattern& find_pattern(const std::vector<ConfigurationPattern>& catalog,
                                         const std::string& name);

// `excluded` is indexed by host vertex id; empty means nothing is excluded.
// limit = 0 returns every embedding.
std::vector<Embedding> match_pattern(const Graph& g, const ConfigurationPattern& p,
                                     const std::vector<char>& excluded = {}, size_t limit = 0);
std::optional<Embedding> first_match(const Graph& g, const ConfigurationPattern& p,
                                     const std::vector<char>& excluded = {});
// Empty string when the embedding satisfies every constraint.
std::string check_embedding(const Graph& g, const ConfigurationPattern& p, const Embedding& emb,
                            const std::vector<char>& excluded = {});

struct SmallVertex {
    VertexId v;
    int degree;
};
struct LightEdge {
    VertexId u, v;
    int bound;
};
struct ThreeVertexPair {
    VertexId u, v;
    std::vector<VertexId> common;
};
struct ConfigMatch {
    std::string name;
    Embedding embedding;
};
using ReducibleInstance = std::variant<SmallVertex, LightEdge, ThreeVertexPair, ConfigMatch>;

enum class ReduceMode { TCC7, Delta1 };

// No witness found although the hypotheses hold; this would refute the
// structural dichotomy, so callers treat it as a hard failure.
class StructureViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ReducibleInstance find_reducible(const Graph& g, ReduceMode mode,
                                 const std::vector<ConfigurationPattern>& catalog = default_catalog());

std::string describe(const ReducibleInstance& r, const std::vector<ConfigurationPattern>& catalog = default_catalog());

}  // namespace tcol
