#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "tcol/generators.hpp"
#include "tcol/planar.hpp"

namespace tcol {

using Rational = boost::rational<long long>;

enum class ChargeSystem { Deg7, Deg10 };

struct Element {
    enum class Kind { Vertex, Face };
    Kind kind;
    int id;
    auto operator<=>(const Element&) const = default;
    static Element vertex(VertexId v) { return {Kind::Vertex, v}; }
    static Element face(FaceId f) { return {Kind::Face, f}; }
};

struct Transfer {
    Element from, to;
    Rational amount;
    std::string rule;  // "R2.4", "R4.1", ...
};

struct ChargeLedger {
    ChargeSystem system = ChargeSystem::Deg7;
    std::map<Element, Rational> initial;
    std::vector<Transfer> transfers;
    std::map<Element, Rational> final;
};

// A connected plane graph with the excluded set N on the face f0.
struct StructuralContext {
    PlaneEmbedding embedding;
    std::vector<VertexId> N;  // sorted
    FaceId f0 = -1;

    const Graph& graph() const { return embedding.graph(); }
    bool in_n(VertexId v) const;
    // N as a membership mask, the shape the matcher wants.
    std::vector<char> excluded() const;
};

class HypothesisViolation : public std::runtime_error {
public:
    HypothesisViolation(const std::string& what, Element element) : std::runtime_error(what), element(element) {}
    Element element;
};

class RuleConflict : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Embeds g with all of N on one face and takes that face as f0. Throws
// HypothesisViolation if N is not an independent set of 1..3 vertices on a
// common face, or if g is not connected and planar.
StructuralContext make_context(const Graph& g, std::vector<VertexId> N);

// Empty when the context meets the hypotheses for this system:
// minimum degree 1, H has an edge, H-vertices have degree >= 3, and H-edges
// have degree sum >= 10 (Deg7) or >= 12 (Deg10).
std::optional<HypothesisViolation> check_hypotheses(const StructuralContext& ctx, ChargeSystem system);

ChargeLedger initial_charges(const StructuralContext& ctx, ChargeSystem system);
ChargeLedger run_rules(const StructuralContext& ctx, ChargeSystem system);

// R2 of the degree-7 system for a 3-face of H with degrees du <= dv <= dw
// and the degrees of the faces across uv, uw, vw. Amounts are (u, v, w).
struct R2Choice {
    std::string rule;
    std::array<Rational, 3> amounts;
};
R2Choice deg7_r2(int du, int dv, int dw, int fuv, int fuw, int fvw);

// R4 of the degree-10 system: what an H-neighbour sends to the H-vertex of
// degree dv across an edge whose faces have the given degrees and lo flags.
// The tag is null when nothing is sent.
std::pair<Rational, const char*> deg10_r4(int dv, int f1, bool lo1, int f2, bool lo2);

struct AuditReport {
    Rational total_initial, total_final;
    bool conserved = false;
    std::vector<Element> negative;
    // Deg10 only: H-vertices with positive final charge.
    std::vector<VertexId> witness;
    bool balanced = true;  // final(x) matches initial(x) plus the transfer log
};

AuditReport audit(const StructuralContext& ctx, const ChargeLedger& ledger);

// Text report with 1-based vertex labels, exact fractions and rule tags.
std::string format_report(const StructuralContext& ctx, const ChargeLedger& ledger, const AuditReport& report);

// Random connected plane context meeting the hypotheses of `system`, built
// from a degree-balanced triangulation on `base` vertices with some faces
// stellated and possibly one vertex removed to open a larger f0. Returns
// nullopt when an attempt could not be repaired into a valid context.
std::optional<StructuralContext> random_context(ChargeSystem system, int base, SplitRng& rng);

std::string to_string(ChargeSystem s);
std::string to_string(const Rational& r);

}  // namespace tcol
