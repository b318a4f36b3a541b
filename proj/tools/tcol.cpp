#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tcol/decomp.hpp"
#include "tcol/discharging.hpp"
#include "tcol/generators.hpp"
#include "tcol/minor.hpp"
#include "tcol/pipeline.hpp"

using namespace tcol;
using nlohmann::json;

namespace {

// exit codes
constexpr int kOk = 0, kNegative = 1, kUsage = 2, kBreach = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Graph load_graph(const std::string& path) {
    if (path.empty() || path == "-") return read_tgf(std::cin);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return read_tgf(in);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json model_json(const MinorModel& m) {
    json sets = json::array();
    for (const auto& s : m.branch_sets) {
        json one = json::array();
        for (VertexId v : s) one.push_back(v + 1);
        sets.push_back(one);
    }
    return {{"target", to_string(m.target)}, {"branch_sets", sets}};
}

json instance_json(const ReducibleInstance& r) {
    auto label = [](VertexId v) { return v + 1; };
    json j;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SmallVertex>) {
                j = {{"kind", "small-vertex"}, {"v", label(x.v)}, {"degree", x.degree}};
            } else if constexpr (std::is_same_v<T, LightEdge>) {
                j = {{"kind", "light-edge"}, {"u", label(x.u)}, {"v", label(x.v)}, {"bound", x.bound}};
            } else if constexpr (std::is_same_v<T, ThreeVertexPair>) {
                json common = json::array();
                for (VertexId c : x.common) common.push_back(label(c));
                j = {{"kind", "three-vertex-pair"}, {"u", label(x.u)}, {"v", label(x.v)}, {"common", common}};
            } else {
                const auto& p = find_pattern(default_catalog(), x.name);
                json roles = json::object();
                for (int i = 0; i < p.size(); ++i) roles[p.vertices[i].label] = label(x.embedding[i]);
                j = {{"kind", "config"}, {"name", x.name}, {"roles", roles}};
            }
        },
        r);
    j["description"] = describe(r);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Total coloring of K5-minor-free graphs"};
    app.require_subcommand(1);

    std::string input;
    long long budget = 0;

    auto* chi = app.add_subcommand("chi", "exact total chromatic number with a witness");
    chi->add_option("graph", input, "graph file (stdin if omitted)");
    int exact_budget = 40;
    chi->add_option("--budget", exact_budget, "largest |V|+|E| the oracle accepts")->capture_default_str();

    auto* color = app.add_subcommand("color", "color a K5-minor-free graph");
    color->add_option("graph", input);
    ColorOptions copt;
    color->add_option("--budget", copt.exact_budget, "exact oracle budget for small Delta")->capture_default_str();
    color->add_flag("--verify-levels", copt.verify_levels, "verify after every extension step");

    auto* ver = app.add_subcommand("verify", "check a coloring against a graph");
    std::string coloring_path;
    ver->add_option("graph", input)->required();
    ver->add_option("coloring", coloring_path)->required();
    bool need_complete = false;
    ver->add_flag("--complete", need_complete, "also require every element colored");

    auto* dec = app.add_subcommand("decompose", "clique-sum decomposition into planar and Wagner parts");
    dec->add_option("graph", input);

    auto* mnr = app.add_subcommand("minor", "search for a K5 or K3,3 minor");
    mnr->add_option("graph", input);
    std::string target = "k5", expect;
    mnr->add_option("--target", target)->check(CLI::IsMember({"k5", "k33"}))->capture_default_str();
    mnr->add_option("--expect", expect, "exit 1 unless the answer matches")->check(CLI::IsMember({"present", "absent"}));
    budget = 1'000'000;
    mnr->add_option("--budget", budget, "search node limit")->capture_default_str();

    auto* fc = app.add_subcommand("find-config", "find a reducible configuration");
    fc->add_option("graph", input);
    std::string mode = "delta1";
    fc->add_option("--mode", mode)->check(CLI::IsMember({"tcc7", "delta1"}))->capture_default_str();

    auto* dis = app.add_subcommand("discharge", "run a discharging system on a plane context");
    dis->add_option("graph", input);
    std::string system = "deg7";
    std::vector<int> nset;
    dis->add_option("--system", system)->check(CLI::IsMember({"deg7", "deg10"}))->capture_default_str();
    dis->add_option("--n", nset, "excluded vertices, 1-based")->delimiter(',')->allow_extra_args(false)->required();

    auto* gen = app.add_subcommand("gen", "emit a graph");
    std::string kind = "named", name = "k4";
    std::uint64_t seed = 1;
    int n = 20;
    CliqueSumSpec cs{4};
    gen->add_option("--kind", kind)->check(CLI::IsMember({"named", "triangulation", "clique-sum"}))->capture_default_str();
    gen->add_option("--name", name, "k<n>, c<n>, p<n>, star<n>, k<a>_<b>, petersen, wagner, ...");
    gen->add_option("--seed", seed)->capture_default_str();
    gen->add_option("--n", n, "triangulation size")->capture_default_str();
    gen->add_option("--parts", cs.parts)->capture_default_str();
    gen->add_option("--min-part", cs.min_part)->capture_default_str();
    gen->add_option("--max-part", cs.max_part)->capture_default_str();
    gen->add_option("--wagner", cs.wagner_probability)->capture_default_str();
    gen->add_option("--max-degree", cs.target_max_degree, "inflate degrees to this value")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kOk : kUsage;
    }

    try {
        if (*chi) {
            Graph g = load_graph(input);
            auto r = exact_chi_total(g, exact_budget);
            std::cout << r.chi << "\n" << to_json(g, r.witness) << "\n";
            return kOk;
        }
        if (*color) {
            Graph g = load_graph(input);
            ColorResult r;
            try {
                r = color_k5_minor_free(g, copt);
            } catch (const NotK5MinorFree& e) {
                std::cerr << e.what() << "\n";
                if (e.witness) std::cout << model_json(*e.witness).dump() << "\n";
                return kNegative;
            }
            std::cerr << "method " << r.method << ", Delta " << r.max_degree << ", k " << r.coloring.k
                      << (r.guaranteed ? "" : " (no bound)") << "\n";
            std::cout << to_json(g, r.coloring) << "\n";
            return kOk;
        }
        if (*ver) {
            Graph g = load_graph(input);
            TotalColoring tc;
            try {
                tc = coloring_from_json(g, slurp(coloring_path));
            } catch (const ColoringError& e) {
                std::cerr << "invalid: " << e.what() << "\n";
                return kNegative;
            }
            if (auto c = verify(g, tc)) {
                std::cerr << "invalid: " << describe(g, *c) << "\n";
                std::cout << "invalid\n";
                return kNegative;
            }
            if (need_complete && !is_complete(g, tc)) {
                std::cerr << "invalid: some elements are uncolored\n";
                std::cout << "invalid\n";
                return kNegative;
            }
            std::cout << "valid\n";
            return kOk;
        }
        if (*dec) {
            Graph g = load_graph(input);
            try {
                std::cout << to_json(decompose(g)) << "\n";
            } catch (const NotK5MinorFree& e) {
                std::cerr << e.what() << "\n";
                if (e.witness) std::cout << model_json(*e.witness).dump() << "\n";
                return kNegative;
            }
            return kOk;
        }
        if (*mnr) {
            Graph g = load_graph(input);
            auto m = has_minor(g, target == "k5" ? MinorTarget::K5 : MinorTarget::K33, budget);
            if (m)
                std::cout << model_json(*m).dump() << "\n";
            else
                std::cout << "absent\n";
            bool present = m.has_value();
            if (!expect.empty() && present != (expect == "present")) return kNegative;
            return kOk;
        }
        if (*fc) {
            Graph g = load_graph(input);
            auto r = find_reducible(g, mode == "tcc7" ? ReduceMode::TCC7 : ReduceMode::Delta1);
            std::cout << instance_json(r).dump() << "\n";
            return kOk;
        }
        if (*dis) {
            Graph g = load_graph(input);
            std::vector<VertexId> N;
            for (int v : nset) {
                if (v < 1 || !g.has_vertex(v - 1)) throw UsageError("no vertex " + std::to_string(v));
                N.push_back(v - 1);
            }
            ChargeSystem sys = system == "deg7" ? ChargeSystem::Deg7 : ChargeSystem::Deg10;
            StructuralContext ctx;
            try {
                ctx = make_context(g, N);
            } catch (const HypothesisViolation& e) {
                std::cerr << e.what() << "\n";
                return kNegative;
            }
            if (auto bad = check_hypotheses(ctx, sys)) {
                std::cerr << "hypotheses fail: " << bad->what() << "\n";
                return kNegative;
            }
            auto ledger = run_rules(ctx, sys);
            auto report = audit(ctx, ledger);
            std::cout << format_report(ctx, ledger, report);
            if (!report.conserved || !report.balanced) return kBreach;
            return kOk;
        }
        if (*gen) {
            GenSpec spec;
            spec.seed = seed;
            if (kind == "named")
                spec.kind = NamedSpec{name};
            else if (kind == "triangulation")
                spec.kind = TriangulationSpec{n};
            else
                spec.kind = cs;
            write_tgf(std::cout, generate(spec));
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const SearchBudgetExceeded& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error& e) {
        // ImpossibleBranch, RuleConflict and friends
        std::cerr << "internal invariant breach: " << e.what() << "\n";
        return kBreach;
    } catch (const ColoringError& e) {
        std::cerr << "internal invariant breach: " << e.what() << "\n";
        return kBreach;
    } catch (const StructureViolation& e) {
        std::cerr << "internal invariant breach: " << e.what() << "\n";
        return kBreach;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
