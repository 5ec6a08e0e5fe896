#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "papp/model.hpp"
#include "papp/rules.hpp"

namespace papp {

struct Graph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges; // normalized u < v, unique

    int degree(int v) const;
    int max_degree() const;
    bool is_cubic() const;
    void validate() const;
};

// Edge-list format: "vertices: <count>" then one "u v" pair per line ('#'
// starts a comment).
Graph parse_graph(const std::string& text);
std::string serialize_graph(const Graph& graph);

/// A bundled instance from the worked-example corpus.
struct WorkedExample {
    std::string id;
    Election election;
    bool below_threshold = false; // parameter below the instance's guarantee
};

std::vector<std::string> worked_example_ids();

/// Builds the election for `id`. Parameterized ids (seqpav-jr, av-jr, mav-jr,
/// seqphragmen-ejr, stv-ejr, greedyav-pjr, monroe-pjr) accept a k override;
/// fixed ids reject one. Unknown id -> StructuralError.
WorkedExample worked_example(const std::string& id, std::optional<int> k = std::nullopt);

struct GoldenCheck {
    std::string name;
    bool pass = false;
};

/// Evaluates the expectations bundled with an example (shares, committees,
/// axiom verdicts, traced table values) against the live implementations.
std::vector<GoldenCheck> run_golden_checks(const std::string& id,
                                           std::optional<int> k = std::nullopt,
                                           const RuleOptions& options = {});

/// Independent-set reduction: one party per vertex, one voter per edge,
/// deg(G)-deg(v) dummy voters per vertex, k = t. A committee with PAV score
/// >= deg(G)*t exists iff the graph has an independent set of size t.
/// Rejects edgeless graphs (no voters) and t outside 1..|V|.
std::pair<Election, Rat> reduce_is_to_pav(const Graph& graph, int t);

/// Cubic-graph variant: one party per vertex, one voter per edge, k = t; a
/// load distribution with maximal voter load <= 1/3 exists iff an independent
/// set of size t does. `require_cubic` may be relaxed for diagnostic use.
Election reduce_is_to_maxphragmen(const Graph& graph, int t, bool require_cubic = true);

enum class BallotModel { uniform, blocks, clustered };
BallotModel ballot_model_from_name(const std::string& name);

/// Seeded, reproducible elections. `density` controls approval probability
/// (uniform), the number of blocks (blocks: round(density*parties)), and the
/// prototype density (clustered). Every ballot is nonempty.
Election random_election(uint64_t seed, long long n, int parties, int k, BallotModel model,
                         double density);

} // namespace papp
