#pragma once

#include <critsurf/coloring.hpp>
#include <critsurf/embedded_graph.hpp>
#include <critsurf/graph.hpp>
#include <critsurf/weights.hpp>

#include <string>
#include <utility>
#include <vector>

namespace critsurf {

struct DeletionStep {
    std::string rule;   ///< "i" .. "v"
    std::string detail;
    int genus = 0;      ///< Euler genus of the graph the rule was applied to
    int vertices = 0;
};

struct DeletionResult {
    std::vector<int> x;           ///< sorted
    std::vector<DeletionStep> steps;
    Coloring certificate;         ///< colours of G - X; 0 on X
    int genus = 0;
    Rational beta;                ///< max(5 kappa, 4)

    Rational bound() const { return beta * genus; }
    bool within_bound() const { return Rational(static_cast<long>(x.size())) <= bound(); }
    /// `rule=<i> detail=...` per step.
    std::vector<std::string> trace() const;
    std::string to_text() const;
};

/// Vertex-disjoint 4-critical subgraphs, found greedily: the least non-3-colourable
/// remainder is shrunk by deleting edges in increasing order while it stays
/// non-3-colourable, and its vertices are removed before the next round.
struct Packing {
    std::vector<std::vector<int>> vertices;
    std::vector<std::vector<std::pair<int, int>>> edges;

    bool empty() const { return vertices.empty(); }
};
Packing max_4critical_packing(const Graph& g);

/// A set X with G - X 3-colourable, following the five rules of the induction on the
/// cellular closure of the embedding. Throws HasTriangle for graphs with a triangle and
/// ColoringFailed if the final colouring cannot be found; violated structural claims
/// raise PropertyViolated.
DeletionResult deletion_set(const EmbeddedGraph& g, const Rational& kappa);

} // namespace critsurf
