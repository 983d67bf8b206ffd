#pragma once

#include <critsurf/embedded_graph.hpp>
#include <critsurf/graph.hpp>
#include <critsurf/surgery.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace critsurf {

/// Colors are 1..3; 0 marks a vertex without a color.
using Coloring = std::vector<int>;
/// Indexed by vertex; ring vertices carry a color, every other vertex 0.
using Precoloring = std::vector<int>;

/// Backtracking 3-coloring over colour domains (bit c-1 set = colour c allowed).
/// The branching vertex is the unassigned one with fewest colours left, lowest index first.
class ColorSolver {
public:
    explicit ColorSolver(int n) : adj_(static_cast<std::size_t>(n)), domain_(static_cast<std::size_t>(n), 7) {}

    void add_edge(int u, int v);
    void restrict_domain(int v, std::uint8_t mask) { domain_[static_cast<std::size_t>(v)] &= mask; }

    std::optional<Coloring> solve() const;

private:
    std::vector<std::vector<int>> adj_;
    std::vector<std::uint8_t> domain_;
};

std::optional<Coloring> three_color(const Graph& g);
bool is_three_colorable(const Graph& g);
/// Calls `visit` on every proper 3-colouring, in lexicographic order of the colour
/// vector; stops early when `visit` returns false. Returns the number visited.
long for_each_three_coloring(const Graph& g, const std::function<bool(const Coloring&)>& visit);

/// Checks that φ colours exactly the ring vertices and is proper on the ring edges;
/// throws ImproperPrecoloring.
void check_precoloring(const EmbeddedGraph& g, const Precoloring& phi);

/// Extension of φ: weak vertex rings must change colour, every other ring vertex keeps it.
/// `edge_mask`, when given, selects the edges of a spanning subgraph.
std::optional<Coloring> extend(const EmbeddedGraph& g, const Precoloring& phi,
                               const std::vector<char>* edge_mask = nullptr);

/// Proper colourings of the ring subgraph, one per orbit of colour permutations:
/// each is the first of its orbit in the order that assigns colours in order of first use.
std::vector<Precoloring> ring_precolorings(const EmbeddedGraph& g);

/// A maximal proper subgraph containing the rings: one non-ring edge or one isolated
/// non-ring vertex removed.
struct Deletion {
    enum class Kind { Edge, Vertex } kind = Kind::Edge;
    int id = -1;

    friend bool operator==(const Deletion&, const Deletion&) = default;
};

struct CriticalityWitness {
    Deletion deletion;
    Precoloring phi; ///< extends to G minus the deletion but not to G
};

struct CriticalityCertificate {
    bool verdict = false;
    std::vector<CriticalityWitness> witnesses;  ///< one per deletion when verdict holds
    std::optional<Deletion> counterexample;     ///< a deletion without a witness
    bool equals_ring_subgraph = false;          ///< G consists of its rings only
};

std::vector<Deletion> maximal_deletions(const EmbeddedGraph& g);

/// Certifies R-criticality by searching ring precolorings on every maximal proper
/// subgraph. Work is split across `jobs` threads; the result does not depend on `jobs`.
CriticalityCertificate is_R_critical(const EmbeddedGraph& g, int jobs = 1);

/// Replays every witness with two extension calls.
bool verify_certificate(const EmbeddedGraph& g, const CriticalityCertificate& cert);

/// Edge-minimal subgraph containing the rings to which φ does not extend, obtained by
/// deleting edges greedily in increasing id order and then isolated non-ring vertices.
SubgraphView phi_critical_subgraph(const EmbeddedGraph& g, const Precoloring& phi);

/// Not 3-colourable while every proper subgraph is.
bool is_4_critical(const Graph& g);

} // namespace critsurf
