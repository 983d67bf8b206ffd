#pragma once

#include <critsurf/coloring.hpp>
#include <critsurf/embedded_graph.hpp>
#include <critsurf/surgery.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace critsurf {

struct RingBound {
    bool bound = false;
    int clause = 0; ///< 1: short cycle around a vertex ring, 2: two rings, 3: opposite ring vertices
    std::string reason;
};

/// Throws NotA4Face unless f is an internal face bounded by a 4-cycle.
RingBound is_ring_bound(const EmbeddedGraph& g, int f);

/// Vertices of a 4-face in walk order; throws NotA4Face.
std::array<int, 4> face_quad(const EmbeddedGraph& g, int f);

/// One of the eight labelings of a 4-face: v1 is walk position `start`, and
/// `reversed` walks the face backwards from there.
struct QuadLabeling {
    int start = 0;
    bool reversed = false;
};

struct Collapse {
    EmbeddedGraph graph;
    std::array<int, 4> labels{}; ///< v1..v4 in the host
    int z = -1;
    std::vector<int> vertex_origin; ///< collapsed vertex -> host vertex (z -> v1)
    std::vector<int> edge_origin;   ///< collapsed edge -> kept host edge
    std::vector<int> vertex_image;  ///< host vertex -> collapsed vertex (v1, v3 -> z)
    std::vector<int> edge_image;    ///< host edge -> collapsed edge, parallel edges to the survivor
    std::vector<int> face_image;    ///< host face -> collapsed face; -1 for the collapsed face
};

/// Identifies v1 with v3 through the face and suppresses the parallel edges, keeping
/// ring edges first and then the smaller host id. Throws NotA4Face, Adjacent, RingBound
/// (both v1 and v3 on rings).
Collapse collapse_4face(const EmbeddedGraph& g, int f, QuadLabeling labeling = {});

/// Lifts a colouring of the collapsed graph back to the host.
Coloring lift_coloring(const Collapse& c, const Coloring& psi);

struct FlipWitness {
    std::array<int, 4> cycle{}; ///< w1 w2 w3 w4
    int ring = -1;              ///< ring surrounded on the side of f1
    int f1 = -1;                ///< face along w1 w2 w3, on the disk side
    int f2 = -1;                ///< face along w1 w4 w3, on the other side
};

/// Re-checks every flip condition; throws NotFlippable naming the first that fails.
void check_flippable(const EmbeddedGraph& g, const FlipWitness& w);
/// Witness built from a 4-cycle, trying both diagonals; throws NotFlippable.
FlipWitness flip_witness(const EmbeddedGraph& g, const std::vector<int>& cycle);
/// First flippable non-contractible 4-cycle, if any.
std::optional<FlipWitness> find_flippable(const EmbeddedGraph& g);

struct FlipResult {
    EmbeddedGraph graph;
    int quad_face = -1;   ///< the face now bounded by the flipped cycle
    int merged_face = -1; ///< f1 and f2 joined
};

/// Mirrors the disk side minus w2. Asserts that the cycle becomes facial, no
/// non-contractible 4-cycle remains and the weight does not drop (PropertyViolated).
FlipResult flip_detailed(const EmbeddedGraph& g, const FlipWitness& w);
inline EmbeddedGraph flip(const EmbeddedGraph& g, const FlipWitness& w) { return flip_detailed(g, w).graph; }

struct CoverEntry {
    int face = -1;                ///< face of the reduced graph
    std::vector<int> host_edges;  ///< J_f
    std::vector<int> host_vertices;
    SubgraphView j;               ///< J_f embedded as a subgraph of the host
    std::vector<int> s;           ///< faces of J_f forming S_f
    std::vector<int> host_faces;  ///< host faces covered by this entry
    int elasticity = 0;
};

struct Cover {
    std::vector<CoverEntry> entries; ///< one per internal face of the reduced graph
    int total_elasticity() const;
    std::string to_text() const;
};

struct Reduction {
    QuadLabeling labeling;
    Collapse collapse;
    Precoloring phi; ///< on the collapsed graph
    SubgraphView reduced; ///< G' inside the collapsed graph
    std::vector<int> vertex_origin; ///< G' vertex -> host vertex
    std::vector<int> edge_origin;   ///< G' edge -> host edge
    Cover cover;
    std::optional<FlipWitness> flip;
    std::vector<std::string> failures; ///< postconditions that did not hold

    const EmbeddedGraph& graph() const { return reduced.graph; }
    bool ok() const { return failures.empty(); }
};

/// Hypotheses of the reduction besides ring-boundedness; empty when all hold.
std::optional<std::string> reduction_hypothesis_failure(const EmbeddedGraph& g, int jobs = 1);

/// The labeling used by the reduction; PreconditionFailed when v1 would be a vertex ring.
QuadLabeling choose_labeling(const EmbeddedGraph& g, int f);

/// Collapses f, extracts a φ-critical subgraph for the least non-extending φ and builds
/// the cover. Throws PreconditionFailed or NoNonExtendingPrecoloring; postcondition
/// failures are listed in the result.
Reduction reduce_4face(const EmbeddedGraph& g, int f, int jobs = 1);

/// Postcondition report of a reduction, "key = value" lines.
std::string reduction_report(const Reduction& r);

} // namespace critsurf
