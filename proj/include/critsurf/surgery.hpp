#pragma once

#include <critsurf/embedded_graph.hpp>

#include <optional>
#include <vector>

namespace critsurf {

/// A signed rotation system with faces attached, without the simplicity and
/// normality checks of EmbeddedGraph. Used as scratch space during surgery.
struct FacedMap {
    MapData map;
    std::vector<Walk> walks;
    std::vector<int> side_walk;
    std::vector<int> walk_face;
    std::vector<int> face_genus;
    std::vector<Ring> rings; ///< Ring::face indexes face_genus

    static FacedMap from(const EmbeddedGraph& g);
    /// Traces walks of `map` and keeps the given face assignment.
    static FacedMap with_faces(MapData map, const std::vector<int>& walk_face, std::vector<int> face_genus,
                               std::vector<Ring> rings);

    int face_count() const { return static_cast<int>(face_genus.size()); }
    int face_of_side(int side) const { return walk_face[static_cast<std::size_t>(side_walk[static_cast<std::size_t>(side)])]; }
    /// Face containing the corner after `dart` in its rotation (any corner for isolated vertices).
    int face_at_vertex(int v) const;

    EmbeddedGraph build(std::optional<int> genus = std::nullopt) const;
};

struct Restriction {
    FacedMap result;
    std::vector<int> vertex_origin; ///< new vertex -> old vertex
    std::vector<int> edge_origin;   ///< new edge -> old edge
    std::vector<int> vertex_image;  ///< old vertex -> new vertex or -1
    std::vector<int> edge_image;    ///< old edge -> new edge or -1
    std::vector<int> face_image;    ///< old face -> new face containing it
};

/// Keeps the marked vertices and the marked edges whose ends are kept. Faces that
/// merge are combined with genus recomputed from Euler characteristics; rings that
/// lose an element are dropped. With `drop_orphans`, faces left without any walk
/// (those of discarded components) map to -1 instead of raising PreconditionFailed.
Restriction restrict_map(const FacedMap& in, const std::vector<char>& keep_vertex, const std::vector<char>& keep_edge,
                         bool drop_orphans = false);

/// A subgraph of an embedded graph, embedded in the same surface.
struct SubgraphView {
    EmbeddedGraph graph;
    std::vector<int> vertex_origin;
    std::vector<int> edge_origin;
    std::vector<int> vertex_image;
    std::vector<int> edge_image;
    std::vector<int> face_image; ///< host face -> face of the subgraph containing it
};

SubgraphView restrict_to(const EmbeddedGraph& g, const std::vector<char>& keep_vertex, const std::vector<char>& keep_edge);
SubgraphView delete_elements(const EmbeddedGraph& g, const std::vector<int>& vertices, const std::vector<int>& edges);
/// Subgraph formed by the given vertices and edges (edge ends are added automatically).
SubgraphView subgraph(const EmbeddedGraph& g, const std::vector<int>& vertices, const std::vector<int>& edges);

/// Each component on its own cellular surface: every walk becomes a genus-0 face.
struct Component {
    EmbeddedGraph graph;
    std::vector<int> vertex_origin;
    std::vector<int> edge_origin;
};
std::vector<Component> cellular_components(const EmbeddedGraph& g);

struct ExpansionPiece {
    EmbeddedGraph graph;
    std::vector<int> vertex_origin; ///< piece vertex -> host vertex
    std::vector<int> edge_origin;   ///< piece edge -> host edge
    std::vector<int> natural_rings; ///< piece rings created from boundary walks
    std::vector<int> host_rings;    ///< host rings whose cuff lies in this piece
    std::vector<int> host_faces;    ///< host faces drawn inside this piece
    int source_face = -1;           ///< face of J the piece was cut from
    int cut_boundaries = 0;         ///< natural facial rings
};

/// Checks the boundary-union, isolated-vertex and cuff clauses; throws PropertyViolated.
void check_expansion_property(const EmbeddedGraph& g, const SubgraphView& j, const std::vector<int>& s);

/// One piece per face of S; J-vertices are split into one copy per walk occurrence.
std::vector<ExpansionPiece> g_expansion(const EmbeddedGraph& g, const SubgraphView& j, const std::vector<int>& s);

/// Cuts the surface along a cycle (vertex sequence). Host rings not on the cycle
/// stay rings of the piece containing them.
std::vector<ExpansionPiece> cut_along(const EmbeddedGraph& g, const std::vector<int>& cycle);

/// Cuts along a closed curve inside an open 2-cell face that passes through one vertex,
/// leaving at occurrence `i` of the face walk and returning at occurrence `j`.
/// The two copies of the vertex become non-weak vertex rings.
std::vector<ExpansionPiece> cut_through_vertex(const EmbeddedGraph& g, int face, int i, int j);

/// Edge ids of a cycle given by its vertices; throws NotACycle.
std::vector<int> cycle_edges(const EmbeddedGraph& g, const std::vector<int>& cycle);

} // namespace critsurf
