#pragma once

#include <critsurf/graph.hpp>

#include <optional>
#include <string>
#include <vector>

namespace critsurf {

// Darts are encoded as 2 * edge + end; the dart leaves endpoint `end` of its edge.
constexpr int make_dart(int edge, int end) { return 2 * edge + end; }
constexpr int dart_edge(int dart) { return dart >> 1; }
constexpr int dart_end(int dart) { return dart & 1; }
constexpr int dart_reverse(int dart) { return dart ^ 1; }

struct Dart {
    int edge = 0;
    int end = 0;

    int id() const { return make_dart(edge, end); }
    static Dart from_id(int d) { return {dart_edge(d), dart_end(d)}; }
    friend bool operator==(const Dart&, const Dart&) = default;
};

struct Edge {
    int u = 0;
    int v = 0;
    int sign = 1; ///< +1 or -1; -1 marks an orientation-reversing edge

    int endpoint(int end) const { return end == 0 ? u : v; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Plain signed rotation system; no validation, may carry parallel edges.
struct MapData {
    int vertex_count = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> rotations; ///< darts leaving each vertex, cyclic

    int tail(int dart) const { return edges[static_cast<std::size_t>(dart_edge(dart))].endpoint(dart_end(dart)); }
    int head(int dart) const { return tail(dart_reverse(dart)); }
    int sign(int dart) const { return edges[static_cast<std::size_t>(dart_edge(dart))].sign; }
};

/// One traversal step: the dart and the local orientation at its tail.
struct WalkStep {
    int dart = 0;
    int orient = 1;
    friend bool operator==(const WalkStep&, const WalkStep&) = default;
};

/// A closed facial walk; an isolated vertex forms a walk with no steps.
struct Walk {
    std::vector<WalkStep> steps;
    int lone_vertex = -1;

    bool is_lone() const { return steps.empty(); }
    int length() const { return static_cast<int>(steps.size()); }
    std::vector<int> vertices(const MapData& map) const;
    bool is_cycle(const MapData& map) const;
};

/// State index 2*dart + (orient < 0); 4E states, each face traversed in both directions.
constexpr int make_state(int dart, int orient) { return 2 * dart + (orient < 0 ? 1 : 0); }

/// Edge-side key: invariant under reversing the traversal direction.
int side_key(const MapData& map, int dart, int orient);

/// Face tracing on a signed rotation system. Walks are listed in canonical order:
/// each starts at the least state of its orbit pair, walks sorted by that state,
/// isolated vertices last. `side_walk` (size 2E) receives the walk of every edge side.
std::vector<Walk> trace_walks(const MapData& map, std::vector<int>* side_walk = nullptr);

/// Euler genus of the cellular surface of each component, summed.
/// Orientable rotation system (all signs +) from consistently oriented face boundaries.
MapData oriented_map(int vertex_count, const std::vector<std::vector<int>>& faces);
/// Dart from a to b; throws DanglingReference.
int directed_dart(const MapData& map, int a, int b);

int rotation_system_genus(const MapData& map);
bool rotation_system_orientable(const MapData& map);

struct FaceRecord {
    std::vector<int> walks; ///< indices into EmbeddedGraph::walks(), increasing
    int genus = 0;
    bool ring_face = false;
};

enum class RingKind { Facial, Vertex };

struct Ring {
    RingKind kind = RingKind::Facial;
    int face = -1;   ///< ring face (facial) or cuff face (vertex)
    int vertex = -1; ///< vertex rings only
    bool weak = false;
};

struct FaceSpec {
    std::vector<int> walks;
    int genus = 0;
};

struct EmbeddingSpec {
    MapData map;
    /// Partition of walk indices into faces. When absent, every walk is its own
    /// genus-0 face, so face i is walk i.
    std::optional<std::vector<FaceSpec>> faces;
    std::vector<Ring> rings;
    std::optional<int> genus;
};

enum class FaceClass { Open2Cell, Closed2Cell, Neither };

/// A normally embedded simple graph in a surface with rings. Immutable.
class EmbeddedGraph {
public:
    /// Validates and canonicalises: rotations start at their least dart, faces are
    /// ordered by least walk index, rings by (kind, face, vertex).
    static EmbeddedGraph build(const EmbeddingSpec& spec);

    /// Orientable cellular map from consistently oriented face boundaries.
    /// `facial_rings` lists face indices (into `faces`) that become facial rings.
    static EmbeddedGraph from_faces(int vertex_count, const std::vector<std::vector<int>>& faces,
                                    const std::vector<int>& facial_rings = {});

    const MapData& map() const { return map_; }
    int vertex_count() const { return map_.vertex_count; }
    int edge_count() const { return static_cast<int>(map_.edges.size()); }
    const Edge& edge(int e) const { return map_.edges[static_cast<std::size_t>(e)]; }
    const std::vector<int>& rotation(int v) const { return map_.rotations[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(rotation(v).size()); }
    int tail(int dart) const { return map_.tail(dart); }
    int head(int dart) const { return map_.head(dart); }
    /// Successor (orient = +1) or predecessor (orient = -1) of `dart` around its tail.
    int next_dart(int dart, int orient) const;
    int edge_between(int u, int v) const; ///< -1 when not adjacent

    const std::vector<Walk>& walks() const { return walks_; }
    const std::vector<FaceRecord>& faces() const { return faces_; }
    const std::vector<Ring>& rings() const { return rings_; }
    int genus() const { return genus_; }

    int face_of_walk(int w) const { return walk_face_[static_cast<std::size_t>(w)]; }
    int walk_of_side(int side) const { return side_walk_[static_cast<std::size_t>(side)]; }
    int face_of_side(int side) const { return face_of_walk(walk_of_side(side)); }
    int face_of_step(const WalkStep& s) const { return face_of_side(side_key(map_, s.dart, s.orient)); }

    bool is_internal(int f) const { return !faces_[static_cast<std::size_t>(f)].ring_face; }
    std::vector<int> internal_faces() const;
    /// |walk| with a lone vertex-ring walk contributing |R|.
    int walk_weight_length(int w) const;
    int face_length(int f) const;
    int ring_length(int r) const; ///< |R|
    int total_ring_length() const;
    std::vector<int> ring_vertices(int r) const;
    int ring_of_vertex(int v) const { return vertex_ring_[static_cast<std::size_t>(v)]; }
    bool is_ring_vertex(int v) const { return ring_of_vertex(v) >= 0; }
    bool is_ring_edge(int e) const;
    /// Vertex ring at v, or -1.
    int vertex_ring_at(int v) const;
    int weak_vertex_ring_count() const;
    int strong_vertex_ring_count() const;

    FaceClass face_class(int f) const;

    Graph underlying() const;

    EmbeddingSpec spec() const;

private:
    MapData map_;
    std::vector<Walk> walks_;
    std::vector<int> side_walk_;
    std::vector<int> walk_face_;
    std::vector<FaceRecord> faces_;
    std::vector<Ring> rings_;
    std::vector<int> vertex_ring_;
    std::vector<char> ring_edge_;
    std::vector<int> dart_pos_;
    int genus_ = 0;
};

/// Finds the walk whose vertex sequence is the given cycle (either direction, any start).
std::optional<int> find_walk(const EmbeddedGraph& g, const std::vector<int>& cycle);

/// Canonical facial walks (surface-map facial_walks operation).
inline const std::vector<Walk>& facial_walks(const EmbeddedGraph& g) { return g.walks(); }
inline int euler_genus(const EmbeddedGraph& g) { return g.genus(); }
FaceClass face_class(const EmbeddedGraph& g, int face);
std::string to_string(FaceClass c);

} // namespace critsurf
