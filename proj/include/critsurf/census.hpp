#pragma once

#include <critsurf/embedded_graph.hpp>
#include <critsurf/graph.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace critsurf {

/// Sorted multiset of integers.
using Multiset = std::vector<int>;

std::string to_string(const Multiset& s);
/// Parses "{5,6}" or "{}".
Multiset parse_multiset(const std::string& text);

/// Lengths of the internal faces of length at least 5.
Multiset face_multiset(const EmbeddedGraph& g);

/// Lexicographically least BFS code over all rooted orientations, invariant under
/// switching and mirroring. With `outer_dart >= 0` only roots tracing the face of
/// (outer_dart, +1) are used, so the code also fixes that face.
std::vector<int> canonical_code(const MapData& m, int outer_dart = -1);

struct Catalog {
    struct Entry {
        Multiset lengths;
        int witness = -1; ///< index into graphs; -1 when read from a file
        std::string witness_path;
    };
    int r = 4;
    int k = 0;
    int exhaustive_up_to = 0;
    std::vector<Entry> entries;              ///< sorted by multiset
    std::vector<EmbeddedGraph> graphs;       ///< every critical graph found, canonical order
    long maps_examined = 0;                  ///< 2-connected maps visited by the search

    bool contains(const Multiset& s) const;
    /// Header line, then `multiset | witness | exhaustive_up_to` per entry.
    std::string to_text() const;
};

/// R-critical plane graphs of girth >= r with an outer facial ring of length k and at
/// most n_max vertices, up to ring rotations and reflections. Only 2-connected graphs are
/// generated; criticality with one ring forces 2-connectivity.
Catalog enumerate_disk(int r, int k, int n_max, int jobs = 1);

/// Writes the catalog file and one EMG witness per entry into `dir`.
void write_catalog(const std::filesystem::path& dir, Catalog& c);
Catalog read_catalog(const std::filesystem::path& file);

struct Refinement {
    bool refines = false;
    std::vector<Multiset> chain; ///< from the start multiset to the target
    bool truncated = false;      ///< search bound reached before a decision
};

/// Catalogs S_{4,k} keyed by k.
using CatalogSet = std::map<int, const Catalog*>;

/// Breadth-first search over one-step refinements from s1. Multisets never grow beyond
/// |s2| + 2 elements or above the largest element of s1 and s2. Throws CatalogIncomplete
/// when an expansion needs a catalog that is missing.
Refinement is_refinement(const Multiset& s2, const Multiset& s1, const CatalogSet& catalogs);

enum class Surface { Sphere, ProjectivePlane, Torus, KleinBottle };

std::string to_string(Surface s);
Surface parse_surface(const std::string& name);
int euler_genus(Surface s);
bool orientable(Surface s);

struct SurfaceConstraints {
    int girth = 4;               ///< 4 = triangle-free
    bool quadrangulation = false;
};

/// Cellular embeddings of 2-connected graphs in the surface with at most n_max vertices,
/// one per map isomorphism class, in canonical order.
std::vector<EmbeddedGraph> enumerate_surface(Surface s, int n_max, const SurfaceConstraints& c = {});

/// First embedding of a connected graph in the surface, scanning rotation systems (and,
/// for non-orientable surfaces, twists of non-tree edges) in lexicographic order. Stops
/// after `max_systems` candidates.
std::optional<EmbeddedGraph> find_embedding(const Graph& g, Surface s, long max_systems = 100000000);

/// The Grötzsch graph as the unique triangle-free non-bipartite quadrangulation of the
/// projective plane with 11 vertices, as produced by enumerate_surface.
EmbeddedGraph groetzsch_projective();

} // namespace critsurf
