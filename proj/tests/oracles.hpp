#pragma once

// Independent reference implementations used to cross-check the library.
// They deliberately share no code with src/.

#include <critsurf/embedded_graph.hpp>

#include <functional>
#include <optional>
#include <vector>

namespace oracle {

/// Faces via flag orbits: returns, per face, its boundary length.
std::vector<int> face_lengths(const critsurf::MapData& map);

/// Euler genus of a cellular embedding (connected map assumed).
int cellular_genus(const critsurf::MapData& map);

/// All proper 3-colorings (colors 1..3) by plain enumeration of 3^n assignments.
std::vector<std::vector<int>> all_colorings(int n, const std::vector<std::pair<int, int>>& edges);

/// Calls `visit` on every proper 3-colouring, assigning vertices in index order.
void for_each_coloring(int n, const std::vector<std::pair<int, int>>& edges,
                       const std::function<void(const std::vector<int>&)>& visit);

/// Brute-force extension test with weak-vertex semantics.
bool extends(int n, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& precolor,
             const std::vector<char>& weak);

/// Ring-critical graphs of girth >= girth on the ring 0..k-1 plus up to `internal`
/// further vertices, with the ring bounding a face of some planar embedding. Found by
/// trying every edge set; each result is the lexicographically least edge list over
/// ring symmetries and relabellings of the internal vertices.
std::vector<std::vector<std::pair<int, int>>> critical_disk_graphs(int k, int internal, int girth);

/// The same normal form for a graph whose first k vertices are the ring in order.
std::vector<std::pair<int, int>> disk_normal_form(int k, int n, const std::vector<std::pair<int, int>>& edges);

} // namespace oracle
