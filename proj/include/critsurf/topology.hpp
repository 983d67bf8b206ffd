#pragma once

#include <critsurf/embedded_graph.hpp>
#include <critsurf/graph.hpp>

#include <string>
#include <vector>

namespace critsurf {

enum class CycleTag { Contractible, Surrounds, Essential };

struct CycleClass {
    CycleTag tag = CycleTag::Contractible;
    int ring = -1; ///< surrounded ring for CycleTag::Surrounds
    bool one_sided = false;
    bool separating = true;

    bool contractible() const { return tag == CycleTag::Contractible; }
};

std::string to_string(const CycleClass& c);

/// Classifies a cycle (vertex sequence) by cutting along it; throws NotACycle.
CycleClass classify_cycle(const EmbeddedGraph& g, const std::vector<int>& cycle);

/// Whether patching the cuff of ring `r` alone makes the cycle contractible, with `r`
/// inside its disk side. One-sided cycles never surround.
bool surrounds_ring(const EmbeddedGraph& g, const std::vector<int>& cycle, int r);

/// Classifies a connected subgraph (edge ids) from its own face structure: it is
/// contractible iff one of its faces holds all genus and all cuffs while the other
/// faces are open disks. Sidedness fields are left at their defaults.
CycleClass classify_subgraph(const EmbeddedGraph& g, const std::vector<int>& edges);

/// Face that is not open 2-cell and each of whose walks is a vertex ring or a cycle
/// bounding a disk on the far side that contains exactly one ring.
bool is_omnipresent(const EmbeddedGraph& g, int face);

/// True iff no connected essential subgraph with fewer than `threshold` edges exists.
/// Searches cycles, two cycles sharing a vertex, two disjoint cycles joined by a path,
/// and theta graphs.
bool min_essential_edges(const EmbeddedGraph& g, int threshold);

/// Simple cycles of length 3..max_length, each listed once starting at its least
/// vertex, in lexicographic order.
std::vector<std::vector<int>> simple_cycles(const Graph& g, int max_length);

/// Cycles of length <= max_length that are not contractible.
std::vector<std::vector<int>> noncontractible_cycles(const EmbeddedGraph& g, int max_length);

/// Whether the cycle bounds a single internal face (in either direction).
bool is_facial_cycle(const EmbeddedGraph& g, const std::vector<int>& cycle);

} // namespace critsurf
