#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace critsurf {

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

    int order() const { return static_cast<int>(adj_.size()); }
    int size() const { return edge_count_; }

    /// Returns false (and changes nothing) for loops and existing edges.
    bool add_edge(int u, int v);
    bool remove_edge(int u, int v);
    bool adjacent(int u, int v) const;
    int add_vertex();

    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    /// Edges as (u, v) with u < v, sorted lexicographically.
    std::vector<std::pair<int, int>> edges() const;

    /// Subgraph induced on the vertices not in `removed`, relabelled in increasing order.
    Graph remove_vertices(const std::vector<int>& removed, std::vector<int>* kept = nullptr) const;
    Graph induced(const std::vector<int>& vertices) const;

    bool connected() const;
    std::vector<std::vector<int>> components() const;
    bool has_triangle() const;
    int girth() const; ///< 0 for forests
    bool bipartite() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<int>> adj_;
    int edge_count_ = 0;
};

Graph parse_graph6(std::string_view text);
std::string to_graph6(const Graph& g);

} // namespace critsurf
