#include <critsurf/graph.hpp>

#include <critsurf/error.hpp>

#include <algorithm>
#include <deque>
#include <limits>

namespace critsurf {

bool Graph::add_edge(int u, int v)
{
    if (u == v || adjacent(u, v))
        return false;
    auto& a = adj_[static_cast<std::size_t>(u)];
    auto& b = adj_[static_cast<std::size_t>(v)];
    a.insert(std::lower_bound(a.begin(), a.end(), v), v);
    b.insert(std::lower_bound(b.begin(), b.end(), u), u);
    ++edge_count_;
    return true;
}

bool Graph::remove_edge(int u, int v)
{
    if (!adjacent(u, v))
        return false;
    auto& a = adj_[static_cast<std::size_t>(u)];
    auto& b = adj_[static_cast<std::size_t>(v)];
    a.erase(std::lower_bound(a.begin(), a.end(), v));
    b.erase(std::lower_bound(b.begin(), b.end(), u));
    --edge_count_;
    return true;
}

bool Graph::adjacent(int u, int v) const
{
    const auto& a = neighbors(u);
    return std::binary_search(a.begin(), a.end(), v);
}

int Graph::add_vertex()
{
    adj_.emplace_back();
    return order() - 1;
}

std::vector<std::pair<int, int>> Graph::edges() const
{
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < order(); ++u)
        for (int v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

Graph Graph::remove_vertices(const std::vector<int>& removed, std::vector<int>* kept) const
{
    std::vector<char> gone(static_cast<std::size_t>(order()), 0);
    for (int v : removed)
        gone[static_cast<std::size_t>(v)] = 1;
    std::vector<int> keep;
    for (int v = 0; v < order(); ++v)
        if (!gone[static_cast<std::size_t>(v)])
            keep.push_back(v);
    if (kept)
        *kept = keep;
    return induced(keep);
}

Graph Graph::induced(const std::vector<int>& vertices) const
{
    std::vector<int> index(static_cast<std::size_t>(order()), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        index[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
    Graph h(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (int w : neighbors(vertices[i]))
            if (int j = index[static_cast<std::size_t>(w)]; j > static_cast<int>(i))
                h.add_edge(static_cast<int>(i), j);
    return h;
}

std::vector<std::vector<int>> Graph::components() const
{
    std::vector<int> comp(static_cast<std::size_t>(order()), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < order(); ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0)
            continue;
        out.emplace_back();
        std::deque<int> queue{s};
        comp[static_cast<std::size_t>(s)] = static_cast<int>(out.size()) - 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            out.back().push_back(v);
            for (int w : neighbors(v))
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = comp[static_cast<std::size_t>(s)];
                    queue.push_back(w);
                }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

bool Graph::connected() const
{
    return order() <= 1 || components().size() == 1;
}

bool Graph::has_triangle() const
{
    for (int u = 0; u < order(); ++u)
        for (int v : neighbors(u))
            if (v > u)
                for (int w : neighbors(v))
                    if (w > v && adjacent(u, w))
                        return true;
    return false;
}

int Graph::girth() const
{
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(static_cast<std::size_t>(order()));
    std::vector<int> parent(static_cast<std::size_t>(order()));
    for (int s = 0; s < order(); ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(s)] = 0;
        parent[static_cast<std::size_t>(s)] = -1;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : neighbors(v)) {
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    parent[static_cast<std::size_t>(w)] = v;
                    queue.push_back(w);
                } else if (parent[static_cast<std::size_t>(v)] != w) {
                    best = std::min(best, dist[static_cast<std::size_t>(v)] + dist[static_cast<std::size_t>(w)] + 1);
                }
            }
        }
    }
    return best == std::numeric_limits<int>::max() ? 0 : best;
}

bool Graph::bipartite() const
{
    std::vector<int> side(static_cast<std::size_t>(order()), -1);
    for (int s = 0; s < order(); ++s) {
        if (side[static_cast<std::size_t>(s)] >= 0)
            continue;
        side[static_cast<std::size_t>(s)] = 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : neighbors(v)) {
                if (side[static_cast<std::size_t>(w)] < 0) {
                    side[static_cast<std::size_t>(w)] = 1 - side[static_cast<std::size_t>(v)];
                    queue.push_back(w);
                } else if (side[static_cast<std::size_t>(w)] == side[static_cast<std::size_t>(v)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

// graph6: N(n) followed by the upper triangle of the adjacency matrix, column by
// column, packed six bits per byte with 63 added.
Graph parse_graph6(std::string_view text)
{
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.remove_suffix(1);
    if (text.starts_with(">>graph6<<"))
        text.remove_prefix(10);
    if (text.empty())
        throw Error(ErrorCode::ParseError, "empty graph6 string");

    std::size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= text.size())
            throw Error(ErrorCode::ParseError, "graph6 string truncated");
        int c = static_cast<unsigned char>(text[pos++]);
        if (c < 63 || c > 126)
            throw Error(ErrorCode::ParseError, "graph6 byte out of range");
        return c - 63;
    };

    long n = next();
    if (n == 63) {
        n = 0;
        for (int i = 0; i < 3; ++i)
            n = (n << 6) | next();
    }
    Graph g(static_cast<int>(n));
    int bits_left = 0;
    int current = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            if (bits_left == 0) {
                current = next();
                bits_left = 6;
            }
            --bits_left;
            if ((current >> bits_left) & 1)
                g.add_edge(u, v);
        }
    }
    if (pos != text.size())
        throw Error(ErrorCode::ParseError, "trailing bytes in graph6 string");
    return g;
}

std::string to_graph6(const Graph& g)
{
    std::string out;
    const int n = g.order();
    if (n < 63) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back(126);
        for (int shift = 12; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
    int bits = 0;
    int current = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            current = (current << 1) | (g.adjacent(u, v) ? 1 : 0);
            if (++bits == 6) {
                out.push_back(static_cast<char>(current + 63));
                bits = 0;
                current = 0;
            }
        }
    }
    if (bits > 0)
        out.push_back(static_cast<char>((current << (6 - bits)) + 63));
    return out;
}

} // namespace critsurf
