#include <critsurf/topology.hpp>

#include <critsurf/error.hpp>
#include <critsurf/surgery.hpp>

#include <algorithm>
#include <set>

namespace critsurf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

// Contractible in the surface where the cuffs of rings in `patched` are filled in.
bool contained_in_disk(const EmbeddedGraph& g, const SubgraphView& h, const std::vector<int>& patched)
{
    const auto& hg = h.graph;
    std::vector<int> cuff_face;
    for (int r = 0; r < static_cast<int>(g.rings().size()); ++r)
        if (std::find(patched.begin(), patched.end(), r) == patched.end())
            cuff_face.push_back(h.face_image[at(g.rings()[at(r)].face)]);
    for (int f = 0; f < static_cast<int>(hg.faces().size()); ++f) {
        const auto& face = hg.faces()[at(f)];
        if (face.walks.size() != 1 || face.genus != g.genus())
            continue;
        bool ok = std::all_of(cuff_face.begin(), cuff_face.end(), [&](int cf) { return cf == f; });
        for (int o = 0; o < static_cast<int>(hg.faces().size()) && ok; ++o)
            if (o != f)
                ok = hg.faces()[at(o)].genus == 0 && hg.faces()[at(o)].walks.size() == 1;
        if (ok)
            return true;
    }
    return false;
}

void extend_cycles(const Graph& g, int start, int max_length, std::vector<int>& path, std::vector<char>& on_path,
                   std::vector<std::vector<int>>& out)
{
    const int last = path.back();
    for (int w : g.neighbors(last)) {
        if (w == start && path.size() >= 3 && path[1] < path.back()) {
            out.push_back(path);
            continue;
        }
        if (w <= start || on_path[at(w)] || static_cast<int>(path.size()) >= max_length)
            continue;
        on_path[at(w)] = 1;
        path.push_back(w);
        extend_cycles(g, start, max_length, path, on_path, out);
        path.pop_back();
        on_path[at(w)] = 0;
    }
}

std::vector<int> sorted_edges(const EmbeddedGraph& g, const std::vector<int>& cycle)
{
    auto e = cycle_edges(g, cycle);
    std::sort(e.begin(), e.end());
    return e;
}

// Shortest-first paths between the vertex sets of two disjoint cycles, avoiding other cycle vertices.
void connecting_paths(const Graph& g, const std::vector<char>& in_a, const std::vector<char>& in_b, int max_length,
                      std::vector<int>& path, std::vector<char>& used, std::vector<std::vector<int>>& out)
{
    const int last = path.back();
    for (int w : g.neighbors(last)) {
        if (used[at(w)])
            continue;
        if (in_b[at(w)]) {
            path.push_back(w);
            out.push_back(path);
            path.pop_back();
            continue;
        }
        if (in_a[at(w)] || static_cast<int>(path.size()) >= max_length)
            continue;
        used[at(w)] = 1;
        path.push_back(w);
        connecting_paths(g, in_a, in_b, max_length, path, used, out);
        path.pop_back();
        used[at(w)] = 0;
    }
}

} // namespace

std::string to_string(const CycleClass& c)
{
    std::string tag = c.tag == CycleTag::Contractible ? "contractible"
                      : c.tag == CycleTag::Surrounds  ? "surrounds(" + std::to_string(c.ring) + ")"
                                                      : "essential";
    return tag + (c.one_sided ? " one-sided" : " two-sided") + (c.separating ? " separating" : " non-separating");
}

CycleClass classify_cycle(const EmbeddedGraph& g, const std::vector<int>& cycle)
{
    const auto edges = cycle_edges(g, cycle);
    int product = 1;
    for (int e : edges)
        product *= g.edge(e).sign;
    const auto pieces = cut_along(g, cycle);

    CycleClass c;
    c.one_sided = product < 0;
    c.separating = pieces.size() == 2;
    c.tag = CycleTag::Essential;
    // A one-sided curve has a single cut boundary of twice its length, never a disk side.
    if (c.one_sided)
        return c;
    for (const auto& p : pieces)
        if (p.graph.genus() == 0 && p.cut_boundaries == 1 && p.host_rings.empty())
            c.tag = CycleTag::Contractible;
    if (c.tag != CycleTag::Contractible)
        for (const auto& p : pieces)
            if (p.graph.genus() == 0 && p.cut_boundaries == 1 && p.host_rings.size() == 1 &&
                (c.tag == CycleTag::Essential || p.host_rings[0] < c.ring)) {
                c.tag = CycleTag::Surrounds;
                c.ring = p.host_rings[0];
            }
    return c;
}

bool surrounds_ring(const EmbeddedGraph& g, const std::vector<int>& cycle, int r)
{
    int product = 1;
    for (int e : cycle_edges(g, cycle))
        product *= g.edge(e).sign;
    if (product < 0)
        return false;
    for (const auto& p : cut_along(g, cycle))
        if (p.graph.genus() == 0 && p.cut_boundaries == 1 && p.host_rings == std::vector<int>{r})
            return true;
    return false;
}

CycleClass classify_subgraph(const EmbeddedGraph& g, const std::vector<int>& edges)
{
    if (edges.empty())
        throw Error(ErrorCode::PreconditionFailed, "subgraph has no edges");
    const auto h = subgraph(g, {}, edges);
    if (!h.graph.underlying().connected())
        throw Error(ErrorCode::PreconditionFailed, "subgraph is not connected");
    CycleClass c;
    if (contained_in_disk(g, h, {}))
        return c;
    for (int r = 0; r < static_cast<int>(g.rings().size()); ++r)
        if (contained_in_disk(g, h, {r})) {
            c.tag = CycleTag::Surrounds;
            c.ring = r;
            return c;
        }
    c.tag = CycleTag::Essential;
    return c;
}

bool is_omnipresent(const EmbeddedGraph& g, int face)
{
    if (!g.is_internal(face))
        throw Error(ErrorCode::RingFace, "omnipresence is defined for internal faces");
    if (g.face_class(face) != FaceClass::Neither)
        throw Error(ErrorCode::PreconditionFailed, "face is open 2-cell");
    for (int w : g.faces()[at(face)].walks) {
        const auto& walk = g.walks()[at(w)];
        if (walk.is_lone()) {
            if (g.vertex_ring_at(walk.lone_vertex) < 0)
                return false;
            continue;
        }
        if (!walk.is_cycle(g.map()))
            return false;
        const auto pieces = cut_along(g, walk.vertices(g.map()));
        if (pieces.size() != 2)
            return false;
        bool found = false;
        for (const auto& p : pieces) {
            if (std::binary_search(p.host_faces.begin(), p.host_faces.end(), face))
                continue;
            found = p.graph.genus() == 0 && p.cut_boundaries == 1 && p.host_rings.size() == 1;
        }
        if (!found)
            return false;
    }
    return true;
}

std::vector<std::vector<int>> simple_cycles(const Graph& g, int max_length)
{
    std::vector<std::vector<int>> out;
    std::vector<char> on_path(at(g.order()), 0);
    for (int s = 0; s < g.order(); ++s) {
        std::vector<int> path{s};
        on_path[at(s)] = 1;
        extend_cycles(g, s, max_length, path, on_path, out);
        on_path[at(s)] = 0;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> noncontractible_cycles(const EmbeddedGraph& g, int max_length)
{
    std::vector<std::vector<int>> out;
    if (g.genus() == 0 && g.rings().empty())
        return out;
    for (auto& c : simple_cycles(g.underlying(), max_length))
        if (!classify_cycle(g, c).contractible())
            out.push_back(std::move(c));
    return out;
}

bool is_facial_cycle(const EmbeddedGraph& g, const std::vector<int>& cycle)
{
    const std::size_t k = cycle.size();
    for (const auto& face : g.faces()) {
        if (face.walks.size() != 1 || face.genus != 0)
            continue;
        const auto vs = g.walks()[at(face.walks[0])].vertices(g.map());
        if (vs.size() != k || !g.walks()[at(face.walks[0])].is_cycle(g.map()))
            continue;
        for (std::size_t shift = 0; shift < k; ++shift) {
            bool fwd = true;
            bool bwd = true;
            for (std::size_t i = 0; i < k; ++i) {
                fwd = fwd && vs[(shift + i) % k] == cycle[i];
                bwd = bwd && vs[(shift + k - i) % k] == cycle[i];
            }
            if (fwd || bwd)
                return true;
        }
    }
    return false;
}

bool min_essential_edges(const EmbeddedGraph& g, int threshold)
{
    // With Euler genus 0 and at most two cuffs, patching one cuff leaves a disk.
    if (g.genus() == 0 && g.rings().size() <= 2)
        return true;
    const Graph ug = g.underlying();
    std::vector<std::vector<int>> cycles;
    std::vector<std::vector<int>> cycle_edge_sets;
    for (auto& c : simple_cycles(ug, threshold - 1)) {
        const auto cls = classify_cycle(g, c);
        if (cls.tag == CycleTag::Essential)
            return false;
        // A contractible cycle never lies on a minimal essential subgraph.
        if (cls.contractible())
            continue;
        cycle_edge_sets.push_back(sorted_edges(g, c));
        cycles.push_back(std::move(c));
    }
    auto essential = [&](const std::vector<int>& edges) {
        return classify_subgraph(g, edges).tag == CycleTag::Essential;
    };
    for (std::size_t a = 0; a < cycles.size(); ++a) {
        std::set<int> va(cycles[a].begin(), cycles[a].end());
        for (std::size_t b = a + 1; b < cycles.size(); ++b) {
            std::vector<int> shared_v;
            for (int v : cycles[b])
                if (va.count(v))
                    shared_v.push_back(v);
            std::vector<int> uni;
            std::set_union(cycle_edge_sets[a].begin(), cycle_edge_sets[a].end(), cycle_edge_sets[b].begin(),
                           cycle_edge_sets[b].end(), std::back_inserter(uni));
            std::vector<int> common;
            std::set_intersection(cycle_edge_sets[a].begin(), cycle_edge_sets[a].end(), cycle_edge_sets[b].begin(),
                                  cycle_edge_sets[b].end(), std::back_inserter(common));
            if (shared_v.empty()) {
                const int budget = threshold - 1 - static_cast<int>(uni.size());
                if (budget < 1)
                    continue;
                std::vector<char> in_a(at(g.vertex_count()), 0), in_b(at(g.vertex_count()), 0);
                for (int v : cycles[a])
                    in_a[at(v)] = 1;
                for (int v : cycles[b])
                    in_b[at(v)] = 1;
                std::vector<std::vector<int>> paths;
                for (int s : cycles[a]) {
                    std::vector<int> path{s};
                    std::vector<char> used(at(g.vertex_count()), 0);
                    used[at(s)] = 1;
                    connecting_paths(ug, in_a, in_b, budget, path, used, paths);
                }
                for (const auto& p : paths) {
                    auto edges = uni;
                    for (std::size_t i = 0; i + 1 < p.size(); ++i)
                        edges.push_back(g.edge_between(p[i], p[i + 1]));
                    if (essential(edges))
                        return false;
                }
                continue;
            }
            if (static_cast<int>(uni.size()) >= threshold)
                continue;
            // Two cycles meeting in one vertex, or in one path (a theta graph).
            const bool figure_eight = shared_v.size() == 1;
            const bool theta = !common.empty() && common.size() + 1 == shared_v.size();
            if ((figure_eight || theta) && essential(uni))
                return false;
        }
    }
    return true;
}

} // namespace critsurf
