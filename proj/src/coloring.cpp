#include <critsurf/coloring.hpp>

#include <critsurf/error.hpp>

#include <algorithm>
#include <bit>
#include <thread>

namespace critsurf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

std::uint8_t bit(int color) { return static_cast<std::uint8_t>(1u << (color - 1)); }

struct Search {
    const std::vector<std::vector<int>>& adj;
    std::vector<std::uint8_t> domain;
    Coloring color;
    std::vector<int> trail;

    bool run()
    {
        int v = -1;
        int best = 4;
        for (int x = 0; x < static_cast<int>(color.size()); ++x)
            if (color[at(x)] == 0) {
                const int k = std::popcount(domain[at(x)]);
                if (k < best) {
                    best = k;
                    v = x;
                }
            }
        if (v < 0)
            return true;
        for (int c = 1; c <= 3; ++c) {
            if (!(domain[at(v)] & bit(c)))
                continue;
            color[at(v)] = c;
            const std::size_t mark = trail.size();
            bool ok = true;
            for (int u : adj[at(v)]) {
                if (color[at(u)] != 0) {
                    ok = ok && color[at(u)] != c;
                    continue;
                }
                if (domain[at(u)] & bit(c)) {
                    domain[at(u)] &= static_cast<std::uint8_t>(~bit(c));
                    trail.push_back(u);
                    if (domain[at(u)] == 0)
                        ok = false;
                }
                if (!ok)
                    break;
            }
            if (ok && run())
                return true;
            while (trail.size() > mark) {
                domain[at(trail.back())] |= bit(c);
                trail.pop_back();
            }
            color[at(v)] = 0;
        }
        return false;
    }
};

std::vector<int> ring_vertex_list(const EmbeddedGraph& g)
{
    std::vector<int> out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.is_ring_vertex(v))
            out.push_back(v);
    return out;
}

} // namespace

void ColorSolver::add_edge(int u, int v)
{
    adj_[at(u)].push_back(v);
    adj_[at(v)].push_back(u);
}

std::optional<Coloring> ColorSolver::solve() const
{
    Search s{adj_, domain_, Coloring(adj_.size(), 0), {}};
    if (std::any_of(domain_.begin(), domain_.end(), [](std::uint8_t d) { return d == 0; }))
        return std::nullopt;
    if (!s.run())
        return std::nullopt;
    return s.color;
}

std::optional<Coloring> three_color(const Graph& g)
{
    ColorSolver solver(g.order());
    for (auto [u, v] : g.edges())
        solver.add_edge(u, v);
    return solver.solve();
}

bool is_three_colorable(const Graph& g) { return three_color(g).has_value(); }

void check_precoloring(const EmbeddedGraph& g, const Precoloring& phi)
{
    if (static_cast<int>(phi.size()) != g.vertex_count())
        throw Error(ErrorCode::ImproperPrecoloring, "precoloring size differs from the vertex count");
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int c = phi[at(v)];
        if (g.is_ring_vertex(v) ? (c < 1 || c > 3) : c != 0)
            throw Error(ErrorCode::ImproperPrecoloring,
                        "vertex " + std::to_string(v) + (g.is_ring_vertex(v) ? " needs a colour in 1..3" : " is not on a ring"));
    }
    for (int e = 0; e < g.edge_count(); ++e)
        if (g.is_ring_edge(e) && phi[at(g.edge(e).u)] == phi[at(g.edge(e).v)])
            throw Error(ErrorCode::ImproperPrecoloring, "ring edge " + std::to_string(e) + " is monochromatic");
}

long for_each_three_coloring(const Graph& g, const std::function<bool(const Coloring&)>& visit)
{
    const int n = g.order();
    Coloring c(at(n), 0);
    long count = 0;
    bool stop = false;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            ++count;
            stop = !visit(c);
            return;
        }
        for (int col = 1; col <= 3 && !stop; ++col) {
            bool ok = true;
            for (int u : g.neighbors(v))
                ok = ok && (u > v || c[at(u)] != col);
            if (!ok)
                continue;
            c[at(v)] = col;
            self(self, v + 1);
        }
        c[at(v)] = 0;
    };
    rec(rec, 0);
    return count;
}

std::optional<Coloring> extend(const EmbeddedGraph& g, const Precoloring& phi, const std::vector<char>* edge_mask)
{
    check_precoloring(g, phi);
    ColorSolver solver(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e)
        if (!edge_mask || (*edge_mask)[at(e)])
            solver.add_edge(g.edge(e).u, g.edge(e).v);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!g.is_ring_vertex(v))
            continue;
        const int r = g.vertex_ring_at(v);
        const bool weak = r >= 0 && g.rings()[at(r)].weak;
        solver.restrict_domain(v, weak ? static_cast<std::uint8_t>(7 & ~bit(phi[at(v)])) : bit(phi[at(v)]));
    }
    return solver.solve();
}

std::vector<Precoloring> ring_precolorings(const EmbeddedGraph& g)
{
    const auto order = ring_vertex_list(g);
    std::vector<std::vector<int>> earlier(order.size());
    std::vector<int> index(at(g.vertex_count()), -1);
    for (std::size_t i = 0; i < order.size(); ++i)
        index[at(order[i])] = static_cast<int>(i);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!g.is_ring_edge(e))
            continue;
        const int a = index[at(g.edge(e).u)];
        const int b = index[at(g.edge(e).v)];
        earlier[at(std::max(a, b))].push_back(std::min(a, b));
    }

    std::vector<Precoloring> out;
    Precoloring phi(at(g.vertex_count()), 0);
    auto rec = [&](auto&& self, std::size_t i, int used) -> void {
        if (i == order.size()) {
            out.push_back(phi);
            return;
        }
        for (int c = 1; c <= std::min(3, used + 1); ++c) {
            bool ok = true;
            for (int j : earlier[i])
                ok = ok && phi[at(order[at(j)])] != c;
            if (!ok)
                continue;
            phi[at(order[i])] = c;
            self(self, i + 1, std::max(used, c));
        }
        phi[at(order[i])] = 0;
    };
    rec(rec, 0, 0);
    return out;
}

std::vector<Deletion> maximal_deletions(const EmbeddedGraph& g)
{
    std::vector<Deletion> out;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!g.is_ring_edge(e))
            out.push_back({Deletion::Kind::Edge, e});
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!g.is_ring_vertex(v) && g.degree(v) == 0)
            out.push_back({Deletion::Kind::Vertex, v});
    return out;
}

CriticalityCertificate is_R_critical(const EmbeddedGraph& g, int jobs)
{
    CriticalityCertificate cert;
    const auto deletions = maximal_deletions(g);
    if (deletions.empty()) {
        cert.equals_ring_subgraph = true;
        return cert;
    }
    const auto phis = ring_precolorings(g);
    const std::size_t none = phis.size();

    // first[i][d]: least precoloring index in chunk i witnessing deletion d.
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(phis.size())));
    std::vector<std::vector<std::size_t>> first(at(workers), std::vector<std::size_t>(deletions.size(), none));
    auto work = [&](int w) {
        const std::size_t lo = phis.size() * at(w) / at(workers);
        const std::size_t hi = phis.size() * at(w + 1) / at(workers);
        auto& mine = first[at(w)];
        std::size_t open = deletions.size();
        std::vector<char> mask(at(g.edge_count()), 1);
        for (std::size_t p = lo; p < hi && open > 0; ++p) {
            if (extend(g, phis[p]))
                continue;
            for (std::size_t d = 0; d < deletions.size(); ++d) {
                // Dropping an isolated vertex never changes whether φ extends.
                if (mine[d] != none || deletions[d].kind == Deletion::Kind::Vertex)
                    continue;
                mask[at(deletions[d].id)] = 0;
                if (extend(g, phis[p], &mask)) {
                    mine[d] = p;
                    --open;
                }
                mask[at(deletions[d].id)] = 1;
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        for (int w = 0; w < workers; ++w)
            threads.emplace_back(work, w);
    }

    cert.verdict = true;
    for (std::size_t d = 0; d < deletions.size(); ++d) {
        std::size_t best = none;
        for (const auto& f : first)
            best = std::min(best, f[d]);
        if (best == none) {
            cert.verdict = false;
            cert.counterexample = deletions[d];
            cert.witnesses.clear();
            return cert;
        }
        cert.witnesses.push_back({deletions[d], phis[best]});
    }
    return cert;
}

bool verify_certificate(const EmbeddedGraph& g, const CriticalityCertificate& cert)
{
    if (!cert.verdict)
        return cert.equals_ring_subgraph || cert.counterexample.has_value();
    const auto deletions = maximal_deletions(g);
    if (cert.witnesses.size() != deletions.size())
        return false;
    std::vector<char> mask(at(g.edge_count()), 1);
    for (std::size_t i = 0; i < deletions.size(); ++i) {
        const auto& w = cert.witnesses[i];
        if (!(w.deletion == deletions[i]) || extend(g, w.phi))
            return false;
        if (w.deletion.kind == Deletion::Kind::Edge)
            mask[at(w.deletion.id)] = 0;
        const bool ok = extend(g, w.phi, &mask).has_value();
        mask.assign(mask.size(), 1);
        if (!ok)
            return false;
    }
    return true;
}

SubgraphView phi_critical_subgraph(const EmbeddedGraph& g, const Precoloring& phi)
{
    if (extend(g, phi))
        throw Error(ErrorCode::PrecoloringExtends, "the precoloring extends to the whole graph");
    std::vector<char> mask(at(g.edge_count()), 1);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.is_ring_edge(e))
            continue;
        mask[at(e)] = 0;
        if (extend(g, phi, &mask))
            mask[at(e)] = 1;
    }
    std::vector<char> keep(at(g.vertex_count()), 0);
    for (int v = 0; v < g.vertex_count(); ++v)
        keep[at(v)] = g.is_ring_vertex(v);
    for (int e = 0; e < g.edge_count(); ++e)
        if (mask[at(e)]) {
            keep[at(g.edge(e).u)] = 1;
            keep[at(g.edge(e).v)] = 1;
        }
    return restrict_to(g, keep, mask);
}

bool is_4_critical(const Graph& g)
{
    for (int v = 0; v < g.order(); ++v)
        if (g.degree(v) == 0)
            return false;
    if (is_three_colorable(g))
        return false;
    for (auto [u, v] : g.edges()) {
        Graph h = g;
        h.remove_edge(u, v);
        if (!is_three_colorable(h))
            return false;
    }
    return true;
}

} // namespace critsurf
