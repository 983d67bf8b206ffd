#pragma once

#include <critsurf/embedded_graph.hpp>

#include "oracles.hpp"

#include <algorithm>
#include <random>

namespace fixture {

using critsurf::EmbeddedGraph;

/// Hexagon v0..v5 as facial ring, centre 6 adjacent to v0, v2, v4.
inline EmbeddedGraph hexagon_tripod()
{
    return EmbeddedGraph::from_faces(7, {{0, 1, 2, 6}, {2, 3, 4, 6}, {4, 5, 0, 6}, {5, 4, 3, 2, 1, 0}}, {3});
}

/// Cube graph: outer square 0..3, inner square 4..7, spokes i -- i+4.
inline EmbeddedGraph cube()
{
    return EmbeddedGraph::from_faces(
        8, {{3, 2, 1, 0}, {4, 5, 6, 7}, {0, 1, 5, 4}, {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}});
}

/// C8 ring 0..7 with chords 0-3 and 4-7.
inline EmbeddedGraph octagon_two_chords()
{
    return EmbeddedGraph::from_faces(8, {{0, 1, 2, 3}, {3, 4, 7, 0}, {4, 5, 6, 7}, {7, 6, 5, 4, 3, 2, 1, 0}}, {3});
}

/// Bare cycle 0..k-1 whose outer side is a facial ring.
inline EmbeddedGraph ring_only(int k)
{
    std::vector<int> in(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        in[static_cast<std::size_t>(i)] = i;
    std::vector<int> out(in.rbegin(), in.rend());
    return EmbeddedGraph::from_faces(k, {in, out}, {1});
}

/// K4 embedded with three quadrilateral faces (projective plane), found by exhaustive
/// search over signed rotation systems with the oracle face tracer.
inline EmbeddedGraph k4_projective()
{
    critsurf::MapData m;
    m.vertex_count = 4;
    const std::vector<std::pair<int, int>> pairs = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (auto [u, v] : pairs)
        m.edges.push_back({u, v, 1});
    std::vector<std::vector<int>> base(4);
    for (int e = 0; e < 6; ++e) {
        base[static_cast<std::size_t>(m.edges[static_cast<std::size_t>(e)].u)].push_back(2 * e);
        base[static_cast<std::size_t>(m.edges[static_cast<std::size_t>(e)].v)].push_back(2 * e + 1);
    }
    for (int flips = 0; flips < 16; ++flips)
        for (int signs = 0; signs < 64; ++signs) {
            m.rotations = base;
            for (int v = 0; v < 4; ++v)
                if ((flips >> v) & 1)
                    std::swap(m.rotations[static_cast<std::size_t>(v)][1], m.rotations[static_cast<std::size_t>(v)][2]);
            for (int e = 0; e < 6; ++e)
                m.edges[static_cast<std::size_t>(e)].sign = ((signs >> e) & 1) ? -1 : 1;
            auto lengths = oracle::face_lengths(m);
            if (lengths == std::vector<int>{4, 4, 4}) {
                critsurf::EmbeddingSpec spec;
                spec.map = m;
                return EmbeddedGraph::build(spec);
            }
        }
    return EmbeddedGraph::build({});
}

/// Grötzsch graph (Mycielskian of C5) as an abstract graph.
inline critsurf::Graph grotzsch()
{
    critsurf::Graph g(11);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i + 5, (i + 1) % 5);
        g.add_edge(i + 5, (i + 4) % 5);
        g.add_edge(i + 5, 10);
    }
    return g;
}

} // namespace fixture

namespace fixture {

/// Walk traversing the directed edge a -> b in an orientable map.
inline int walk_through(const critsurf::MapData& m, int a, int b)
{
    std::vector<int> side_walk;
    critsurf::trace_walks(m, &side_walk);
    return side_walk[static_cast<std::size_t>(critsurf::side_key(m, critsurf::directed_dart(m, a, b), 1))];
}

inline int walk_through(const EmbeddedGraph& g, int a, int b) { return walk_through(g.map(), a, b); }

/// Builds `m` with the given walk groups as faces (genus labels given) and facial
/// rings on the listed walks; every other walk stays a genus-0 face. Vertex rings
/// name their cuff by a walk index in Ring::face.
inline EmbeddedGraph regroup(const critsurf::MapData& m, const std::vector<std::pair<std::vector<int>, int>>& groups,
                             const std::vector<int>& ring_walks = {},
                             const std::vector<critsurf::Ring>& vertex_rings = {})
{
    critsurf::EmbeddingSpec spec;
    spec.map = m;
    const std::size_t walk_count = critsurf::trace_walks(m).size();
    std::vector<critsurf::FaceSpec> faces;
    std::vector<int> face_of(walk_count, -1);
    for (const auto& [walks, genus] : groups) {
        for (int w : walks)
            face_of[static_cast<std::size_t>(w)] = static_cast<int>(faces.size());
        faces.push_back({walks, genus});
    }
    for (std::size_t w = 0; w < walk_count; ++w)
        if (face_of[w] < 0) {
            face_of[w] = static_cast<int>(faces.size());
            faces.push_back({{static_cast<int>(w)}, 0});
        }
    spec.faces = faces;
    for (int w : ring_walks)
        spec.rings.push_back({critsurf::RingKind::Facial, face_of[static_cast<std::size_t>(w)], -1, false});
    for (auto r : vertex_rings) {
        r.face = face_of[static_cast<std::size_t>(r.face)];
        spec.rings.push_back(r);
    }
    return EmbeddedGraph::build(spec);
}

/// Quadrangulated k x k torus grid, vertex (i, j) = k * i + j.
inline EmbeddedGraph torus_grid(int k)
{
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            faces.push_back({k * i + j, k * i + (j + 1) % k, k * ((i + 1) % k) + (j + 1) % k, k * ((i + 1) % k) + j});
    return EmbeddedGraph::from_faces(k * k, faces);
}

/// Random sphere quadrangulation grown from a 4-cycle by splitting a face along a new
/// degree-2 vertex or by inserting a concentric quad. Faces are oriented boundaries.
struct QuadPatch {
    int n = 4;
    std::vector<std::vector<int>> faces{{0, 1, 2, 3}, {3, 2, 1, 0}};
};

inline QuadPatch random_quadrangulation(std::mt19937& rng, int max_n)
{
    QuadPatch q;
    const int target = std::uniform_int_distribution<int>(5, max_n)(rng);
    while (q.n < target) {
        auto& f = q.faces[std::uniform_int_distribution<std::size_t>(0, q.faces.size() - 1)(rng)];
        std::rotate(f.begin(), f.begin() + std::uniform_int_distribution<int>(0, 3)(rng), f.end());
        const int a = f[0], b = f[1], c = f[2], d = f[3];
        if (q.n + 4 <= target && rng() % 2 == 0) {
            const int p = q.n, r = q.n + 1, s = q.n + 2, t = q.n + 3;
            f = {a, b, r, p};
            q.faces.push_back({b, c, s, r});
            q.faces.push_back({c, d, t, s});
            q.faces.push_back({d, a, p, t});
            q.faces.push_back({p, r, s, t});
            q.n += 4;
        } else {
            const int x = q.n++;
            f = {a, b, c, x};
            q.faces.push_back({a, x, c, d});
        }
    }
    return q;
}

} // namespace fixture
