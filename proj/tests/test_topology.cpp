#include <critsurf/error.hpp>
#include <critsurf/surgery.hpp>
#include <critsurf/topology.hpp>

#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace critsurf;

namespace {

std::vector<int> ring_lengths(const ExpansionPiece& p)
{
    std::vector<int> out;
    for (int r : p.natural_rings)
        out.push_back(p.graph.ring_length(r));
    std::sort(out.begin(), out.end());
    return out;
}

// Two 6-cycles on the sphere, each the facial ring of its inner side; the outer sides
// form one annular face.
EmbeddedGraph two_ring_cylinder()
{
    const auto base = oriented_map(
        12, {{0, 1, 2, 3, 4, 5}, {5, 4, 3, 2, 1, 0}, {6, 7, 8, 9, 10, 11}, {11, 10, 9, 8, 7, 6}});
    const int a_in = fixture::walk_through(base, 0, 1);
    const int a_out = fixture::walk_through(base, 1, 0);
    const int b_in = fixture::walk_through(base, 6, 7);
    const int b_out = fixture::walk_through(base, 7, 6);
    return fixture::regroup(base, {{{a_out, b_out}, 0}}, {a_in, b_in});
}

} // namespace

TEST_CASE("cycles of the cube are contractible and cut into two disks")
{
    const auto g = fixture::cube();
    for (const auto& c : simple_cycles(g.underlying(), 4)) {
        const auto cls = classify_cycle(g, c);
        CHECK(cls.contractible());
        CHECK_FALSE(cls.one_sided);
        CHECK(cls.separating);
    }
    const auto pieces = cut_along(g, {0, 1, 2, 3});
    REQUIRE(pieces.size() == 2);
    for (const auto& p : pieces) {
        CHECK(p.graph.genus() == 0);
        CHECK(p.cut_boundaries == 1);
    }
}

TEST_CASE("K4 in the projective plane: triangles are essential and one-sided")
{
    const auto g = fixture::k4_projective();
    int triangles = 0;
    for (const auto& c : simple_cycles(g.underlying(), 4)) {
        const auto cls = classify_cycle(g, c);
        CHECK(cls.tag == classify_subgraph(g, cycle_edges(g, c)).tag);
        if (c.size() == 3) {
            ++triangles;
            CHECK(cls.tag == CycleTag::Essential);
            CHECK(cls.one_sided);
            CHECK_FALSE(cls.separating);
            const auto pieces = cut_along(g, c);
            REQUIRE(pieces.size() == 1);
            CHECK(pieces[0].graph.genus() == 0);
            CHECK(pieces[0].cut_boundaries == 1);
        } else {
            CHECK(cls.contractible());
        }
    }
    CHECK(triangles == 4);
    CHECK_FALSE(min_essential_edges(g, 13));
    CHECK(min_essential_edges(g, 3));
}

TEST_CASE("torus grid: a row cycle is two-sided and non-separating")
{
    const auto g = fixture::torus_grid(4);
    CHECK(g.genus() == 2);
    const std::vector<int> row{0, 1, 2, 3};
    const auto cls = classify_cycle(g, row);
    CHECK(cls.tag == CycleTag::Essential);
    CHECK_FALSE(cls.one_sided);
    CHECK_FALSE(cls.separating);
    const auto pieces = cut_along(g, row);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].graph.genus() == 0);
    CHECK(pieces[0].cut_boundaries == 2);
    CHECK(classify_subgraph(g, cycle_edges(g, row)).tag == CycleTag::Essential);
    CHECK(noncontractible_cycles(g, 4).size() == 8);
}

TEST_CASE("hexagon tripod: inner quad and ring cycle are contractible")
{
    const auto g = fixture::hexagon_tripod();
    CHECK(classify_cycle(g, {0, 6, 2, 1}).contractible());
    CHECK(classify_cycle(g, {0, 1, 2, 3, 4, 5}).contractible());
    CHECK(classify_subgraph(g, cycle_edges(g, {0, 1, 2, 3, 4, 5})).contractible());
    CHECK_THROWS_AS(classify_cycle(g, {0, 1, 3}), Error);
}

TEST_CASE("cube with vertex rings at two antipodal corners")
{
    const auto m = oriented_map(8, {{3, 2, 1, 0}, {4, 5, 6, 7}, {0, 1, 5, 4}, {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}});
    const auto g = fixture::regroup(m, {}, {},
                                    {{RingKind::Vertex, fixture::walk_through(m, 0, 1), 0, false},
                                     {RingKind::Vertex, fixture::walk_through(m, 2, 6), 6, false}});
    const int r0 = g.vertex_ring_at(0);
    REQUIRE(r0 >= 0);
    // The cuff at 6 hangs into face 1256, so that quad bounds a disk only after patching
    // one of the two cuffs; the lower ring id is reported.
    const auto quad = classify_cycle(g, {1, 2, 6, 5});
    CHECK(quad.tag == CycleTag::Surrounds);
    CHECK(quad.ring == std::min(r0, g.vertex_ring_at(6)));
    CHECK(classify_cycle(g, {2, 3, 7, 6}).contractible());
    const std::vector<int> around{1, 2, 3, 7, 4, 5};
    const auto cls = classify_cycle(g, around);
    CHECK(cls.tag == CycleTag::Surrounds);
    CHECK(cls.ring == std::min(r0, g.vertex_ring_at(6)));
    const auto sub = classify_subgraph(g, cycle_edges(g, around));
    CHECK(sub.tag == CycleTag::Surrounds);
    CHECK(min_essential_edges(g, 13));
}

TEST_CASE("expansion along the ring plus a path through the centre")
{
    const auto g = fixture::hexagon_tripod();
    std::vector<int> edges = cycle_edges(g, {0, 1, 2, 3, 4, 5});
    edges.push_back(g.edge_between(0, 6));
    edges.push_back(g.edge_between(6, 2));
    const auto j = subgraph(g, {}, edges);
    const auto s = j.graph.internal_faces();
    CHECK(s.size() == 2);
    const auto pieces = g_expansion(g, j, s);
    REQUIRE(pieces.size() == 2);
    std::vector<int> lengths;
    for (const auto& p : pieces) {
        CHECK(p.graph.genus() == 0);
        auto l = ring_lengths(p);
        lengths.insert(lengths.end(), l.begin(), l.end());
    }
    std::sort(lengths.begin(), lengths.end());
    CHECK(lengths == std::vector<int>{4, 6});

    // Omitting the 6-face from S leaves ring edges off every boundary.
    std::vector<int> only_quad;
    for (int f : s)
        if (j.graph.face_length(f) == 4)
            only_quad.push_back(f);
    try {
        g_expansion(g, j, only_quad);
        FAIL("expected PropertyViolated");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PropertyViolated);
    }
}

TEST_CASE("expansion of a contractible cycle's disk side is one disk piece")
{
    const auto g = fixture::cube();
    const auto j = subgraph(g, {}, cycle_edges(g, {0, 1, 5, 4}));
    for (int f = 0; f < static_cast<int>(j.graph.faces().size()); ++f) {
        const auto pieces = g_expansion(g, j, {f});
        REQUIRE(pieces.size() == 1);
        CHECK(pieces[0].graph.genus() == 0);
        CHECK(ring_lengths(pieces[0]) == std::vector<int>{4});
    }
}

TEST_CASE("conservation: ring lengths of pieces equal S boundary lengths, faces covered once")
{
    const auto g = fixture::torus_grid(4);
    const auto j = subgraph(g, {}, cycle_edges(g, {0, 1, 2, 3}));
    std::vector<int> s(j.graph.faces().size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = static_cast<int>(i);
    const auto pieces = g_expansion(g, j, s);
    int ring_total = 0;
    int boundary_total = 0;
    std::vector<int> seen(g.faces().size(), 0);
    for (const auto& p : pieces) {
        for (int r : p.natural_rings)
            ring_total += p.graph.ring_length(r);
        for (int h : p.host_faces)
            ++seen[static_cast<std::size_t>(h)];
    }
    for (int f : s)
        boundary_total += j.graph.face_length(f);
    CHECK(ring_total == boundary_total);
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
}

TEST_CASE("deletion merges faces and keeps the surface")
{
    const auto g = fixture::hexagon_tripod();
    const auto no_centre = delete_elements(g, {6}, {});
    CHECK(no_centre.graph.genus() == 0);
    CHECK(no_centre.graph.faces().size() == 2);
    CHECK(no_centre.graph.rings().size() == 1);
    const auto no_spoke = delete_elements(g, {}, {g.edge_between(0, 6)});
    std::vector<int> lengths;
    for (int f : no_spoke.graph.internal_faces())
        lengths.push_back(no_spoke.graph.face_length(f));
    std::sort(lengths.begin(), lengths.end());
    CHECK(lengths == std::vector<int>{4, 6});

    const auto k4 = fixture::k4_projective();
    const auto tri = delete_elements(k4, {3}, {});
    CHECK(tri.graph.genus() == 1);
    CHECK(tri.graph.faces()[0].genus == 0);
    // The one-sided triangle leaves a single disk bounded by a doubled walk.
    REQUIRE(tri.graph.faces().size() == 1);
    CHECK(tri.graph.face_length(0) == 6);
}

TEST_CASE("cellular components split a disconnected embedding")
{
    const auto cyl = two_ring_cylinder();
    CHECK(cyl.genus() == 0);
    const auto comps = cellular_components(cyl);
    REQUIRE(comps.size() == 2);
    for (const auto& c : comps) {
        CHECK(c.graph.genus() == 0);
        CHECK(c.graph.rings().size() == 1);
    }
}

TEST_CASE("omnipresent faces")
{
    const auto cyl = two_ring_cylinder();
    int middle = -1;
    for (int f : cyl.internal_faces())
        middle = f;
    CHECK(cyl.face_class(middle) == FaceClass::Neither);
    CHECK(is_omnipresent(cyl, middle));
    CHECK(min_essential_edges(cyl, 13));

    // Cycle C = 12..15 encloses rings A and B on one side; ring D lies on the other.
    const auto base = oriented_map(
        22, {{0, 1, 2, 3, 4, 5}, {5, 4, 3, 2, 1, 0}, {6, 7, 8, 9, 10, 11}, {11, 10, 9, 8, 7, 6}, {12, 13, 14, 15},
             {15, 14, 13, 12}, {16, 17, 18, 19, 20, 21}, {21, 20, 19, 18, 17, 16}});
    const auto w = [&](int a, int b) { return fixture::walk_through(base, a, b); };
    const auto g = fixture::regroup(base, {{{w(1, 0), w(7, 6), w(12, 13)}, 0}, {{w(13, 12), w(17, 16)}, 0}},
                                    {w(0, 1), w(6, 7), w(16, 17)});
    CHECK(g.genus() == 0);
    const int outer = g.face_of_walk(w(13, 12));
    const int inner = g.face_of_walk(w(12, 13));
    // Beyond C lie both A and B; every walk of the inner face sees a single ring.
    CHECK_FALSE(is_omnipresent(g, outer));
    CHECK(is_omnipresent(g, inner));
    CHECK(min_essential_edges(g, 13));
    CHECK_THROWS_AS(is_omnipresent(fixture::cube(), 0), Error);
}

TEST_CASE("cut through a vertex of the figure-eight's outer face")
{
    const auto g = EmbeddedGraph::from_faces(7, {{0, 1, 2, 3}, {0, 4, 5, 6}, {0, 3, 2, 1, 0, 6, 5, 4}});
    int outer = -1;
    int occ_a = -1;
    int occ_b = -1;
    for (int f = 0; f < static_cast<int>(g.faces().size()); ++f)
        if (g.face_length(f) == 8) {
            outer = f;
            const auto vs = g.walks()[static_cast<std::size_t>(g.faces()[static_cast<std::size_t>(f)].walks[0])].vertices(g.map());
            for (int i = 0; i < 8; ++i)
                if (vs[static_cast<std::size_t>(i)] == 0)
                    (occ_a < 0 ? occ_a : occ_b) = i;
        }
    REQUIRE(outer >= 0);
    CHECK(g.face_class(outer) == FaceClass::Open2Cell);
    const auto pieces = cut_through_vertex(g, outer, occ_a, occ_b);
    REQUIRE(pieces.size() == 2);
    for (const auto& p : pieces) {
        CHECK(p.graph.genus() == 0);
        CHECK(p.graph.vertex_count() == 4);
        CHECK(p.natural_rings.size() == 1);
    }
    CHECK_THROWS_AS(cut_through_vertex(g, outer, occ_a, (occ_a + 1) % 8), Error);
}
