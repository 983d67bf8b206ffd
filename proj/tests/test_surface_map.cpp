#include <critsurf/emg.hpp>
#include <critsurf/error.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace critsurf;

namespace {

std::vector<int> walk_lengths(const EmbeddedGraph& g)
{
    std::vector<int> out;
    for (const auto& w : g.walks())
        out.push_back(w.length());
    return out;
}

std::vector<int> sorted(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("hexagon tripod: walks, genus and faces")
{
    const auto g = fixture::hexagon_tripod();
    CHECK(g.genus() == 0);
    CHECK(g.faces().size() == 4);
    CHECK(sorted(walk_lengths(g)) == std::vector<int>{4, 4, 4, 6});
    CHECK(sorted(walk_lengths(g)) == sorted(oracle::face_lengths(g.map())));
    REQUIRE(g.rings().size() == 1);
    CHECK(g.ring_length(0) == 6);
    CHECK(g.faces()[static_cast<std::size_t>(g.rings()[0].face)].ring_face);
    for (int f : g.internal_faces())
        CHECK(g.face_class(f) == FaceClass::Closed2Cell);
    CHECK_THROWS_AS(g.face_class(g.rings()[0].face), Error);
}

TEST_CASE("every dart appears once per walk partition and lengths sum to 2E")
{
    for (const auto& g : {fixture::hexagon_tripod(), fixture::cube(), fixture::k4_projective(), fixture::octagon_two_chords()}) {
        std::vector<int> count(2 * static_cast<std::size_t>(g.edge_count()), 0);
        int total = 0;
        for (const auto& w : g.walks()) {
            total += w.length();
            for (const auto& s : w.steps)
                ++count[static_cast<std::size_t>(side_key(g.map(), s.dart, s.orient))];
        }
        CHECK(total == 2 * g.edge_count());
        CHECK(std::all_of(count.begin(), count.end(), [](int c) { return c == 1; }));
    }
}

TEST_CASE("K4 with three quadrilateral faces has Euler genus 1")
{
    const auto g = fixture::k4_projective();
    CHECK(g.genus() == 1);
    CHECK(walk_lengths(g) == std::vector<int>{4, 4, 4});
    CHECK_FALSE(rotation_system_orientable(g.map()));
}

TEST_CASE("face tracer agrees with the flag-orbit oracle on all signed rotation systems of K4")
{
    MapData m;
    m.vertex_count = 4;
    const std::vector<std::pair<int, int>> pairs = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (auto [u, v] : pairs)
        m.edges.push_back({u, v, 1});
    std::vector<std::vector<int>> base(4);
    for (int e = 0; e < 6; ++e) {
        base[static_cast<std::size_t>(pairs[static_cast<std::size_t>(e)].first)].push_back(2 * e);
        base[static_cast<std::size_t>(pairs[static_cast<std::size_t>(e)].second)].push_back(2 * e + 1);
    }
    int checked = 0;
    for (int flips = 0; flips < 16; ++flips)
        for (int signs = 0; signs < 64; ++signs) {
            m.rotations = base;
            for (int v = 0; v < 4; ++v)
                if ((flips >> v) & 1)
                    std::swap(m.rotations[static_cast<std::size_t>(v)][1], m.rotations[static_cast<std::size_t>(v)][2]);
            for (int e = 0; e < 6; ++e)
                m.edges[static_cast<std::size_t>(e)].sign = ((signs >> e) & 1) ? -1 : 1;
            std::vector<int> mine;
            for (const auto& w : trace_walks(m))
                mine.push_back(w.length());
            CHECK(sorted(mine) == sorted(oracle::face_lengths(m)));
            CHECK(rotation_system_genus(m) == oracle::cellular_genus(m));
            EmbeddingSpec spec;
            spec.map = m;
            CHECK(EmbeddedGraph::build(spec).genus() == oracle::cellular_genus(m));
            ++checked;
        }
    CHECK(checked == 1024);
}

TEST_CASE("cube graph is a sphere quadrangulation")
{
    const auto g = fixture::cube();
    CHECK(g.genus() == 0);
    CHECK(g.faces().size() == 6);
    for (int f : g.internal_faces())
        CHECK(g.face_class(f) == FaceClass::Closed2Cell);
}

TEST_CASE("cycle on the sphere has two walks of length 4")
{
    const auto g = EmbeddedGraph::from_faces(4, {{0, 1, 2, 3}, {3, 2, 1, 0}});
    CHECK(walk_lengths(g) == std::vector<int>{4, 4});
}

TEST_CASE("isolated vertex ring forms a walk by itself")
{
    EmbeddingSpec spec;
    spec.map.vertex_count = 1;
    spec.map.rotations = {{}};
    spec.rings = {{RingKind::Vertex, 0, 0, false}};
    const auto g = EmbeddedGraph::build(spec);
    REQUIRE(g.walks().size() == 1);
    CHECK(g.walks()[0].is_lone());
    CHECK(g.walks()[0].lone_vertex == 0);
    CHECK(g.face_length(0) == 1);
    CHECK(g.face_class(0) == FaceClass::Open2Cell);
}

TEST_CASE("weak vertex ring contributes zero to the face length")
{
    EmbeddingSpec spec;
    spec.map.vertex_count = 2;
    spec.map.edges = {{0, 1, 1}};
    spec.map.rotations = {{0}, {1}};
    spec.rings = {{RingKind::Vertex, 0, 0, true}};
    const auto g = EmbeddedGraph::build(spec);
    CHECK(g.ring_length(0) == 0);
    CHECK(g.face_length(0) == 2);
    CHECK(g.weak_vertex_ring_count() == 1);
}

TEST_CASE("validation errors")
{
    EmbeddingSpec parallel;
    parallel.map.vertex_count = 2;
    parallel.map.edges = {{0, 1, 1}, {1, 0, 1}};
    parallel.map.rotations = {{0, 3}, {1, 2}};
    try {
        EmbeddedGraph::build(parallel);
        FAIL("expected NotSimple");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSimple);
    }

    auto spec = fixture::cube().spec();
    spec.genus = 2;
    try {
        EmbeddedGraph::build(spec);
        FAIL("expected EulerMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EulerMismatch);
    }

    spec = fixture::cube().spec();
    spec.map.rotations[0].push_back(99);
    try {
        EmbeddedGraph::build(spec);
        FAIL("expected DanglingReference");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DanglingReference);
    }

    // A chord side of the octagon is not bounded by a cycle face.
    spec = fixture::hexagon_tripod().spec();
    spec.rings = {{RingKind::Facial, 0, -1, false}, {RingKind::Facial, 1, -1, false}};
    try {
        EmbeddedGraph::build(spec);
        FAIL("expected NotNormal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotNormal);
    }
}

TEST_CASE("face partition with a genus label changes the surface")
{
    // Both sides of a 4-cycle in one annular face: the annulus closes up to Euler genus 2.
    auto spec = EmbeddedGraph::from_faces(4, {{0, 1, 2, 3}, {3, 2, 1, 0}}).spec();
    spec.faces = std::vector<FaceSpec>{{{0, 1}, 0}};
    spec.genus.reset();
    const auto annular = EmbeddedGraph::build(spec);
    CHECK(annular.genus() == 2);
    CHECK(annular.face_class(0) == FaceClass::Neither);
}

TEST_CASE("EMG round trip is bit exact")
{
    for (const auto& g : {fixture::hexagon_tripod(), fixture::cube(), fixture::k4_projective(), fixture::octagon_two_chords()}) {
        const auto text = write_emg(g);
        const auto back = parse_emg(text);
        CHECK(write_emg(back) == text);
    }
}

TEST_CASE("EMG parse errors")
{
    CHECK_THROWS_AS(parse_emg("V 1\n"), Error);
    CHECK_THROWS_AS(parse_emg("EMG 1\nV 2\nE 1\nedge 0 0 1 *\n"), Error);
    const auto g = parse_emg("EMG 1 # header\nV 2\nE 1\nedge 0 0 1 +\nrot 0 0.0\nrot 1 0.1\n");
    CHECK(g.genus() == 0);
    CHECK(g.faces().size() == 1);
}
