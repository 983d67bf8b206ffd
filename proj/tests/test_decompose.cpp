#include <critsurf/census.hpp>
#include <critsurf/decompose.hpp>
#include <critsurf/emg.hpp>
#include <critsurf/error.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>

using namespace critsurf;

namespace {

EmbeddedGraph groetzsch_pp()
{
    return read_emg_file(std::filesystem::path(CRITSURF_TEST_DATA) / "groetzsch_pp.emg");
}

// A new vertex inside walk w, joined to the walk's vertices at steps i and j.
EmbeddedGraph add_vertex_in_face(const EmbeddedGraph& g, int w, int i, int j)
{
    MapData m = g.map();
    const auto& steps = g.walks()[static_cast<std::size_t>(w)].steps;
    const int len = static_cast<int>(steps.size());
    const int x = m.vertex_count++;
    m.rotations.emplace_back();
    for (int idx : {i, j}) {
        const auto& step = steps[static_cast<std::size_t>(idx)];
        const int back = dart_reverse(steps[static_cast<std::size_t>((idx - 1 + len) % len)].dart);
        const int v = m.tail(step.dart);
        const int e = static_cast<int>(m.edges.size());
        m.edges.push_back({v, x, step.orient});
        auto& rot = m.rotations[static_cast<std::size_t>(v)];
        const int before = step.orient > 0 ? step.dart : back;
        rot.insert(std::find(rot.begin(), rot.end(), before), make_dart(e, 0));
        m.rotations[static_cast<std::size_t>(x)].push_back(make_dart(e, 1));
    }
    EmbeddingSpec spec;
    spec.map = m;
    return EmbeddedGraph::build(spec);
}

bool certificate_ok(const EmbeddedGraph& g, const DeletionResult& r)
{
    for (int e = 0; e < g.edge_count(); ++e) {
        const int a = r.certificate[static_cast<std::size_t>(g.edge(e).u)];
        const int b = r.certificate[static_cast<std::size_t>(g.edge(e).v)];
        if (a != 0 && a == b)
            return false;
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        const bool in_x = std::binary_search(r.x.begin(), r.x.end(), v);
        if (in_x != (r.certificate[static_cast<std::size_t>(v)] == 0))
            return false;
    }
    return true;
}

Graph disjoint_union(const Graph& a, const Graph& b)
{
    Graph out(a.order() + b.order());
    for (const auto& [u, v] : a.edges())
        out.add_edge(u, v);
    for (const auto& [u, v] : b.edges())
        out.add_edge(a.order() + u, a.order() + v);
    return out;
}

} // namespace

TEST_CASE("planar inputs need no deletions")
{
    const auto kappa = default_kappa(default_eta());
    for (const auto& g : {fixture::cube(), EmbeddedGraph::from_faces(5, {{0, 1, 2, 3, 4}, {4, 3, 2, 1, 0}})}) {
        const auto r = deletion_set(g, kappa);
        CHECK(r.x.empty());
        CHECK(r.within_bound());
        CHECK(certificate_ok(g, r));
        REQUIRE(r.trace().size() == 1);
        CHECK(r.trace()[0].rfind("rule=i detail=", 0) == 0);
    }
}

TEST_CASE("the Groetzsch graph loses one vertex")
{
    const auto g = groetzsch_pp();
    const auto r = deletion_set(g, default_kappa(default_eta()));
    CHECK(r.x.size() == 1);
    CHECK(certificate_ok(g, r));
    CHECK(r.beta == std::max(Rational(5) * default_kappa(default_eta()), Rational(4)));
    CHECK(r.within_bound());
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].rule == "iv");
    CHECK(r.to_text().find("rule=iv detail=genus 1, n=11") != std::string::npos);
}

TEST_CASE("triangles are rejected")
{
    const auto k4 = EmbeddedGraph::from_faces(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
    try {
        deletion_set(k4, 1);
        FAIL("expected HasTriangle");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::HasTriangle);
    }
    CHECK_THROWS_AS(deletion_set(fixture::hexagon_tripod(), 1), Error);
}

TEST_CASE("torus embedding of the Groetzsch graph")
{
    const auto pp = groetzsch_pp();
    const auto torus = find_embedding(pp.underlying(), Surface::Torus);
    REQUIRE(torus.has_value());
    CHECK(torus->genus() == 2);
    CHECK(rotation_system_orientable(torus->map()));
    CHECK(oracle::cellular_genus(torus->map()) == 2);

    const auto r = deletion_set(*torus, default_kappa(default_eta()));
    CHECK(certificate_ok(*torus, r));
    CHECK_FALSE(r.x.empty());
    REQUIRE(!r.steps.empty());
    for (std::size_t i = 1; i < r.steps.size(); ++i) {
        const auto& a = r.steps[i - 1];
        const auto& b = r.steps[i];
        CHECK((b.genus < a.genus || (b.genus == a.genus && b.vertices < a.vertices)));
        if (a.rule == "ii")
            CHECK(b.genus < a.genus);
    }
    CHECK(r.steps.front().genus == 2);

    CHECK_FALSE(find_embedding(pp.underlying(), Surface::Sphere, 20000).has_value());
    const auto cube = fixture::cube().underlying();
    for (auto surf : {Surface::Sphere, Surface::ProjectivePlane, Surface::Torus}) {
        const auto e = find_embedding(cube, surf);
        REQUIRE(e.has_value());
        CHECK(e->genus() == euler_genus(surf));
        CHECK(e->underlying() == cube);
    }
}

TEST_CASE("a separating 4-cycle is cut off and coloured back in")
{
    const auto pp = groetzsch_pp();
    const auto g = add_vertex_in_face(pp, 0, 0, 2);
    REQUIRE(g.genus() == pp.genus());
    REQUIRE(g.faces().size() == pp.faces().size() + 1);
    const auto r = deletion_set(g, default_kappa(default_eta()));
    REQUIRE(r.steps.size() == 2);
    CHECK(r.steps[0].rule == "iii");
    CHECK(r.steps[1].rule == "iv");
    CHECK(r.x.size() == 1);
    CHECK(certificate_ok(g, r));
    CHECK(r.certificate[11] != 0);
}

TEST_CASE("4-critical packings")
{
    CHECK(max_4critical_packing(fixture::cube().underlying()).empty());

    const auto gr = groetzsch_pp().underlying();
    const auto two = max_4critical_packing(disjoint_union(gr, gr));
    REQUIRE(two.vertices.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(two.vertices[i].size() == 11);
        CHECK(two.edges[i].size() == 20);
    }

    Graph tail = gr;
    const int a = tail.add_vertex();
    const int b = tail.add_vertex();
    tail.add_edge(0, a);
    tail.add_edge(a, b);
    const auto core = max_4critical_packing(tail);
    REQUIRE(core.vertices.size() == 1);
    std::vector<int> expected(11);
    for (int v = 0; v < 11; ++v)
        expected[static_cast<std::size_t>(v)] = v;
    CHECK(core.vertices[0] == expected);
    CHECK(is_4_critical(Graph(gr)));
}
