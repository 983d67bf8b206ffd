#include <critsurf/census.hpp>
#include <critsurf/coloring.hpp>
#include <critsurf/emg.hpp>
#include <critsurf/error.hpp>
#include <critsurf/weights.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

using namespace critsurf;

namespace {

std::vector<std::pair<int, int>> edge_list(const EmbeddedGraph& g)
{
    std::vector<std::pair<int, int>> out;
    for (int e = 0; e < g.edge_count(); ++e)
        out.emplace_back(g.edge(e).u, g.edge(e).v);
    return out;
}

// Ring vertices of census graphs are 0..k-1 in cyclic order.
std::set<std::vector<std::pair<int, int>>> abstract_forms(const Catalog& c)
{
    std::set<std::vector<std::pair<int, int>>> out;
    for (const auto& g : c.graphs)
        out.insert(oracle::disk_normal_form(c.k, g.vertex_count(), edge_list(g)));
    return out;
}

// Relabels vertices and edges, reverses edge directions, rotates rotation lists and
// switches vertices at random: an isomorphic map.
MapData scramble(const MapData& m, std::mt19937& rng)
{
    const int n = m.vertex_count;
    const int e = static_cast<int>(m.edges.size());
    std::vector<int> vperm(static_cast<std::size_t>(n)), eperm(static_cast<std::size_t>(e));
    for (int i = 0; i < n; ++i)
        vperm[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < e; ++i)
        eperm[static_cast<std::size_t>(i)] = i;
    std::shuffle(vperm.begin(), vperm.end(), rng);
    std::shuffle(eperm.begin(), eperm.end(), rng);
    std::vector<int> flip(static_cast<std::size_t>(e)), sw(static_cast<std::size_t>(n));
    for (auto& f : flip)
        f = static_cast<int>(rng() % 2);
    for (auto& s : sw)
        s = static_cast<int>(rng() % 2);

    MapData out;
    out.vertex_count = n;
    out.edges.resize(static_cast<std::size_t>(e));
    out.rotations.resize(static_cast<std::size_t>(n));
    auto new_dart = [&](int d) {
        const int end = dart_end(d) ^ flip[static_cast<std::size_t>(dart_edge(d))];
        return make_dart(eperm[static_cast<std::size_t>(dart_edge(d))], end);
    };
    for (int i = 0; i < e; ++i) {
        Edge ed = m.edges[static_cast<std::size_t>(i)];
        if (sw[static_cast<std::size_t>(ed.u)] != sw[static_cast<std::size_t>(ed.v)])
            ed.sign = -ed.sign;
        if (flip[static_cast<std::size_t>(i)])
            std::swap(ed.u, ed.v);
        ed.u = vperm[static_cast<std::size_t>(ed.u)];
        ed.v = vperm[static_cast<std::size_t>(ed.v)];
        out.edges[static_cast<std::size_t>(eperm[static_cast<std::size_t>(i)])] = ed;
    }
    for (int v = 0; v < n; ++v) {
        std::vector<int> rot;
        for (int d : m.rotations[static_cast<std::size_t>(v)])
            rot.push_back(new_dart(d));
        if (sw[static_cast<std::size_t>(v)])
            std::reverse(rot.begin(), rot.end());
        if (!rot.empty())
            std::rotate(rot.begin(), rot.begin() + static_cast<std::ptrdiff_t>(rng() % rot.size()), rot.end());
        out.rotations[static_cast<std::size_t>(vperm[static_cast<std::size_t>(v)])] = rot;
    }
    return out;
}

} // namespace

TEST_CASE("multiset text")
{
    CHECK(to_string(Multiset{}) == "{}");
    CHECK(to_string(Multiset{5, 6}) == "{5,6}");
    CHECK(parse_multiset(" {6, 5,5} ") == Multiset{5, 5, 6});
    CHECK(parse_multiset("{}").empty());
    CHECK_THROWS_AS(parse_multiset("5,6"), Error);
    CHECK_THROWS_AS(parse_multiset("{5,x}"), Error);
    CHECK(face_multiset(fixture::hexagon_tripod()).empty());
    CHECK(face_multiset(fixture::ring_only(9)) == Multiset{9});
}

TEST_CASE("small girth-4 disk catalogs")
{
    for (int k : {4, 5}) {
        const auto c = enumerate_disk(4, k, 9);
        CHECK(c.entries.empty());
        CHECK(c.graphs.empty());
        CHECK(c.exhaustive_up_to == 9);
        CHECK(c.maps_examined > 0);
    }
    const auto six = enumerate_disk(4, 6, 9);
    REQUIRE(six.entries.size() == 1);
    CHECK(six.entries[0].lengths.empty());
    const auto tripod = fixture::hexagon_tripod();
    CHECK(abstract_forms(six).count(oracle::disk_normal_form(6, 7, edge_list(tripod))) == 1);
    for (const auto& g : six.graphs) {
        CHECK(is_R_critical(g).verdict);
        for (int f : g.internal_faces())
            CHECK(g.face_length(f) == 4);
    }
}

TEST_CASE("girth-5 catalogs are empty for short rings")
{
    for (int k : {5, 6, 7})
        CHECK(enumerate_disk(5, k, 11).entries.empty());
    const auto eight = enumerate_disk(5, 8, 10);
    CHECK(eight.contains({5, 5}));
    CHECK(enumerate_disk(5, 4, 8).graphs.empty());
    CHECK_THROWS_AS(enumerate_disk(3, 6, 8), Error);
    CHECK_THROWS_AS(enumerate_disk(4, 6, 5), Error);
}

TEST_CASE("disk census agrees with brute force over edge sets")
{
    struct Case {
        int k, internal, girth;
    };
    for (const Case c : {Case{4, 3, 4}, Case{5, 3, 4}, Case{6, 2, 4}, Case{8, 1, 4},
                         Case{9, 1, 5}}) {
        INFO("k = " << c.k << ", internal = " << c.internal << ", girth = " << c.girth);
        const auto cat = enumerate_disk(c.girth, c.k, c.k + c.internal, 4);
        const auto expected = oracle::critical_disk_graphs(c.k, c.internal, c.girth);
        CHECK(abstract_forms(cat) == std::set<std::vector<std::pair<int, int>>>(expected.begin(), expected.end()));
    }
}

TEST_CASE("catalog results do not depend on the job count")
{
    const auto a = enumerate_disk(4, 8, 10, 1);
    const auto b = enumerate_disk(4, 8, 10, 3);
    CHECK(a.to_text() == b.to_text());
    REQUIRE(a.graphs.size() == b.graphs.size());
    for (std::size_t i = 0; i < a.graphs.size(); ++i)
        CHECK(a.graphs[i].map().edges == b.graphs[i].map().edges);
}

TEST_CASE("canonical codes identify isomorphic maps")
{
    std::mt19937 rng(11);
    const auto maps = enumerate_surface(Surface::ProjectivePlane, 7);
    REQUIRE(!maps.empty());
    std::set<std::vector<int>> codes;
    for (const auto& g : maps) {
        const auto code = canonical_code(g.map());
        CHECK(codes.insert(code).second);
        for (int t = 0; t < 3; ++t)
            CHECK(canonical_code(scramble(g.map(), rng)) == code);
    }
    const auto cube = fixture::cube().map();
    for (int t = 0; t < 10; ++t)
        CHECK(canonical_code(scramble(cube, rng)) == canonical_code(cube));

    // The hexagon with and without a twisted edge: same graph, different maps.
    const auto hex = EmbeddedGraph::from_faces(6, {{0, 1, 2, 3, 4, 5}, {5, 4, 3, 2, 1, 0}}).map();
    auto twisted = hex;
    twisted.edges[0].sign = -1;
    CHECK(canonical_code(hex) != canonical_code(twisted));
    auto mirrored = cube;
    for (auto& rot : mirrored.rotations)
        std::reverse(rot.begin(), rot.end());
    CHECK(canonical_code(mirrored) == canonical_code(cube));
}

TEST_CASE("catalog files round-trip")
{
    auto cat = enumerate_disk(4, 8, 10);
    const auto dir = std::filesystem::temp_directory_path() / "critsurf_catalog_test";
    std::filesystem::remove_all(dir);
    write_catalog(dir, cat);
    const auto back = read_catalog(dir / "s4_8.txt");
    CHECK(back.r == 4);
    CHECK(back.k == 8);
    CHECK(back.exhaustive_up_to == 10);
    REQUIRE(back.entries.size() == cat.entries.size());
    for (std::size_t i = 0; i < back.entries.size(); ++i) {
        CHECK(back.entries[i].lengths == cat.entries[i].lengths);
        CHECK(std::filesystem::exists(dir / back.entries[i].witness_path));
    }
    const std::string text = cat.to_text();
    CHECK(text.rfind("# S_{4,8} exhaustive_up_to=10", 0) == 0);
    CHECK(text.find("{} | s4_8_w0.emg | 10\n") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("refinement")
{
    std::map<int, Catalog> store;
    for (int k = 5; k <= 8; ++k)
        store.emplace(k, enumerate_disk(4, k, 10));
    CatalogSet cats;
    for (const auto& [k, c] : store)
        cats[k] = &c;

    const auto r = is_refinement({}, {6}, cats);
    CHECK(r.refines);
    CHECK(r.chain == std::vector<Multiset>{{6}, {}});
    const auto self = is_refinement({5, 5}, {5, 5}, cats);
    CHECK(self.refines);
    CHECK(self.chain.size() == 1);
    // A 5 refines only to a 5 (S_{4,7} = {{5}}), so {5} never reaches the empty set.
    CHECK_FALSE(is_refinement({}, {5}, cats).refines);

    // Every element of S_{4,k} other than {k-2} refines an element of S_{4,k-2} or S_{5,k}.
    for (int k = 7; k <= 8; ++k) {
        const auto girth5 = enumerate_disk(5, k, 10);
        for (const auto& e : store.at(k).entries) {
            if (e.lengths == Multiset{k - 2})
                continue;
            bool found = false;
            for (const Catalog* src : std::initializer_list<const Catalog*>{&store.at(k - 2), &girth5})
                for (const auto& s1 : src->entries)
                    found = found || is_refinement(e.lengths, s1.lengths, cats).refines;
            CHECK_MESSAGE(found, to_string(e.lengths));
        }
    }

    try {
        is_refinement({}, {7}, cats);
        FAIL("expected CatalogIncomplete");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CatalogIncomplete);
        CHECK(std::string(e.what()).find("S_{4,9}") != std::string::npos);
    }
}

TEST_CASE("disk bounds on small catalogs")
{
    for (int k = 4; k <= 8; ++k) {
        const auto c = enumerate_disk(4, k, 9);
        if (k < 6)
            CHECK(c.graphs.empty());
        for (const auto& g : c.graphs) {
            CHECK(total_weight(g) <= s(k - 2));
            if (k <= 6)
                CHECK(face_multiset(g).empty());
        }
    }
    for (int k = 8; k <= 9; ++k)
        for (const auto& g : enumerate_disk(5, k, 11).graphs) {
            CHECK(total_weight(g) <= s(k - 3) + s(5));
            const auto m = face_multiset(g);
            REQUIRE(!m.empty());
            CHECK(m.back() <= k - 3);
            if (m.back() == k - 3)
                CHECK(m == Multiset{5, k - 3});
        }
}

TEST_CASE("surface enumeration")
{
    CHECK(to_string(Surface::KleinBottle) == "klein-bottle");
    CHECK(parse_surface("projective-plane") == Surface::ProjectivePlane);
    CHECK(parse_surface("plane") == Surface::Sphere);
    CHECK_THROWS_AS(parse_surface("moon"), Error);

    for (auto surf : {Surface::Sphere, Surface::ProjectivePlane, Surface::Torus, Surface::KleinBottle}) {
        const auto maps = enumerate_surface(surf, 7);
        CHECK(!maps.empty());
        for (const auto& g : maps) {
            CHECK(g.genus() == euler_genus(surf));
            CHECK(rotation_system_orientable(g.map()) == orientable(surf));
            CHECK(oracle::cellular_genus(g.map()) == euler_genus(surf));
            CHECK_FALSE(g.underlying().has_triangle());
        }
    }

    for (const auto& g : enumerate_surface(Surface::Sphere, 8))
        CHECK(three_color(g.underlying()).has_value());

    SurfaceConstraints quad;
    quad.quadrangulation = true;
    const auto pp = enumerate_surface(Surface::ProjectivePlane, 9, quad);
    CHECK(!pp.empty());
    for (const auto& g : pp) {
        for (const auto& w : g.walks())
            CHECK(w.length() == 4);
        // Below eleven vertices every triangle-free graph is 3-colourable.
        CHECK(g.underlying().bipartite());
    }

    // With triangles allowed, K4 quadrangulates the projective plane.
    SurfaceConstraints loose = quad;
    loose.girth = 3;
    const auto k4 = enumerate_surface(Surface::ProjectivePlane, 4, loose);
    REQUIRE(k4.size() == 1);
    CHECK(k4[0].edge_count() == 6);
    CHECK_FALSE(three_color(k4[0].underlying()).has_value());
}

TEST_CASE("smallest triangle-free non-bipartite projective quadrangulation")
{
    // Found by enumerate_surface at n_max = 11; it is the only one with 11 vertices.
    const auto g = read_emg_file(std::filesystem::path(CRITSURF_TEST_DATA) / "groetzsch_pp.emg");
    CHECK(g.vertex_count() == 11);
    CHECK(g.genus() == 1);
    CHECK_FALSE(rotation_system_orientable(g.map()));
    for (const auto& w : g.walks())
        CHECK(w.length() == 4);
    const auto u = g.underlying();
    CHECK_FALSE(u.has_triangle());
    CHECK_FALSE(u.bipartite());
    CHECK_FALSE(three_color(u).has_value());
    CHECK(is_4_critical(u));
    std::vector<int> degrees;
    for (int v = 0; v < u.order(); ++v)
        degrees.push_back(u.degree(v));
    std::sort(degrees.begin(), degrees.end());
    CHECK(degrees == std::vector<int>{3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 5});
}
