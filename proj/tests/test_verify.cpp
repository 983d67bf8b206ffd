#include <critsurf/census.hpp>
#include <critsurf/coloring.hpp>
#include <critsurf/emg.hpp>
#include <critsurf/error.hpp>
#include <critsurf/verify.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>

using namespace critsurf;

TEST_CASE("colouring enumeration matches the brute-force count")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_quadrangulation(rng, 10, false).underlying();
        long expected = 0;
        oracle::for_each_coloring(g.order(), g.edges(), [&](const std::vector<int>&) { ++expected; });
        long seen = 0;
        const long counted = for_each_three_coloring(g, [&](const Coloring& c) {
            for (const auto& [u, v] : g.edges())
                CHECK(c[static_cast<std::size_t>(u)] != c[static_cast<std::size_t>(v)]);
            ++seen;
            return true;
        });
        CHECK(counted == expected);
        CHECK(seen == expected);
    }
    // K4 has none; C5 has 30.
    Graph k4(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v)
            k4.add_edge(u, v);
    CHECK(for_each_three_coloring(k4, [](const Coloring&) { return true; }) == 0);
    Graph c5(5);
    for (int v = 0; v < 5; ++v)
        c5.add_edge(v, (v + 1) % 5);
    CHECK(for_each_three_coloring(c5, [](const Coloring&) { return true; }) == 30);
    CHECK(for_each_three_coloring(c5, [](const Coloring&) { return false; }) == 1);
}

TEST_CASE("random patches are sphere quadrangulations")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = random_quadrangulation(rng, 14, trial % 2 == 0);
        CHECK(g.genus() == 0);
        CHECK(g.vertex_count() >= 5);
        CHECK(g.vertex_count() <= 14);
        CHECK(g.underlying().bipartite());
        CHECK(oracle::cellular_genus(g.map()) == 0);
        for (const auto& w : g.walks())
            CHECK(w.length() == 4);
        CHECK(g.rings().size() == (trial % 2 == 0 ? 1u : 0u));
    }
}

TEST_CASE("the Groetzsch constant is the enumerated projective quadrangulation")
{
    const auto stored = read_emg_file(std::filesystem::path(CRITSURF_TEST_DATA) / "groetzsch_pp.emg");
    const auto g = groetzsch_projective();
    CHECK(canonical_code(g.map()) == canonical_code(stored.map()));
    CHECK(g.genus() == 1);
}

TEST_CASE("verification suites")
{
    const auto ids = verification_suites();
    REQUIRE(!ids.empty());
    CHECK(ids.back() == "all");
    CHECK_THROWS_AS(run_verification("nonsense"), Error);

    VerificationOptions small;
    small.patches = 40;
    small.patch_n = 10;
    small.disk_n = 9;
    small.ring_max = 7;
    small.girth5_n = 10;
    for (const std::string suite : {"weights", "surfineq", "disk-bounds", "collapse-lift", "refinement"}) {
        const auto r = run_verification(suite, small);
        CHECK_MESSAGE(r.ok(), r.to_text());
        CHECK(r.to_text() == run_verification(suite, small).to_text());
        CHECK(r.to_text().find("result = PASS") != std::string::npos);
    }
    const auto w = run_verification("weights", small);
    REQUIRE(w.checks.size() == 2);
    CHECK(w.checks[0].criterion == 1);
    CHECK(w.checks[1].criterion == 3);

    small.jobs = 4;
    const auto a = run_verification("disk-bounds", small);
    small.jobs = 1;
    CHECK(a.to_text() == run_verification("disk-bounds", small).to_text());
}
