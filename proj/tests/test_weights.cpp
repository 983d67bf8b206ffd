#include <critsurf/error.hpp>
#include <critsurf/weights.hpp>

#include "fixtures.hpp"

#include <doctest.h>

using namespace critsurf;

namespace {

// Rings of lengths 4 and 5 on the sphere with the annulus between them as one face.
EmbeddedGraph annulus_4_5()
{
    const auto m = oriented_map(9, {{0, 1, 2, 3}, {3, 2, 1, 0}, {4, 5, 6, 7, 8}, {8, 7, 6, 5, 4}});
    return fixture::regroup(m, {{{fixture::walk_through(m, 1, 0), fixture::walk_through(m, 5, 4)}, 0}},
                            {fixture::walk_through(m, 0, 1), fixture::walk_through(m, 4, 5)});
}

// Two non-weak vertex rings joined by an edge, on the sphere with two cuffs.
EmbeddedGraph cylinder_edge()
{
    const auto m = oriented_map(2, {{0, 1}});
    return fixture::regroup(m, {}, {}, {{RingKind::Vertex, 0, 0, false}, {RingKind::Vertex, 0, 1, false}});
}

} // namespace

TEST_CASE("s takes the printed values")
{
    CHECK(s(2) == 0);
    CHECK(s(4) == 0);
    CHECK(s(5) == Rational(4, 4113));
    CHECK(s(6) == Rational(72, 4113));
    CHECK(s(7) == Rational(540, 4113));
    CHECK(s(8) == Rational(2184, 4113));
    CHECK(s(9) == 1);
    CHECK(s(12) == 4);
    CHECK_THROWS_AS(s(1), Error);
    CHECK(to_string(s(5)) == "4/4113");
    CHECK(to_string(s(12)) == "4/1");
    for (int l = 2; l <= 64; ++l) {
        CHECK(denominator(s(l) * 4113) == 1);
        if (l > 2)
            CHECK(s(l - 1) <= s(l));
    }
}

TEST_CASE("s is superadditive and 1-Lipschitz")
{
    for (int a = 5; a <= 64; ++a)
        for (int b = 5; b <= 64; ++b)
            CHECK(s(a) + s(b) <= s(a + b - 4));
    for (int a = 2; a <= 64; ++a)
        for (int b = 2; b <= a; ++b)
            CHECK(s(a) - s(b) <= a - b);
}

TEST_CASE("gen and surf")
{
    CHECK(surf(0, 2, 0, 2) == 0);
    CHECK(surf(0, 2, 0, 1) == 2);
    CHECK(surf(0, 2, 0, 0) == 6);
    CHECK(surf(0, 1, 0, 0) == 0);
    CHECK(gen({1, 1, 0, 0}) == 48);
    CHECK(surf(2, 3, 1, 1) == gen({2, 3, 1, 1}));
    CHECK_THROWS_AS(surf(0, 1, 1, 1), Error);
    for (long g = 0; g <= 4; ++g)
        for (long t = 0; t <= 6; ++t)
            for (long t0 = 0; t0 <= t; ++t0)
                for (long t1 = 0; t0 + t1 <= t; ++t1) {
                    const long diff = surf(g, t, t0, t1) - gen({g, t, t0, t1});
                    CHECK((diff == 0 || diff == 116 - 42 * t || diff == 114 - 42 * t));
                }
}

TEST_CASE("rational parsing")
{
    CHECK(parse_rational("7/2") == Rational(7, 2));
    CHECK(parse_rational("-3") == -3);
    CHECK(parse_rational("4/8") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK(default_kappa(1) == 1645200);
}

TEST_CASE("face weights")
{
    const auto tripod = fixture::hexagon_tripod();
    CHECK(total_weight(tripod) == 0);
    for (int f : tripod.internal_faces())
        CHECK(surf_face(tripod, f) == 0);

    const auto nine = fixture::ring_only(9);
    REQUIRE(nine.internal_faces().size() == 1);
    CHECK(face_weight(nine, nine.internal_faces()[0]) == 1);

    const auto ann = annulus_4_5();
    REQUIRE(ann.internal_faces().size() == 1);
    const int f = ann.internal_faces()[0];
    CHECK(ann.face_length(f) == 9);
    CHECK(face_weight(ann, f) == 9);
    CHECK(surf_face(ann, f) == 6);
    CHECK_THROWS_AS(face_weight(tripod, tripod.rings()[0].face), Error);
}

TEST_CASE("maingen inequality")
{
    const auto tripod = fixture::hexagon_tripod();
    const auto r = check_maingen_inequality(tripod, default_eta());
    CHECK(r.verdict);
    const std::string text = r.to_text();
    CHECK(text.find("w = 0/1\n") != std::string::npos);
    CHECK(text.find("rhs = 6/1\n") != std::string::npos);

    // The lone edge face is an open disk, so its weight is s(2) = 0.
    const auto edge = cylinder_edge();
    const auto er = check_maingen_inequality(edge, default_eta());
    CHECK(er.verdict);
    CHECK(er.to_text().find("surf = 0\n") != std::string::npos);
    CHECK(er.to_text().find("rhs = 2/1\n") != std::string::npos);

    try {
        check_maingen_inequality(fixture::ring_only(3), default_eta());
        FAIL("expected HypothesisViolated");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::HypothesisViolated);
    }
    CHECK_THROWS_AS(check_maingen_inequality(fixture::ring_only(6), default_eta()), Error);
}

TEST_CASE("main inequality")
{
    const auto k4 = fixture::k4_projective();
    const auto r = check_main_inequality(k4, default_kappa(1));
    CHECK(r.verdict);
    CHECK(r.to_text().find("t = 4\nc = 0\n") != std::string::npos);

    const auto planar = EmbeddedGraph::from_faces(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
    const auto p = check_main_inequality(planar, 0);
    CHECK(p.to_text().find("lhs = -4\n") != std::string::npos);
    CHECK(p.to_text().find("c = 3\n") != std::string::npos);
    CHECK(p.verdict);

    CHECK_THROWS_AS(check_main_inequality(fixture::cube(), 1), Error);
}

TEST_CASE("surf inequality audit")
{
    const auto audit = surfineq_audit(6, 8);
    INFO(audit.to_text());
    CHECK(audit.ok());
    for (const auto& c : audit.clauses)
        CHECK(c.checked > 0);
    // Spot checks.
    CHECK(surf(1, 1, 0, 0) <= surf(2, 1, 0, 0) - 120 + 32);
    CHECK(surf(0, 3, 0, 0) <= surf(2, 3, 0, 0) - 124);
}
