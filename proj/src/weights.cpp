#include <critsurf/weights.hpp>

#include <critsurf/coloring.hpp>
#include <critsurf/error.hpp>
#include <critsurf/topology.hpp>

#include <charconv>
#include <sstream>

namespace critsurf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

long count_triangles(const Graph& g)
{
    long count = 0;
    for (int u = 0; u < g.order(); ++u)
        for (int v : g.neighbors(u))
            if (v > u)
                for (int w : g.neighbors(v))
                    if (w > v && g.adjacent(u, w))
                        ++count;
    return count;
}

bool admissible(long g, long t, long t0, long t1) { return g >= 0 && t0 >= 0 && t1 >= 0 && t >= t0 + t1; }

std::string tuple(std::initializer_list<long> xs)
{
    std::string out = "(";
    for (long x : xs)
        out += (out.size() > 1 ? "," : "") + std::to_string(x);
    return out + ")";
}

} // namespace

std::string to_string(const Rational& r)
{
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& text)
{
    const auto slash = text.find('/');
    auto parse_int = [&](const std::string& part) {
        long v = 0;
        const auto* end = part.data() + part.size();
        auto [ptr, ec] = std::from_chars(part.data(), end, v);
        if (part.empty() || ec != std::errc() || ptr != end)
            throw Error(ErrorCode::ParseError, "not a rational number: '" + text + "'");
        return v;
    };
    if (slash == std::string::npos)
        return Rational(parse_int(text));
    const long q = parse_int(text.substr(slash + 1));
    if (q == 0)
        throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    return Rational(parse_int(text.substr(0, slash)), q);
}

Rational s(int l)
{
    if (l < 2)
        throw Error(ErrorCode::DomainError, "s is defined for lengths of at least 2");
    switch (l) {
    case 5: return Rational(4, 4113);
    case 6: return Rational(72, 4113);
    case 7: return Rational(540, 4113);
    case 8: return Rational(2184, 4113);
    default: return l <= 4 ? Rational(0) : Rational(l - 8);
    }
}

long gen(const SurfArgs& a)
{
    if (!admissible(a.g, a.t, a.t0, a.t1))
        throw Error(ErrorCode::DomainError, "gen needs non-negative arguments with t >= t0 + t1");
    return 120 * a.g + 48 * a.t - 4 * a.t1 - 5 * a.t0 - 120;
}

long surf(const SurfArgs& a)
{
    const long base = gen(a);
    if (a.g == 0 && a.t == 2 && a.t0 + a.t1 == 2)
        return base + 116 - 42 * a.t;
    if (a.g == 0 && a.t <= 2 && a.t0 + a.t1 < 2)
        return base + 114 - 42 * a.t;
    return base;
}

Rational face_weight(const EmbeddedGraph& g, int f)
{
    if (!g.is_internal(f))
        throw Error(ErrorCode::RingFace, "weights are defined for internal faces");
    const int len = g.face_length(f);
    return g.face_class(f) == FaceClass::Neither ? Rational(len) : s(len);
}

Rational total_weight(const EmbeddedGraph& g)
{
    Rational total = 0;
    for (int f : g.internal_faces())
        total += face_weight(g, f);
    return total;
}

SurfArgs surf_args(const EmbeddedGraph& g)
{
    return {g.genus(), static_cast<long>(g.rings().size()), g.weak_vertex_ring_count(), g.strong_vertex_ring_count()};
}

long surf_face(const EmbeddedGraph& g, int f)
{
    if (!g.is_internal(f))
        throw Error(ErrorCode::RingFace, "surf(f) is defined for internal faces");
    const auto& face = g.faces()[at(f)];
    SurfArgs a{face.genus, static_cast<long>(face.walks.size()), 0, 0};
    for (int w : face.walks) {
        const auto& walk = g.walks()[at(w)];
        if (!walk.is_lone())
            continue;
        const int r = g.vertex_ring_at(walk.lone_vertex);
        if (r >= 0)
            ++(g.rings()[at(r)].weak ? a.t0 : a.t1);
    }
    return surf(a);
}

Rational default_eta() { return Rational(1); }

Rational default_kappa(const Rational& eta) { return 1600 * eta / s(5); }

std::string Report::to_text() const
{
    std::ostringstream out;
    for (const auto& [k, v] : fields)
        out << k << " = " << v << '\n';
    out << "verdict = " << (verdict ? "pass" : "fail") << '\n';
    return out.str();
}

Report weight_report(const EmbeddedGraph& g, const Rational& eta)
{
    Report r;
    for (int f : g.internal_faces()) {
        const std::string key = "face." + std::to_string(f);
        r.add(key + ".length", static_cast<long>(g.face_length(f)));
        r.add(key + ".class", to_string(g.face_class(f)));
        r.add(key + ".s", s(std::max(2, g.face_length(f))));
        r.add(key + ".w", face_weight(g, f));
        r.add(key + ".surf", surf_face(g, f));
    }
    const auto a = surf_args(g);
    r.add("g", a.g);
    r.add("rings", a.t);
    r.add("t0", a.t0);
    r.add("t1", a.t1);
    r.add("ell", static_cast<long>(g.total_ring_length()));
    r.add("w", total_weight(g));
    r.add("gen", gen(a));
    r.add("surf", surf(a));
    r.add("eta", eta);
    return r;
}

Report check_main_inequality(const EmbeddedGraph& g, const Rational& kappa)
{
    if (!g.rings().empty())
        throw Error(ErrorCode::PreconditionFailed, "the main inequality concerns graphs without rings");
    const Graph ug = g.underlying();
    if (!is_4_critical(ug))
        throw Error(ErrorCode::NotCritical, "graph is not 4-critical");
    long lhs = 0;
    for (int f = 0; f < static_cast<int>(g.faces().size()); ++f)
        lhs += g.face_length(f) - 4;
    const long t = count_triangles(ug);
    long c = 0;
    for (const auto& cyc : simple_cycles(ug, 4))
        if (cyc.size() == 4 && !is_facial_cycle(g, cyc))
            ++c;
    const long scale = g.genus() + t + c - 1;
    Report r;
    r.add("lhs", lhs);
    r.add("g", static_cast<long>(g.genus()));
    r.add("t", t);
    r.add("c", c);
    r.add("kappa", kappa);
    r.add("rhs", kappa * scale);
    if (scale > 0)
        r.add("min_kappa", Rational(std::max(0L, lhs), scale));
    r.verdict = Rational(lhs) <= kappa * scale;
    return r;
}

Report check_maingen_inequality(const EmbeddedGraph& g, const Rational& eta, int jobs)
{
    const Graph ug = g.underlying();
    if (ug.has_triangle())
        throw Error(ErrorCode::HypothesisViolated, "graph contains a triangle");
    for (const auto& cyc : simple_cycles(ug, 4))
        if (cyc.size() == 4 && !classify_cycle(g, cyc).contractible())
            throw Error(ErrorCode::HypothesisViolated, "graph has a non-contractible 4-cycle");
    if (!is_R_critical(g, jobs).verdict)
        throw Error(ErrorCode::HypothesisViolated, "graph is not R-critical");
    const auto a = surf_args(g);
    const Rational w = total_weight(g);
    const long sf = surf(a);
    const long ell = g.total_ring_length();
    Report r;
    r.add("w", w);
    r.add("g", a.g);
    r.add("rings", a.t);
    r.add("t0", a.t0);
    r.add("t1", a.t1);
    r.add("surf", sf);
    r.add("ell", ell);
    r.add("eta", eta);
    r.add("rhs", eta * sf + ell);
    if (sf > 0)
        r.add("min_eta", w > ell ? Rational(w - ell) / sf : Rational(0));
    r.verdict = w <= eta * sf + ell;
    return r;
}

bool SurfAudit::ok() const
{
    for (const auto& c : clauses)
        if (!c.failures.empty())
            return false;
    return true;
}

std::string SurfAudit::to_text() const
{
    std::ostringstream out;
    for (const auto& c : clauses) {
        out << "clause " << c.name << ": checked " << c.checked << ", failures " << c.failures.size() << '\n';
        for (const auto& f : c.failures)
            out << "  " << f << '\n';
    }
    return out.str();
}

SurfAudit surfineq_audit(int max_g, int max_t)
{
    SurfAudit audit;
    SurfAudit::Clause a{'a', 0, {}}, b{'b', 0, {}}, c{'c', 0, {}}, d{'d', 0, {}};
    for (long g = 0; g <= max_g; ++g)
        for (long t = 0; t <= max_t; ++t)
            for (long t0 = 0; t0 <= t; ++t0)
                for (long t1 = 0; t0 + t1 <= t; ++t1) {
                    const long base = surf(g, t, t0, t1);

                    // (a) premise: g = 0 and t <= 2 force t0 + t1 < t.
                    if (t >= 2 && !(g == 0 && t <= 2 && t0 + t1 >= t))
                        for (long u0 = 0; u0 <= t0; ++u0)
                            for (long u1 = 0; u1 <= t1; ++u1) {
                                if (u0 + u1 < t0 + t1 - 2 || !admissible(g, t - 1, u0, u1))
                                    continue;
                                ++a.checked;
                                if (surf(g, t - 1, u0, u1) > base - 1)
                                    a.failures.push_back(tuple({g, t, t0, t1, u0, u1}));
                            }

                    for (long h = 0; h < g; ++h) {
                        if (!(h > 0 || t >= 2))
                            continue;
                        ++b.checked;
                        if (surf(h, t, t0, t1) > base - 120 * (g - h) + 32)
                            b.failures.push_back(tuple({g, h, t, t0, t1}));
                    }

                    if (g >= 2) {
                        ++d.checked;
                        if (surf(g - 2, t, t0, t1) > base - 124)
                            d.failures.push_back(tuple({g, t, t0, t1}));
                    }

                    // (c): split every argument into two admissible parts.
                    for (long g1 = 0; g1 <= g; ++g1)
                        for (long u = 0; u <= t; ++u)
                            for (long u0 = 0; u0 <= t0; ++u0)
                                for (long u1 = 0; u1 <= t1; ++u1) {
                                    const long g2 = g - g1, v = t - u, v0 = t0 - u0, v1 = t1 - u1;
                                    if (!admissible(g1, u, u0, u1) || !admissible(g2, v, v0, v1))
                                        continue;
                                    if (!(g2 > 0 || v >= 1) || !(g1 > 0 || u >= 2))
                                        continue;
                                    ++c.checked;
                                    const long delta = g2 == 0 && v == 1 ? 16 : 56;
                                    if (surf(g1, u, u0, u1) + surf(g2, v, v0, v1) > base - delta)
                                        c.failures.push_back(tuple({g1, u, u0, u1, g2, v, v0, v1}));
                                }
                }
    audit.clauses = {a, b, c, d};
    return audit;
}

} // namespace critsurf
