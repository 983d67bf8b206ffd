#include <critsurf/verify.hpp>

#include <critsurf/census.hpp>
#include <critsurf/coloring.hpp>
#include <critsurf/decompose.hpp>
#include <critsurf/error.hpp>
#include <critsurf/reduce.hpp>
#include <critsurf/surgery.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace critsurf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

constexpr std::size_t shown_failures = 20;

class Context {
public:
    explicit Context(const VerificationOptions& o) : opt(o) {}

    const VerificationOptions& opt;

    const Catalog& disk(int r, int k)
    {
        const int n = r == 4 ? opt.disk_n : opt.girth5_n;
        auto it = catalogs_.find({r, k});
        if (it == catalogs_.end())
            it = catalogs_.emplace(std::make_pair(r, k), enumerate_disk(r, k, std::max(n, k), opt.jobs)).first;
        return it->second;
    }

private:
    std::map<std::pair<int, int>, Catalog> catalogs_;
};

CheckResult make(int criterion, const std::string& name)
{
    CheckResult c;
    c.criterion = criterion;
    c.name = name;
    return c;
}

void finish(CheckResult& c, const std::string& detail)
{
    c.detail = detail;
    c.pass = c.failures.empty();
}

bool is_quadrangulation(const EmbeddedGraph& g)
{
    for (const auto& f : g.faces())
        if (f.genus != 0 || f.walks.size() != 1 || g.walks()[at(f.walks[0])].length() != 4 ||
            !g.walks()[at(f.walks[0])].is_cycle(g.map()))
            return false;
    return true;
}

EmbeddedGraph hexagon_tripod()
{
    return EmbeddedGraph::from_faces(7, {{0, 1, 2, 6}, {2, 3, 4, 6}, {4, 5, 0, 6}, {5, 4, 3, 2, 1, 0}}, {3});
}

// --- weights -----------------------------------------------------------------

CheckResult weight_values()
{
    auto c = make(1, "weight-values");
    const Rational expected[] = {Rational(4, 4113), Rational(72, 4113), Rational(540, 4113), Rational(2184, 4113)};
    std::ostringstream d;
    for (int l = 5; l <= 8; ++l) {
        const Rational v = s(l);
        d << "s(" << l << ")=" << to_string(v) << " ";
        if (v != expected[l - 5])
            c.failures.push_back("s(" + std::to_string(l) + ") = " + to_string(v));
    }
    const long a = surf(0, 2, 0, 2), b = surf(0, 2, 0, 1);
    d << "surf(0,2,0,2)=" << a << " surf(0,2,0,1)=" << b;
    if (a != 0)
        c.failures.push_back("surf(0,2,0,2) = " + std::to_string(a));
    if (b != 2)
        c.failures.push_back("surf(0,2,0,1) = " + std::to_string(b));
    finish(c, d.str());
    return c;
}

CheckResult s_properties()
{
    auto c = make(3, "s-properties");
    long pairs = 0;
    for (int a = 5; a <= 64; ++a)
        for (int b = 5; b <= 64; ++b, ++pairs)
            if (s(a) + s(b) > s(a + b - 4))
                c.failures.push_back("s(" + std::to_string(a) + ")+s(" + std::to_string(b) + ") > s(a+b-4)");
    for (int a = 2; a <= 64; ++a)
        for (int b = 2; b <= a; ++b, ++pairs)
            if (s(a) - s(b) > Rational(a - b))
                c.failures.push_back("s(" + std::to_string(a) + ")-s(" + std::to_string(b) + ") > a-b");
    finish(c, std::to_string(pairs) + " pairs");
    return c;
}

CheckResult surfineq()
{
    auto c = make(2, "surfineq");
    const auto audit = surfineq_audit(6, 8);
    std::ostringstream d;
    d << "g<=6 t<=8";
    for (const auto& cl : audit.clauses) {
        d << " (" << cl.name << ") " << cl.checked;
        for (const auto& f : cl.failures)
            c.failures.push_back(std::string("(") + cl.name + ") " + f);
    }
    finish(c, d.str());
    return c;
}

// --- disk census ----------------------------------------------------------------

CheckResult disk_faces(Context& ctx)
{
    auto c = make(4, "disk-critical-faces");
    const auto tripod = canonical_code(hexagon_tripod().map());
    std::ostringstream d;
    bool tripod_found = false;
    for (int k = 4; k <= 6; ++k) {
        const auto& cat = ctx.disk(4, k);
        d << "|R|=" << k << ": " << cat.graphs.size() << " graphs; ";
        if (k < 6 && !cat.graphs.empty())
            c.failures.push_back("S_{4," + std::to_string(k) + "} has " + std::to_string(cat.graphs.size()) +
                                 " critical graphs");
        for (std::size_t i = 0; i < cat.graphs.size(); ++i) {
            const auto& g = cat.graphs[i];
            if (!face_multiset(g).empty())
                c.failures.push_back("|R|=" + std::to_string(k) + " graph " + std::to_string(i) + " has faces " +
                                     to_string(face_multiset(g)));
            tripod_found = tripod_found || canonical_code(g.map()) == tripod;
        }
    }
    if (!tripod_found)
        c.failures.push_back("hexagon-tripod missing from |R|=6");
    d << "n<=" << ctx.opt.disk_n << ", hexagon-tripod " << (tripod_found ? "found" : "missing");
    finish(c, d.str());
    return c;
}

CheckResult disk_weights(Context& ctx)
{
    auto c = make(5, "disk-weights");
    std::ostringstream d;
    long graphs = 0;
    for (int k = 4; k <= ctx.opt.ring_max; ++k) {
        const auto& cat = ctx.disk(4, k);
        Rational worst = 0;
        for (std::size_t i = 0; i < cat.graphs.size(); ++i) {
            const Rational w = total_weight(cat.graphs[i]);
            worst = std::max(worst, w);
            if (w > s(k - 2))
                c.failures.push_back("l=" + std::to_string(k) + " graph " + std::to_string(i) + " w=" + to_string(w));
        }
        graphs += static_cast<long>(cat.graphs.size());
        d << "l=" << k << " max w=" << to_string(worst) << " bound=" << to_string(s(k - 2)) << "; ";
    }
    d << graphs << " graphs, n<=" << ctx.opt.disk_n;
    finish(c, d.str());
    return c;
}

CheckResult girth5(Context& ctx)
{
    auto c = make(6, "girth5");
    std::ostringstream d;
    for (int k = 5; k <= 9; ++k) {
        const auto& cat = ctx.disk(5, k);
        d << "l=" << k << ": " << cat.graphs.size() << " graphs";
        if (k <= 7 && !cat.entries.empty())
            c.failures.push_back("S_{5," + std::to_string(k) + "} is not empty");
        for (std::size_t i = 0; i < cat.graphs.size(); ++i) {
            const auto& g = cat.graphs[i];
            const std::string tag = "l=" + std::to_string(k) + " graph " + std::to_string(i) + ": ";
            const Rational w = total_weight(g);
            if (w > s(k - 3) + s(5))
                c.failures.push_back(tag + "w=" + to_string(w));
            const auto m = face_multiset(g);
            if (!m.empty() && m.back() > k - 3)
                c.failures.push_back(tag + "face of length " + std::to_string(m.back()));
            if (!m.empty() && m.back() == k - 3 && m != Multiset{5, k - 3})
                c.failures.push_back(tag + "faces " + to_string(m));
        }
        d << " S=";
        for (const auto& e : cat.entries)
            d << to_string(e.lengths);
        d << "; ";
    }
    d << "n<=" << ctx.opt.girth5_n;
    finish(c, d.str());
    return c;
}

CheckResult refinement(Context& ctx)
{
    auto c = make(7, "refinement");
    CatalogSet cats;
    for (int k = 4; k <= ctx.opt.ring_max; ++k)
        cats[k] = &ctx.disk(4, k);
    std::ostringstream d;
    long certified = 0, truncated = 0;
    for (int k = 7; k <= ctx.opt.ring_max; ++k) {
        const auto& target = ctx.disk(4, k);
        const std::vector<const Catalog*> sources{&ctx.disk(4, k - 2), &ctx.disk(5, k)};
        for (const auto& e : target.entries) {
            if (e.lengths == Multiset{k - 2})
                continue;
            std::string via;
            try {
                for (const Catalog* src : sources) {
                    for (const auto& s1 : src->entries) {
                        const auto r = is_refinement(e.lengths, s1.lengths, cats);
                        truncated += r.truncated ? 1 : 0;
                        if (r.refines) {
                            via = to_string(s1.lengths) + " in S_{" + std::to_string(src->r) + "," +
                                  std::to_string(src->k) + "}";
                            break;
                        }
                    }
                    if (!via.empty())
                        break;
                }
            } catch (const Error& ex) {
                c.failures.push_back("S_{4," + std::to_string(k) + "} " + to_string(e.lengths) + ": " + ex.what());
                continue;
            }
            if (via.empty())
                c.failures.push_back("S_{4," + std::to_string(k) + "} " + to_string(e.lengths) + " refines nothing");
            else {
                ++certified;
                d << to_string(e.lengths) << " <- " << via << "; ";
            }
        }
    }
    d << certified << " certified, " << truncated << " truncated searches; exhaustive only up to n<="
      << ctx.opt.disk_n << " (girth 4) and n<=" << ctx.opt.girth5_n << " (girth 5)";
    finish(c, d.str());
    return c;
}

// --- closed surfaces ----------------------------------------------------------------

// A 4-critical subgraph that quadrangulates the surface non-bipartitely.
bool has_nonbipartite_quadrangulation_core(const EmbeddedGraph& g)
{
    const auto packing = max_4critical_packing(g.underlying());
    for (std::size_t i = 0; i < packing.vertices.size(); ++i) {
        std::vector<int> edges;
        for (const auto& [a, b] : packing.edges[i])
            edges.push_back(g.edge_between(a, b));
        const auto sub = subgraph(g, packing.vertices[i], edges);
        if (sub.graph.genus() == g.genus() && is_quadrangulation(sub.graph) && !sub.graph.underlying().bipartite())
            return true;
    }
    return false;
}

CheckResult gimbel_thomassen(Context& ctx)
{
    auto c = make(8, "gimbel-thomassen");
    const int n = ctx.opt.surface_n;
    const auto sphere = enumerate_surface(Surface::Sphere, n);
    for (std::size_t i = 0; i < sphere.size(); ++i)
        if (!is_three_colorable(sphere[i].underlying()))
            c.failures.push_back("sphere map " + std::to_string(i) + " is not 3-colourable");

    const auto pp = enumerate_surface(Surface::ProjectivePlane, n);
    long colourable = 0, nbq = 0;
    for (std::size_t i = 0; i < pp.size(); ++i) {
        const auto& g = pp[i];
        const bool col = is_three_colorable(g.underlying());
        colourable += col ? 1 : 0;
        const bool quad = is_quadrangulation(g) && !g.underlying().bipartite();
        nbq += quad ? 1 : 0;
        if (quad && col)
            c.failures.push_back("projective map " + std::to_string(i) + ": 3-colourable non-bipartite quadrangulation");
        if (!col && !has_nonbipartite_quadrangulation_core(g))
            c.failures.push_back("projective map " + std::to_string(i) +
                                 ": not 3-colourable without a non-bipartite quadrangulation");
    }

    const auto gr = groetzsch_projective();
    const bool gr_ok = is_quadrangulation(gr) && !gr.underlying().bipartite() && !is_three_colorable(gr.underlying()) &&
                       has_nonbipartite_quadrangulation_core(gr);
    if (!gr_ok)
        c.failures.push_back("11-vertex projective Groetzsch embedding does not match");

    std::ostringstream d;
    d << "sphere n<=" << n << ": " << sphere.size() << " maps; projective plane n<=" << n << ": " << pp.size()
      << " maps, " << colourable << " 3-colourable, " << nbq << " non-bipartite quadrangulations; n=11 Groetzsch "
      << (gr_ok ? "non-colourable quadrangulation" : "mismatch");
    finish(c, d.str());
    return c;
}

// --- reductions -------------------------------------------------------------------

CheckResult reduction(Context& ctx)
{
    auto c = make(9, "reduction");
    long attempted = 0, ring_bound = 0, hypotheses = 0;
    auto run = [&](int r, int k) {
        const auto& cat = ctx.disk(r, k);
        for (std::size_t i = 0; i < cat.graphs.size(); ++i) {
            const auto& g = cat.graphs[i];
            for (int f : g.internal_faces()) {
                const std::string tag = "S_{" + std::to_string(r) + "," + std::to_string(k) + "} graph " +
                                        std::to_string(i) + " face " + std::to_string(f) + ": ";
                try {
                    if (is_ring_bound(g, f).bound) {
                        ++ring_bound;
                        continue;
                    }
                } catch (const Error& ex) {
                    if (ex.code() == ErrorCode::NotA4Face)
                        continue;
                    throw;
                }
                try {
                    const auto red = reduce_4face(g, f, ctx.opt.jobs);
                    ++attempted;
                    for (const auto& why : red.failures)
                        c.failures.push_back(tag + why);
                } catch (const Error& ex) {
                    if (ex.code() == ErrorCode::PreconditionFailed) {
                        ++hypotheses;
                        continue;
                    }
                    ++attempted;
                    c.failures.push_back(tag + ex.what());
                }
            }
        }
    };
    for (int k = 4; k <= ctx.opt.ring_max; ++k)
        run(4, k);
    for (int k = 5; k <= 9; ++k)
        run(5, k);
    if (attempted == 0)
        c.failures.push_back("no census instance admits a reduction");
    finish(c, std::to_string(attempted) + " reductions, " + std::to_string(ring_bound) + " ring-bound faces, " +
                  std::to_string(hypotheses) + " instances failing the hypotheses");
    return c;
}

CheckResult collapse_lift(Context& ctx)
{
    auto c = make(10, "collapse-lift");
    std::mt19937_64 rng(ctx.opt.seed);
    long colorings = 0, done = 0;
    for (int trial = 0; trial < ctx.opt.patches; ++trial) {
        const auto g = random_quadrangulation(rng, ctx.opt.patch_n, trial % 2 == 1);
        const auto faces = g.internal_faces();
        const int f = faces[std::uniform_int_distribution<std::size_t>(0, faces.size() - 1)(rng)];
        const auto w = face_quad(g, f);
        const bool ring02 = g.is_ring_vertex(w[0]) && g.is_ring_vertex(w[2]);
        const bool ring13 = g.is_ring_vertex(w[1]) && g.is_ring_vertex(w[3]);
        if (ring02 && ring13)
            continue;
        const QuadLabeling lab{ring02 ? 1 : 0, rng() % 2 == 1};
        const auto col = collapse_4face(g, f, lab);
        const auto host = g.underlying();
        const std::string tag = "patch " + std::to_string(trial) + ": ";
        bool ok = true;
        colorings += for_each_three_coloring(col.graph.underlying(), [&](const Coloring& psi) {
            const auto lifted = lift_coloring(col, psi);
            for (const auto& [a, b] : host.edges())
                ok = ok && lifted[at(a)] >= 1 && lifted[at(a)] <= 3 && lifted[at(a)] != lifted[at(b)];
            ok = ok && lifted[at(col.labels[0])] == lifted[at(col.labels[2])];
            for (std::size_t v = 0; v < col.vertex_origin.size(); ++v)
                ok = ok && lifted[at(col.vertex_origin[v])] == psi[v];
            return ok;
        });
        ++done;
        if (!ok)
            c.failures.push_back(tag + "a colouring of the collapse does not lift");
    }
    finish(c, std::to_string(done) + " patches with n<=" + std::to_string(ctx.opt.patch_n) + ", " +
                  std::to_string(colorings) + " colourings lifted");
    return c;
}

// --- decompose --------------------------------------------------------------------

std::string certificate_failure(const EmbeddedGraph& g, const DeletionResult& r)
{
    if (r.certificate.size() != at(g.vertex_count()))
        return "certificate has the wrong size";
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int col = r.certificate[at(v)];
        const bool in_x = std::binary_search(r.x.begin(), r.x.end(), v);
        if (in_x != (col == 0) || col < 0 || col > 3)
            return "certificate colour " + std::to_string(col) + " at vertex " + std::to_string(v);
    }
    for (const auto& [a, b] : g.underlying().edges())
        if (r.certificate[at(a)] != 0 && r.certificate[at(a)] == r.certificate[at(b)])
            return "edge " + std::to_string(a) + "-" + std::to_string(b) + " is monochromatic";
    return {};
}

CheckResult decompose(Context& ctx)
{
    auto c = make(11, "decompose");
    std::ostringstream d;

    const auto sphere = enumerate_surface(Surface::Sphere, ctx.opt.surface_n);
    for (std::size_t i = 0; i < sphere.size(); ++i) {
        const auto r = deletion_set(sphere[i], ctx.opt.kappa);
        if (!r.x.empty())
            c.failures.push_back("planar map " + std::to_string(i) + ": X not empty");
        if (const auto why = certificate_failure(sphere[i], r); !why.empty())
            c.failures.push_back("planar map " + std::to_string(i) + ": " + why);
    }
    d << sphere.size() << " planar maps with X empty; ";

    const auto gr = groetzsch_projective();
    const auto rp = deletion_set(gr, ctx.opt.kappa);
    if (rp.x.size() != 1)
        c.failures.push_back("projective Groetzsch: |X| = " + std::to_string(rp.x.size()));
    if (const auto why = certificate_failure(gr, rp); !why.empty())
        c.failures.push_back("projective Groetzsch: " + why);
    d << "projective Groetzsch |X|=" << rp.x.size() << "; ";

    const auto torus = find_embedding(gr.underlying(), Surface::Torus);
    if (!torus) {
        c.failures.push_back("no torus embedding of the Groetzsch graph found");
    } else {
        const auto rt = deletion_set(*torus, ctx.opt.kappa);
        if (const auto why = certificate_failure(*torus, rt); !why.empty())
            c.failures.push_back("torus Groetzsch: " + why);
        if (rt.x.empty())
            c.failures.push_back("torus Groetzsch: X empty for a non-3-colourable graph");
        if (!rt.within_bound())
            c.failures.push_back("torus Groetzsch: |X| above beta*g");
        for (std::size_t i = 1; i < rt.steps.size(); ++i) {
            const auto& a = rt.steps[i - 1];
            const auto& b = rt.steps[i];
            const bool down = b.genus < a.genus || (b.genus == a.genus && b.vertices < a.vertices);
            if (!down || (a.rule == "ii" && b.genus >= a.genus))
                c.failures.push_back("torus Groetzsch: step " + std::to_string(i) + " does not decrease");
        }
        d << "torus Groetzsch |X|=" << rt.x.size() << " trace";
        for (const auto& s : rt.steps)
            d << " " << s.rule << "(g=" << s.genus << ",n=" << s.vertices << ")";
    }
    finish(c, d.str());
    return c;
}

struct Suite {
    std::string id;
    std::vector<std::function<CheckResult(Context&)>> checks;
};

const std::vector<Suite>& suites()
{
    static const std::vector<Suite> all{
        {"weights", {[](Context&) { return weight_values(); }, [](Context&) { return s_properties(); }}},
        {"surfineq", {[](Context&) { return surfineq(); }}},
        {"disk-bounds", {disk_faces, disk_weights}},
        {"girth5", {girth5}},
        {"refinement", {refinement}},
        {"gimbel-thomassen", {gimbel_thomassen}},
        {"reduction", {reduction}},
        {"collapse-lift", {collapse_lift}},
        {"decompose", {decompose}},
    };
    return all;
}

} // namespace

bool VerificationReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string VerificationReport::to_text() const
{
    std::ostringstream out;
    out << "suite = " << suite << "\n";
    for (const auto& c : checks) {
        out << "check " << c.name << " (criterion " << c.criterion << ") " << (c.pass ? "PASS" : "FAIL") << "\n";
        out << "  " << c.detail << "\n";
        for (std::size_t i = 0; i < c.failures.size() && i < shown_failures; ++i)
            out << "  failure: " << c.failures[i] << "\n";
        if (c.failures.size() > shown_failures)
            out << "  ... " << c.failures.size() - shown_failures << " more failures\n";
    }
    out << "result = " << (ok() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::vector<std::string> verification_suites()
{
    std::vector<std::string> out;
    for (const auto& s : suites())
        out.push_back(s.id);
    out.push_back("all");
    return out;
}

VerificationReport run_verification(const std::string& suite, const VerificationOptions& options)
{
    VerificationReport report;
    report.suite = suite;
    Context ctx(options);
    bool known = false;
    for (const auto& s : suites()) {
        if (suite != "all" && suite != s.id)
            continue;
        known = true;
        for (const auto& check : s.checks)
            report.checks.push_back(check(ctx));
    }
    if (!known)
        throw Error(ErrorCode::DomainError, "unknown suite '" + suite + "'");
    std::stable_sort(report.checks.begin(), report.checks.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.criterion < b.criterion; });
    return report;
}

EmbeddedGraph random_quadrangulation(std::mt19937_64& rng, int max_n, bool ring)
{
    int n = 4;
    std::vector<std::vector<int>> faces{{0, 1, 2, 3}, {3, 2, 1, 0}};
    const int target = std::uniform_int_distribution<int>(5, std::max(5, max_n))(rng);
    while (n < target) {
        auto& f = faces[std::uniform_int_distribution<std::size_t>(0, faces.size() - 1)(rng)];
        std::rotate(f.begin(), f.begin() + std::uniform_int_distribution<int>(0, 3)(rng), f.end());
        const int a = f[0], b = f[1], c = f[2], d = f[3];
        if (n + 4 <= target && rng() % 2 == 0) {
            const int p = n, q = n + 1, r = n + 2, t = n + 3;
            f = {a, b, q, p};
            faces.push_back({b, c, r, q});
            faces.push_back({c, d, t, r});
            faces.push_back({d, a, p, t});
            faces.push_back({p, q, r, t});
            n += 4;
        } else {
            const int x = n++;
            f = {a, b, c, x};
            faces.push_back({a, x, c, d});
        }
    }
    return EmbeddedGraph::from_faces(n, faces, ring ? std::vector<int>{0} : std::vector<int>{});
}

} // namespace critsurf
