#include <critsurf/census.hpp>
#include <critsurf/coloring.hpp>
#include <critsurf/decompose.hpp>
#include <critsurf/emg.hpp>
#include <critsurf/error.hpp>
#include <critsurf/reduce.hpp>
#include <critsurf/verify.hpp>
#include <critsurf/weights.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

using namespace critsurf;

namespace {

// Exit codes.
constexpr int ok_code = 0;
constexpr int false_code = 1;
constexpr int usage_code = 2;

std::string slurp(const std::string& path)
{
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool looks_like_emg(const std::string& text)
{
    const auto start = text.find_first_not_of(" \t\r\n");
    return start != std::string::npos && text.compare(start, 3, "EMG") == 0;
}

EmbeddedGraph load_emg(const std::string& path)
{
    return parse_emg(slurp(path));
}

// EMG or the first line of a graph6 file.
std::variant<EmbeddedGraph, Graph> load_any(const std::string& path)
{
    const auto text = slurp(path);
    if (looks_like_emg(text))
        return parse_emg(text);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (!line.empty())
            return parse_graph6(line);
    }
    throw Error(ErrorCode::ParseError, "no graph in " + path);
}

std::string colors_text(const Coloring& c)
{
    std::string out;
    for (std::size_t v = 0; v < c.size(); ++v)
        if (c[v] != 0)
            out += (out.empty() ? "" : " ") + std::to_string(v) + ":" + std::to_string(c[v]);
    return out;
}

Precoloring parse_phi(const EmbeddedGraph& g, const std::string& text)
{
    Precoloring phi(static_cast<std::size_t>(g.vertex_count()), 0);
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorCode::ParseError, "precoloring items are vertex:colour, got '" + item + "'");
        int v = 0, c = 0;
        try {
            v = std::stoi(item.substr(0, colon));
            c = std::stoi(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad precoloring item '" + item + "'");
        }
        if (v < 0 || v >= g.vertex_count())
            throw Error(ErrorCode::ParseError, "vertex " + std::to_string(v) + " out of range");
        phi[static_cast<std::size_t>(v)] = c;
    }
    check_precoloring(g, phi);
    return phi;
}

struct Globals {
    std::string eta = "1";
    std::string kappa;
    int jobs = 1;
    std::string witness_dir;

    Rational eta_value() const { return parse_rational(eta); }
    Rational kappa_value() const { return kappa.empty() ? default_kappa(eta_value()) : parse_rational(kappa); }
};

int analyze(const Globals& gl, const std::string& path)
{
    const auto g = load_emg(path);
    std::cout << "vertices = " << g.vertex_count() << "\n";
    std::cout << "edges = " << g.edge_count() << "\n";
    std::cout << "genus = " << g.genus() << "\n";
    std::cout << "orientable = " << (rotation_system_orientable(g.map()) ? "true" : "false") << "\n";
    std::map<int, int> lengths;
    for (int f : g.internal_faces())
        ++lengths[g.face_length(f)];
    for (const auto& [len, count] : lengths)
        std::cout << "faces.length." << len << " = " << count << "\n";
    std::cout << weight_report(g, gl.eta_value()).to_text();
    if (g.rings().empty() && is_4_critical(g.underlying()))
        std::cout << check_main_inequality(g, gl.kappa_value()).to_text();
    return ok_code;
}

int color(const std::string& path, const std::string& phi_text)
{
    const auto g = load_emg(path);
    std::optional<Coloring> c;
    if (!phi_text.empty() || !g.rings().empty()) {
        if (phi_text.empty())
            throw Error(ErrorCode::ParseError, "graph has rings; give --phi with a colour for every ring vertex");
        c = extend(g, parse_phi(g, phi_text));
    } else {
        c = three_color(g.underlying());
    }
    std::cout << "colourable = " << (c ? "true" : "false") << "\n";
    if (c)
        std::cout << "coloring = " << colors_text(*c) << "\n";
    return c ? ok_code : false_code;
}

int critical(const Globals& gl, const std::string& path)
{
    const auto input = load_any(path);
    if (const auto* graph = std::get_if<Graph>(&input)) {
        const bool v = is_4_critical(*graph);
        std::cout << "4-critical = " << (v ? "true" : "false") << "\n";
        return v ? ok_code : false_code;
    }
    const auto& g = std::get<EmbeddedGraph>(input);
    const auto cert = is_R_critical(g, gl.jobs);
    std::cout << "R-critical = " << (cert.verdict ? "true" : "false") << "\n";
    std::cout << "deletions = " << maximal_deletions(g).size() << "\n";
    if (cert.equals_ring_subgraph)
        std::cout << "reason = the graph consists of its rings\n";
    if (cert.counterexample)
        std::cout << "counterexample = " << (cert.counterexample->kind == Deletion::Kind::Edge ? "edge " : "vertex ")
                  << cert.counterexample->id << "\n";
    for (const auto& w : cert.witnesses)
        std::cout << "witness " << (w.deletion.kind == Deletion::Kind::Edge ? "edge " : "vertex ") << w.deletion.id
                  << " phi = " << colors_text(w.phi) << "\n";
    return cert.verdict ? ok_code : false_code;
}

int reduce(const Globals& gl, const std::string& path, int face)
{
    const auto g = load_emg(path);
    if (face < 0) {
        for (int f : g.internal_faces()) {
            try {
                if (!is_ring_bound(g, f).bound) {
                    face = f;
                    break;
                }
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NotA4Face)
                    throw;
            }
        }
        if (face < 0)
            throw Error(ErrorCode::PreconditionFailed, "no internal 4-face that is not ring-bound");
    }
    const auto r = reduce_4face(g, face, gl.jobs);
    std::cout << "face = " << face << "\n" << reduction_report(r);
    if (!gl.witness_dir.empty()) {
        std::filesystem::create_directories(gl.witness_dir);
        write_emg_file(std::filesystem::path(gl.witness_dir) / "reduced.emg", r.graph());
    }
    return r.ok() ? ok_code : false_code;
}

int flip_cmd(const std::string& path)
{
    const auto g = load_emg(path);
    const auto w = find_flippable(g);
    if (!w) {
        std::cout << "flippable = false\n";
        return false_code;
    }
    const auto r = flip_detailed(g, *w);
    std::cout << "flippable = true\n";
    std::cout << "cycle = " << w->cycle[0] << ' ' << w->cycle[1] << ' ' << w->cycle[2] << ' ' << w->cycle[3] << "\n";
    std::cout << "ring = " << w->ring << "\n";
    std::cout << "quad_face = " << r.quad_face << "\n";
    std::cout << write_emg(r.graph);
    return ok_code;
}

int census(const Globals& gl, int girth, int ring, int max_n, const std::string& surface, bool quad)
{
    if (!surface.empty()) {
        SurfaceConstraints c;
        c.girth = girth;
        c.quadrangulation = quad;
        const auto maps = enumerate_surface(parse_surface(surface), max_n, c);
        std::cout << "# " << surface << " n<=" << max_n << " girth>=" << girth << (quad ? " quadrangulations" : "")
                  << " maps=" << maps.size() << "\n";
        for (std::size_t i = 0; i < maps.size(); ++i) {
            const auto u = maps[i].underlying();
            std::cout << i << " n=" << u.order() << " e=" << u.size() << " graph6=" << to_graph6(u)
                      << " colourable=" << (is_three_colorable(u) ? "true" : "false") << "\n";
            if (!gl.witness_dir.empty()) {
                std::filesystem::create_directories(gl.witness_dir);
                write_emg_file(std::filesystem::path(gl.witness_dir) / ("map" + std::to_string(i) + ".emg"), maps[i]);
            }
        }
        return ok_code;
    }
    if (ring <= 0)
        throw Error(ErrorCode::ParseError, "census needs --ring or --surface");
    auto cat = enumerate_disk(girth, ring, max_n, gl.jobs);
    if (!gl.witness_dir.empty())
        write_catalog(gl.witness_dir, cat);
    std::cout << cat.to_text();
    return ok_code;
}

int refine(const Globals& gl, const std::string& target, const std::string& source, int max_n, int max_ring)
{
    std::map<int, Catalog> store;
    for (int k = 4; k <= max_ring; ++k)
        store.emplace(k, enumerate_disk(4, k, std::max(max_n, k), gl.jobs));
    CatalogSet cats;
    for (const auto& [k, c] : store)
        cats[k] = &c;
    const auto r = is_refinement(parse_multiset(target), parse_multiset(source), cats);
    std::cout << "refines = " << (r.refines ? "true" : "false") << "\n";
    std::cout << "chain =";
    for (const auto& m : r.chain)
        std::cout << ' ' << to_string(m);
    std::cout << "\n";
    std::cout << "truncated = " << (r.truncated ? "true" : "false") << "\n";
    std::cout << "exhaustive_up_to = " << max_n << "\n";
    return r.refines ? ok_code : false_code;
}

int verify(const Globals& gl, const std::string& suite, VerificationOptions opt)
{
    opt.jobs = gl.jobs;
    opt.kappa = gl.kappa_value();
    const auto r = run_verification(suite, opt);
    std::cout << r.to_text();
    return r.ok() ? ok_code : false_code;
}

int decompose(const Globals& gl, const std::string& path, const std::string& surface)
{
    const auto input = load_any(path);
    EmbeddedGraph g;
    if (const auto* graph = std::get_if<Graph>(&input)) {
        std::optional<EmbeddedGraph> e;
        if (surface.empty()) {
            for (auto s : {Surface::Sphere, Surface::ProjectivePlane, Surface::Torus, Surface::KleinBottle})
                if ((e = find_embedding(*graph, s)))
                    break;
        } else {
            e = find_embedding(*graph, parse_surface(surface));
        }
        if (!e)
            throw Error(ErrorCode::Unsupported, "no embedding found" + (surface.empty() ? "" : " in the " + surface));
        g = *e;
    } else {
        g = std::get<EmbeddedGraph>(input);
    }
    const auto r = deletion_set(g, gl.kappa_value());
    std::cout << r.to_text();
    if (!gl.witness_dir.empty()) {
        std::filesystem::create_directories(gl.witness_dir);
        write_emg_file(std::filesystem::path(gl.witness_dir) / "embedding.emg", g);
    }
    return ok_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Critical graphs on surfaces: embeddings, colourings, reductions and census"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals gl;
    app.add_option("--eta", gl.eta, "weight constant eta (rational)");
    app.add_option("--kappa", gl.kappa, "constant kappa (rational); default 1600*eta/s(5)");
    app.add_option("--jobs", gl.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--emit-witness", gl.witness_dir, "directory for EMG witnesses");

    std::string file;
    auto* a = app.add_subcommand("analyze", "genus, face census and weights");
    a->add_option("file", file, "EMG file")->required();

    std::string phi;
    auto* c = app.add_subcommand("color", "3-colour a graph or extend a ring precolouring");
    c->add_option("file", file, "EMG file")->required();
    c->add_option("--phi", phi, "ring precolouring, e.g. 0:1,1:2,2:1");

    auto* cr = app.add_subcommand("critical", "R-criticality (EMG) or 4-criticality (graph6)");
    cr->add_option("file", file, "EMG or graph6 file")->required();

    int face = -1;
    auto* r = app.add_subcommand("reduce", "collapse a 4-face and build the cover");
    r->add_option("file", file, "EMG file")->required();
    r->add_option("--face", face, "internal 4-face; default the first one that is not ring-bound");

    auto* f = app.add_subcommand("flip", "flip the first flippable non-contractible 4-cycle");
    f->add_option("file", file, "EMG file")->required();

    int girth = 4, ring = 0, max_n = 10;
    std::string surface;
    bool quad = false;
    auto* ce = app.add_subcommand("census", "disk catalogs S_{r,k} or closed-surface maps");
    ce->add_option("--girth", girth, "4 or 5 (surfaces also accept 3)");
    ce->add_option("--ring", ring, "ring length k");
    ce->add_option("--max-n", max_n, "vertex bound");
    ce->add_option("--surface", surface, "sphere, projective-plane, torus or klein-bottle");
    ce->add_flag("--quadrangulation", quad, "only quadrangulations (with --surface)");

    std::string target, source;
    int max_ring = 8;
    auto* rf = app.add_subcommand("refine", "is TARGET a refinement of SOURCE");
    rf->add_option("target", target, "multiset, e.g. {5,5}")->required();
    rf->add_option("source", source, "multiset, e.g. {6}")->required();
    rf->add_option("--max-n", max_n, "vertex bound of the catalogs");
    rf->add_option("--max-ring", max_ring, "largest ring length with a catalog");

    VerificationOptions vopt;
    std::string suite;
    auto* v = app.add_subcommand("verify", "run a verification suite");
    v->add_option("suite", suite, "suite id")->required()->check(CLI::IsMember(verification_suites()));
    v->add_option("--max-n", vopt.disk_n, "vertex bound of the girth-4 disk census");
    v->add_option("--max-ring", vopt.ring_max, "longest ring of the girth-4 disk census");
    v->add_option("--girth5-n", vopt.girth5_n, "vertex bound of the girth-5 disk census");
    v->add_option("--surface-n", vopt.surface_n, "vertex bound of the closed-surface census");
    v->add_option("--patches", vopt.patches, "collapse-lift instances");
    v->add_option("--patch-n", vopt.patch_n, "vertex bound of collapse-lift patches");
    v->add_option("--seed", vopt.seed, "seed of the patch generator");

    auto* d = app.add_subcommand("decompose", "vertex set X with G - X 3-colourable");
    d->add_option("file", file, "EMG or graph6 file")->required();
    d->add_option("--surface", surface, "surface for graph6 input; default the first that embeds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage_code;
    }

    try {
        if (*a)
            return analyze(gl, file);
        if (*c)
            return color(file, phi);
        if (*cr)
            return critical(gl, file);
        if (*r)
            return reduce(gl, file, face);
        if (*f)
            return flip_cmd(file);
        if (*ce)
            return census(gl, girth, ring, max_n, surface, quad);
        if (*rf)
            return refine(gl, target, source, max_n, max_ring);
        if (*v)
            return verify(gl, suite, vopt);
        if (*d)
            return decompose(gl, file, surface);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage_code;
    }
    return usage_code;
}
