#include <critsurf/decompose.hpp>

#include <critsurf/error.hpp>
#include <critsurf/surgery.hpp>
#include <critsurf/topology.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace critsurf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

std::string join(const std::vector<int>& xs)
{
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? "," : "") + std::to_string(xs[i]);
    return out + "}";
}

// Every walk its own disk: the surface obtained by cutting along non-contractible
// curves inside faces that are not open 2-cell and capping the holes.
EmbeddedGraph cellular(const MapData& m)
{
    EmbeddingSpec spec;
    spec.map = m;
    return EmbeddedGraph::build(spec);
}

struct Piece {
    EmbeddedGraph g;
    std::vector<int> origin; ///< vertex -> input vertex
};

Piece without(const Piece& p, const std::vector<int>& vertices)
{
    const auto sub = delete_elements(p.g, vertices, {});
    Piece out{cellular(sub.graph.map()), {}};
    for (int v : sub.vertex_origin)
        out.origin.push_back(p.origin[at(v)]);
    return out;
}

bool proper_on(const Graph& g, const Coloring& c)
{
    for (const auto& [u, v] : g.edges())
        if (c[at(u)] != 0 && c[at(u)] == c[at(v)])
            return false;
    return true;
}

// Colours G minus the vertices marked in `drop`; 0 on dropped vertices.
Coloring color_without(const Graph& g, const std::vector<char>& drop)
{
    std::vector<int> gone;
    for (int v = 0; v < g.order(); ++v)
        if (drop[at(v)])
            gone.push_back(v);
    std::vector<int> kept;
    const auto rest = g.remove_vertices(gone, &kept);
    const auto c = three_color(rest);
    if (!c)
        throw Error(ErrorCode::ColoringFailed, "G - X is not 3-colourable");
    Coloring out(at(g.order()), 0);
    for (std::size_t i = 0; i < kept.size(); ++i)
        out[at(kept[i])] = (*c)[i];
    return out;
}

class Decomposer {
public:
    std::vector<DeletionStep> steps;

    // Colouring of p with 0 exactly on the deleted vertices, which are added to x.
    Coloring solve(const Piece& p, std::set<int>& x)
    {
        const Graph u = p.g.underlying();
        const int genus = p.g.genus();
        auto step = [&](const std::string& rule, const std::string& detail) {
            steps.push_back({rule, detail, genus, p.g.vertex_count()});
        };

        if (genus == 0) {
            step("i", "planar, n=" + std::to_string(p.g.vertex_count()));
            return color_without(u, std::vector<char>(at(u.order()), 0));
        }

        std::vector<std::vector<int>> nonfacial;
        for (const auto& c : simple_cycles(u, 4))
            if (c.size() == 4 && !is_facial_cycle(p.g, c))
                nonfacial.push_back(c);

        for (const auto& k : nonfacial) {
            const auto cls = classify_cycle(p.g, k);
            if (cls.contractible())
                return inside_quad(p, u, k, x, step);
            auto rest = without(p, k);
            if (rest.g.genus() > genus - 1)
                continue; // a separating cycle; another non-facial 4-cycle may do
            step("ii", "K=" + join(origins(p, k)) + " genus " + std::to_string(genus) + "->" +
                           std::to_string(rest.g.genus()));
            for (int v : k)
                x.insert(p.origin[at(v)]);
            const auto sub = solve(rest, x);
            return pull_back(p, rest, sub);
        }
        if (!nonfacial.empty())
            throw Error(ErrorCode::PropertyViolated,
                        "every non-facial 4-cycle is non-contractible and deleting it leaves genus " +
                            std::to_string(genus) + "; K=" + join(origins(p, nonfacial[0])));

        if (is_4_critical(u)) {
            int v = 0;
            for (int w = 1; w < p.g.vertex_count(); ++w)
                if (p.origin[at(w)] < p.origin[at(v)])
                    v = w;
            step("iv", "4-critical, X={" + std::to_string(p.origin[at(v)]) + "}");
            x.insert(p.origin[at(v)]);
            std::vector<char> drop(at(u.order()), 0);
            drop[at(v)] = 1;
            return color_without(u, drop);
        }

        const auto packing = max_4critical_packing(u);
        std::vector<char> drop(at(u.order()), 0);
        std::ostringstream detail;
        detail << "packing of " << packing.vertices.size();
        for (std::size_t i = 0; i < packing.vertices.size(); ++i) {
            std::vector<int> edges;
            for (const auto& [a, b] : packing.edges[i])
                edges.push_back(p.g.edge_between(a, b));
            const auto sub = subgraph(p.g, packing.vertices[i], edges);
            const auto h = cellular(sub.graph.map());
            int hit = 0;
            for (const auto& w : h.walks()) {
                if (w.length() <= 4)
                    continue;
                for (int v : w.vertices(h.map())) {
                    const int local = sub.vertex_origin[at(v)];
                    hit += drop[at(local)] ? 0 : 1;
                    drop[at(local)] = 1;
                }
            }
            if (hit == 0)
                throw Error(ErrorCode::PropertyViolated, "a 4-critical component has only 4-faces");
            detail << (i ? "; " : ": ") << "n=" << sub.graph.vertex_count() << " genus=" << h.genus()
                   << " x=" << hit;
        }
        std::vector<int> chosen;
        for (int v = 0; v < u.order(); ++v)
            if (drop[at(v)]) {
                chosen.push_back(p.origin[at(v)]);
                x.insert(p.origin[at(v)]);
            }
        std::sort(chosen.begin(), chosen.end());
        detail << " X=" << join(chosen);
        step("v", detail.str());
        return color_without(u, drop);
    }

private:
    static std::vector<int> origins(const Piece& p, const std::vector<int>& vs)
    {
        std::vector<int> out;
        for (int v : vs)
            out.push_back(p.origin[at(v)]);
        return out;
    }

    // Colours of p's vertices from a colouring of a piece obtained by deleting vertices.
    static Coloring pull_back(const Piece& p, const Piece& rest, const Coloring& sub)
    {
        std::map<int, int> local;
        for (int v = 0; v < p.g.vertex_count(); ++v)
            local[p.origin[at(v)]] = v;
        Coloring out(at(p.g.vertex_count()), 0);
        for (std::size_t j = 0; j < rest.origin.size(); ++j)
            out[at(local.at(rest.origin[j]))] = sub[j];
        return out;
    }

    template <class Step>
    Coloring inside_quad(const Piece& p, const Graph& u, const std::vector<int>& k, std::set<int>& x, Step& step)
    {
        std::vector<int> inside;
        for (const auto& piece : cut_along(p.g, k)) {
            if (piece.graph.genus() != 0 || piece.cut_boundaries != 1 || !piece.host_rings.empty())
                continue;
            for (int v : piece.vertex_origin)
                if (std::find(k.begin(), k.end(), v) == k.end() &&
                    std::find(inside.begin(), inside.end(), v) == inside.end())
                    inside.push_back(v);
            break;
        }
        std::sort(inside.begin(), inside.end());
        if (inside.empty())
            throw Error(ErrorCode::PropertyViolated, "contractible non-facial 4-cycle with an empty disk");
        auto rest = without(p, inside);
        step("iii", "K=" + join(origins(p, k)) + " removes " + std::to_string(inside.size()) + " inside, genus " +
                        std::to_string(p.g.genus()) + "->" + std::to_string(rest.g.genus()));
        auto out = pull_back(p, rest, solve(rest, x));

        // Extend across the disk; any colouring of the 4-cycle extends inside.
        std::vector<int> disk = k;
        disk.insert(disk.end(), inside.begin(), inside.end());
        std::vector<int> index(at(p.g.vertex_count()), -1);
        for (std::size_t i = 0; i < disk.size(); ++i)
            index[at(disk[i])] = static_cast<int>(i);
        ColorSolver solver(static_cast<int>(disk.size()));
        for (const auto& [a, b] : u.edges())
            if (index[at(a)] >= 0 && index[at(b)] >= 0)
                solver.add_edge(index[at(a)], index[at(b)]);
        for (int v : k)
            if (out[at(v)] != 0)
                solver.restrict_domain(index[at(v)], static_cast<std::uint8_t>(1u << (out[at(v)] - 1)));
        const auto c = solver.solve();
        if (!c)
            throw Error(ErrorCode::PropertyViolated, "the 4-cycle colouring does not extend into its disk");
        for (int v : inside)
            out[at(v)] = (*c)[at(index[at(v)])];
        return out;
    }
};

} // namespace

std::vector<std::string> DeletionResult::trace() const
{
    std::vector<std::string> out;
    for (const auto& s : steps)
        out.push_back("rule=" + s.rule + " detail=genus " + std::to_string(s.genus) + ", n=" +
                      std::to_string(s.vertices) + ", " + s.detail);
    return out;
}

std::string DeletionResult::to_text() const
{
    std::ostringstream out;
    out << "X = " << join(x) << "\n";
    out << "size = " << x.size() << "\n";
    out << "genus = " << genus << "\n";
    out << "beta = " << to_string(beta) << "\n";
    out << "beta_g = " << to_string(bound()) << "\n";
    out << "within_bound = " << (within_bound() ? "true" : "false") << "\n";
    out << "certificate =";
    for (std::size_t v = 0; v < certificate.size(); ++v)
        if (certificate[v] != 0)
            out << " " << v << ":" << certificate[v];
    out << "\n";
    for (const auto& line : trace())
        out << line << "\n";
    return out.str();
}

Packing max_4critical_packing(const Graph& g)
{
    Packing out;
    std::vector<char> used(at(g.order()), 0);
    for (;;) {
        std::vector<int> gone;
        for (int v = 0; v < g.order(); ++v)
            if (used[at(v)])
                gone.push_back(v);
        std::vector<int> kept;
        Graph rest = g.remove_vertices(gone, &kept);
        if (is_three_colorable(rest))
            break;
        for (const auto& [a, b] : rest.edges()) {
            rest.remove_edge(a, b);
            if (is_three_colorable(rest))
                rest.add_edge(a, b);
        }
        std::vector<int> vertices;
        std::vector<std::pair<int, int>> edges;
        for (int v = 0; v < rest.order(); ++v)
            if (rest.degree(v) > 0) {
                vertices.push_back(kept[at(v)]);
                used[at(kept[at(v)])] = 1;
            }
        for (const auto& [a, b] : rest.edges())
            edges.emplace_back(kept[at(a)], kept[at(b)]);
        out.vertices.push_back(std::move(vertices));
        out.edges.push_back(std::move(edges));
    }
    return out;
}

DeletionResult deletion_set(const EmbeddedGraph& g, const Rational& kappa)
{
    if (!g.rings().empty())
        throw Error(ErrorCode::Unsupported, "deletion sets are computed for graphs without rings");
    const Graph u = g.underlying();
    if (u.has_triangle())
        throw Error(ErrorCode::HasTriangle, "the input contains a triangle");

    DeletionResult res;
    res.genus = g.genus();
    res.beta = std::max(Rational(5) * kappa, Rational(4));

    Piece top{cellular(g.map()), {}};
    for (int v = 0; v < g.vertex_count(); ++v)
        top.origin.push_back(v);
    if (top.g.genus() > g.genus())
        throw Error(ErrorCode::PropertyViolated, "cellular closure has larger genus than the surface");

    Decomposer d;
    std::set<int> x;
    res.certificate = d.solve(top, x);
    res.steps = std::move(d.steps);
    res.x.assign(x.begin(), x.end());

    for (int v = 0; v < g.vertex_count(); ++v) {
        const bool deleted = x.count(v) > 0;
        if (deleted != (res.certificate[at(v)] == 0))
            throw Error(ErrorCode::ColoringFailed, "certificate does not cover exactly G - X");
    }
    if (!proper_on(u, res.certificate))
        throw Error(ErrorCode::ColoringFailed, "certificate is not a proper colouring of G - X");
    return res;
}

} // namespace critsurf
