#include <critsurf/reduce.hpp>

#include <critsurf/error.hpp>
#include <critsurf/topology.hpp>
#include <critsurf/weights.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace critsurf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

const Walk& quad_walk(const EmbeddedGraph& g, int f)
{
    if (f < 0 || f >= static_cast<int>(g.faces().size()) || !g.is_internal(f))
        throw Error(ErrorCode::NotA4Face, "face " + std::to_string(f) + " is not an internal face");
    const auto& face = g.faces()[at(f)];
    if (face.walks.size() != 1 || face.genus != 0)
        throw Error(ErrorCode::NotA4Face, "face " + std::to_string(f) + " is not a disk");
    const auto& walk = g.walks()[at(face.walks[0])];
    if (walk.length() != 4 || !walk.is_cycle(g.map()))
        throw Error(ErrorCode::NotA4Face, "face " + std::to_string(f) + " is not bounded by a 4-cycle");
    return walk;
}

// Labelled corner data of a 4-face: vertices, and the darts and frames at v1 and v3.
struct QuadCorners {
    std::array<int, 4> v{};
    int d12 = 0, d14 = 0, d34 = 0, d32 = 0;
    int o1 = 1, o3 = 1;
};

QuadCorners corners(const EmbeddedGraph& g, int f, QuadLabeling lab)
{
    const auto& s = quad_walk(g, f).steps;
    auto step = [&](int k) { return s[at(((k % 4) + 4) % 4)]; };
    const int i = lab.start;
    QuadCorners c;
    if (!lab.reversed) {
        for (int k = 0; k < 4; ++k)
            c.v[at(k)] = g.tail(step(i + k).dart);
        c.d12 = step(i).dart;
        c.d14 = dart_reverse(step(i - 1).dart);
        c.d34 = step(i + 2).dart;
        c.d32 = dart_reverse(step(i + 1).dart);
        c.o1 = step(i).orient;
        c.o3 = step(i + 2).orient;
    } else {
        for (int k = 0; k < 4; ++k)
            c.v[at(k)] = g.tail(step(i - k).dart);
        c.d12 = dart_reverse(step(i - 1).dart);
        c.d14 = step(i).dart;
        c.d34 = dart_reverse(step(i - 3).dart);
        c.d32 = step(i - 2).dart;
        c.o1 = -step(i).orient;
        c.o3 = -step(i - 2).orient;
    }
    return c;
}

std::vector<QuadLabeling> all_labelings()
{
    std::vector<QuadLabeling> out;
    for (int start = 0; start < 4; ++start)
        for (bool rev : {false, true})
            out.push_back({start, rev});
    return out;
}

// Simple paths from `from` to `to` with 1..max_len edges avoiding `banned`.
void paths_between(const Graph& ug, int from, int to, int max_len, const std::vector<int>& banned,
                   const std::function<bool(const std::vector<int>&)>& visit)
{
    std::vector<char> used(at(ug.order()), 0);
    for (int b : banned)
        used[at(b)] = 1;
    std::vector<int> path{from};
    used[at(from)] = 1;
    bool stop = false;
    auto rec = [&](auto&& self) -> void {
        if (stop)
            return;
        const int u = path.back();
        for (int x : ug.neighbors(u)) {
            if (x == to) {
                path.push_back(x);
                stop = visit(path);
                path.pop_back();
                if (stop)
                    return;
                continue;
            }
            if (used[at(x)] || static_cast<int>(path.size()) >= max_len)
                continue;
            used[at(x)] = 1;
            path.push_back(x);
            self(self);
            path.pop_back();
            used[at(x)] = 0;
            if (stop)
                return;
        }
    };
    rec(rec);
}

std::string join(const std::vector<int>& xs)
{
    std::string out;
    for (int x : xs)
        out += (out.empty() ? "" : " ") + std::to_string(x);
    return out;
}

void switch_vertex(MapData& m, int v)
{
    auto& rot = m.rotations[at(v)];
    std::reverse(rot.begin(), rot.end());
    for (int d : rot)
        m.edges[at(dart_edge(d))].sign *= -1;
}

// Faces (walks) whose vertex sequence contains a, b, c consecutively in either direction.
std::vector<int> faces_along(const EmbeddedGraph& g, int a, int b, int c)
{
    std::set<int> out;
    for (std::size_t w = 0; w < g.walks().size(); ++w) {
        const auto vs = g.walks()[w].vertices(g.map());
        const std::size_t k = vs.size();
        if (k < 2 || g.walks()[w].is_lone())
            continue;
        for (std::size_t i = 0; i < k; ++i) {
            const int x = vs[i], y = vs[(i + 1) % k], z = vs[(i + 2) % k];
            if (y == b && ((x == a && z == c) || (x == c && z == a)))
                out.insert(g.face_of_walk(static_cast<int>(w)));
        }
    }
    return {out.begin(), out.end()};
}

const ExpansionPiece* piece_with_face(const std::vector<ExpansionPiece>& pieces, int f)
{
    for (const auto& p : pieces)
        if (std::find(p.host_faces.begin(), p.host_faces.end(), f) != p.host_faces.end())
            return &p;
    return nullptr;
}

[[noreturn]] void not_flippable(const std::string& why) { throw Error(ErrorCode::NotFlippable, why); }

} // namespace

std::array<int, 4> face_quad(const EmbeddedGraph& g, int f)
{
    const auto vs = quad_walk(g, f).vertices(g.map());
    return {vs[0], vs[1], vs[2], vs[3]};
}

RingBound is_ring_bound(const EmbeddedGraph& g, int f)
{
    const auto w = face_quad(g, f);
    const Graph ug = g.underlying();
    for (int i = 0; i < 4; ++i) {
        const int r = g.vertex_ring_at(w[at(i)]);
        if (r < 0)
            continue;
        const int a = w[at((i + 1) % 4)], b = w[at((i + 2) % 4)], c = w[at((i + 3) % 4)];
        RingBound found;
        paths_between(ug, c, a, 4, {w[at(i)], b}, [&](const std::vector<int>& p) {
            std::vector<int> cycle{a, b};
            cycle.insert(cycle.end(), p.begin(), p.end() - 1);
            if (cycle.size() < 3 || !surrounds_ring(g, cycle, r))
                return false;
            found = {true, 1, "cycle " + join(cycle) + " surrounds vertex ring at " + std::to_string(w[at(i)])};
            return true;
        });
        if (found.bound)
            return found;
    }
    std::set<int> rings;
    for (int v : w)
        if (g.ring_of_vertex(v) >= 0)
            rings.insert(g.ring_of_vertex(v));
    if (rings.size() >= 2)
        return {true, 2, "face touches rings " + join({rings.begin(), rings.end()})};
    for (int i = 0; i < 2; ++i)
        if (g.is_ring_vertex(w[at(i)]) && g.is_ring_vertex(w[at(i + 2)]))
            return {true, 3, "opposite vertices " + std::to_string(w[at(i)]) + " and " + std::to_string(w[at(i + 2)]) +
                                 " lie on rings"};
    return {};
}

Collapse collapse_4face(const EmbeddedGraph& g, int f, QuadLabeling labeling)
{
    const QuadCorners q = corners(g, f, labeling);
    const int v1 = q.v[0], v3 = q.v[2];
    if (g.edge_between(v1, v3) >= 0)
        throw Error(ErrorCode::Adjacent, "opposite vertices " + std::to_string(v1) + " and " + std::to_string(v3) +
                                             " are adjacent");
    if (g.is_ring_vertex(v1) && g.is_ring_vertex(v3))
        throw Error(ErrorCode::RingBound, "both identified vertices lie on rings");
    if (g.next_dart(q.d14, q.o1) != q.d12 || g.next_dart(q.d32, q.o3) != q.d34)
        throw Error(ErrorCode::PropertyViolated, "face corners do not match the rotation");

    MapData m = g.map();
    if (q.o1 < 0)
        switch_vertex(m, v1);
    if (q.o3 < 0)
        switch_vertex(m, v3);
    auto from = [&](int v, int first) {
        const auto& rot = m.rotations[at(v)];
        const auto p = std::find(rot.begin(), rot.end(), first) - rot.begin();
        std::vector<int> seq(rot.begin() + p, rot.end());
        seq.insert(seq.end(), rot.begin(), rot.begin() + p);
        return seq;
    };
    std::vector<int> zrot = from(v1, q.d12);
    const std::vector<int> tail3 = from(v3, q.d34);
    zrot.insert(zrot.end(), tail3.begin(), tail3.end());
    for (int d : tail3) {
        auto& e = m.edges[at(dart_edge(d))];
        (dart_end(d) == 0 ? e.u : e.v) = v1;
    }
    m.rotations[at(v1)] = std::move(zrot);
    m.rotations[at(v3)].clear();

    // Faces: every walk away from f keeps its host face; f splits into two digons.
    const FacedMap host = FacedMap::from(g);
    const int host_faces = static_cast<int>(g.faces().size());
    std::vector<int> face_genus;
    for (const auto& face : g.faces())
        face_genus.push_back(face.genus);
    face_genus[at(f)] = 0;
    face_genus.push_back(0);
    std::vector<int> side_walk;
    const auto walks = trace_walks(m, &side_walk);
    std::vector<int> walk_face;
    int digons = 0;
    for (const auto& w : walks) {
        if (w.is_lone()) {
            walk_face.push_back(w.lone_vertex == v3 ? f : host.face_at_vertex(w.lone_vertex));
            continue;
        }
        const auto& s = w.steps.front();
        const int t = g.tail(s.dart);
        const int frame = t == v1 ? q.o1 : t == v3 ? q.o3 : 1;
        const int hf = g.face_of_side(side_key(g.map(), s.dart, s.orient * frame));
        if (hf == f) {
            walk_face.push_back(digons == 0 ? f : host_faces);
            ++digons;
        } else {
            walk_face.push_back(hf);
        }
    }
    if (digons != 2)
        throw Error(ErrorCode::PropertyViolated, "collapse did not split the face into two digons");

    std::vector<Ring> rings = g.rings();
    for (auto& r : rings)
        if (r.kind == RingKind::Vertex && r.vertex == v3)
            r.vertex = v1;
    const FacedMap merged = FacedMap::with_faces(m, walk_face, face_genus, rings);

    std::vector<char> keep_vertex(at(g.vertex_count()), 1);
    keep_vertex[at(v3)] = 0;
    std::vector<char> keep_edge(at(g.edge_count()), 1);
    std::vector<int> partner(at(g.edge_count()), -1);
    std::map<int, std::vector<int>> by_neighbor;
    for (int d : m.rotations[at(v1)])
        by_neighbor[m.head(d)].push_back(dart_edge(d));
    for (auto& [x, es] : by_neighbor) {
        if (es.size() < 2)
            continue;
        std::sort(es.begin(), es.end(), [&](int a, int b) {
            const bool ra = g.is_ring_edge(a), rb = g.is_ring_edge(b);
            return ra != rb ? ra : a < b;
        });
        for (std::size_t k = 1; k < es.size(); ++k) {
            keep_edge[at(es[k])] = 0;
            partner[at(es[k])] = es[0];
        }
    }
    auto r = restrict_map(merged, keep_vertex, keep_edge);

    Collapse out{r.result.build(g.genus()), q.v, -1, r.vertex_origin, r.edge_origin, r.vertex_image, r.edge_image, {}};
    out.vertex_image[at(v3)] = out.vertex_image[at(v1)];
    for (int e = 0; e < g.edge_count(); ++e)
        if (partner[at(e)] >= 0)
            out.edge_image[at(e)] = out.edge_image[at(partner[at(e)])];
    out.z = out.vertex_image[at(v1)];
    std::vector<int> built(at(r.result.face_count()), -1);
    for (std::size_t w = 0; w < r.result.walks.size(); ++w)
        built[at(r.result.walk_face[w])] = out.graph.face_of_walk(static_cast<int>(w));
    for (int h = 0; h < host_faces; ++h)
        out.face_image.push_back(h == f ? -1 : built[at(r.face_image[at(h)])]);
    return out;
}

Coloring lift_coloring(const Collapse& c, const Coloring& psi)
{
    Coloring out;
    for (int v : c.vertex_image)
        out.push_back(psi[at(v)]);
    return out;
}

void check_flippable(const EmbeddedGraph& g, const FlipWitness& w)
{
    const auto [w1, w2, w3, w4] = w.cycle;
    const std::vector<int> cycle(w.cycle.begin(), w.cycle.end());
    std::vector<int> edges;
    try {
        edges = cycle_edges(g, cycle);
    } catch (const Error&) {
        not_flippable("w1w2w3w4 is not a 4-cycle");
    }
    int product = 1;
    for (int e : edges)
        product *= g.edge(e).sign;
    if (product < 0)
        not_flippable("the cycle is one-sided");
    if (classify_cycle(g, cycle).contractible())
        not_flippable("the cycle is contractible");
    if (g.edge_between(w1, w3) >= 0)
        not_flippable("w1 and w3 are adjacent");
    const Graph ug = g.underlying();
    for (int x : ug.neighbors(w1))
        if (x != w2 && x != w4 && ug.adjacent(x, w3))
            not_flippable("another path of length 2 joins w1 and w3 through " + std::to_string(x));
    const auto along1 = faces_along(g, w1, w2, w3);
    const auto along2 = faces_along(g, w1, w4, w3);
    if (std::find(along1.begin(), along1.end(), w.f1) == along1.end())
        not_flippable("w1w2w3 is not on the boundary of f1");
    if (std::find(along2.begin(), along2.end(), w.f2) == along2.end())
        not_flippable("w1w4w3 is not on the boundary of f2");
    const auto pieces = cut_along(g, cycle);
    const auto* p1 = piece_with_face(pieces, w.f1);
    const auto* p2 = piece_with_face(pieces, w.f2);
    if (!p1 || !p2 || p1 == p2)
        not_flippable("the cycle does not separate f1 from f2");
    if (p1->graph.genus() != 0 || p1->cut_boundaries != 1 || p1->host_rings != std::vector<int>{w.ring})
        not_flippable("the side of f1 is not a disk around ring " + std::to_string(w.ring));
}

FlipWitness flip_witness(const EmbeddedGraph& g, const std::vector<int>& cycle)
{
    if (cycle.size() != 4)
        not_flippable("a flip needs a 4-cycle");
    std::string last = "no labeling of the cycle is flippable";
    std::vector<ExpansionPiece> pieces;
    try {
        pieces = cut_along(g, cycle);
    } catch (const Error& e) {
        not_flippable(e.what());
    }
    // Prefer an open 2-cell f1: the weight bound of the flip relies on it.
    for (bool any_f1 : {false, true})
        for (int shift = 0; shift < 2; ++shift)
            for (bool swap : {false, true}) {
                FlipWitness w;
                w.cycle = {cycle[at(shift)], cycle[at(shift + (swap ? 3 : 1))], cycle[at(shift + 2)],
                           cycle[at(shift + (swap ? 1 : 3))]};
                const auto [w1, w2, w3, w4] = w.cycle;
                for (int a : faces_along(g, w1, w2, w3))
                    for (int b : faces_along(g, w1, w4, w3)) {
                        if (!any_f1 && (!g.is_internal(a) || g.face_class(a) == FaceClass::Neither))
                            continue;
                        const auto* p = piece_with_face(pieces, a);
                        w.f1 = a;
                        w.f2 = b;
                        w.ring = p && p->host_rings.size() == 1 ? p->host_rings[0] : -1;
                        try {
                            check_flippable(g, w);
                            return w;
                        } catch (const Error& e) {
                            last = e.what();
                        }
                    }
            }
    throw Error(ErrorCode::NotFlippable, last);
}

std::optional<FlipWitness> find_flippable(const EmbeddedGraph& g)
{
    for (const auto& c : noncontractible_cycles(g, 4)) {
        if (c.size() != 4)
            continue;
        try {
            return flip_witness(g, c);
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

FlipResult flip_detailed(const EmbeddedGraph& g, const FlipWitness& w)
{
    check_flippable(g, w);
    const auto [w1, w2, w3, w4] = w.cycle;
    const std::vector<int> cycle(w.cycle.begin(), w.cycle.end());
    const auto pieces = cut_along(g, cycle);
    const auto* disk = piece_with_face(pieces, w.f1);

    const int n = g.vertex_count();
    std::vector<char> in_h(at(n), 0), mirrored(at(n), 0), h_edge(at(g.edge_count()), 0);
    for (int v : disk->vertex_origin)
        in_h[at(v)] = 1;
    for (int e : disk->edge_origin)
        h_edge[at(e)] = 1;
    for (int v = 0; v < n; ++v)
        mirrored[at(v)] = in_h[at(v)] && v != w1 && v != w2 && v != w3;

    // Frames making every edge of H orientation-preserving; H lies in a disk.
    std::vector<int> eps(at(n), 0);
    for (int s = 0; s < n; ++s) {
        if (!in_h[at(s)] || eps[at(s)] != 0)
            continue;
        eps[at(s)] = 1;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int d : g.rotation(u)) {
                if (!h_edge[at(dart_edge(d))])
                    continue;
                const int x = g.head(d);
                const int want = eps[at(u)] * g.map().sign(d);
                if (eps[at(x)] == 0) {
                    eps[at(x)] = want;
                    stack.push_back(x);
                } else if (eps[at(x)] != want) {
                    throw Error(ErrorCode::PropertyViolated, "the disk side is not orientable");
                }
            }
        }
    }
    MapData m = g.map();
    for (int v = 0; v < n; ++v)
        if (eps[at(v)] < 0)
            switch_vertex(m, v);

    std::vector<char> in_block(2 * at(g.edge_count()), 0);
    for (int v = 0; v < n; ++v)
        if (mirrored[at(v)])
            std::reverse(m.rotations[at(v)].begin(), m.rotations[at(v)].end());
    for (int v : {w1, w3}) {
        auto& rot = m.rotations[at(v)];
        const int k = static_cast<int>(rot.size());
        auto block = [&](int p) {
            const int d = rot[at(((p % k) + k) % k)];
            return h_edge[at(dart_edge(d))] && mirrored[at(m.head(d))];
        };
        int count = 0, start = -1;
        for (int p = 0; p < k; ++p) {
            count += block(p);
            if (block(p) && !block(p - 1))
                start = p;
        }
        if (count == 0)
            continue;
        if (count == k)
            start = 0;
        std::rotate(rot.begin(), rot.begin() + start, rot.end());
        for (int p = 0; p < count; ++p)
            if (!block(p))
                throw Error(ErrorCode::PropertyViolated, "the disk side is not contiguous at a cut vertex");
        std::reverse(rot.begin(), rot.begin() + count);
        for (int p = 0; p < count; ++p)
            in_block[at(rot[at(p)])] = 1;
    }

    const FacedMap host = FacedMap::from(g);
    const int host_face_count = static_cast<int>(g.faces().size());
    std::vector<int> side_walk;
    const auto walks = trace_walks(m, &side_walk);
    const int quad_index = host_face_count;
    std::vector<int> walk_face;
    int quad_walk_index = -1;
    for (std::size_t i = 0; i < walks.size(); ++i) {
        const auto& wk = walks[i];
        if (wk.is_lone()) {
            const int hf = host.face_at_vertex(wk.lone_vertex);
            walk_face.push_back(hf == w.f2 ? w.f1 : hf);
            continue;
        }
        if (wk.length() == 4 && wk.is_cycle(m)) {
            auto vs = wk.vertices(m);
            auto sorted_c = cycle;
            std::sort(vs.begin(), vs.end());
            std::sort(sorted_c.begin(), sorted_c.end());
            if (vs == sorted_c && quad_walk_index < 0) {
                quad_walk_index = static_cast<int>(i);
                walk_face.push_back(quad_index);
                continue;
            }
        }
        const auto& s = wk.steps.front();
        const int t = g.tail(s.dart);
        const bool flipped = mirrored[at(t)] || in_block[at(s.dart)];
        const int frame = (eps[at(t)] == 0 ? 1 : eps[at(t)]) * (flipped ? -1 : 1);
        int hf = g.face_of_side(side_key(g.map(), s.dart, s.orient * frame));
        walk_face.push_back(hf == w.f2 ? w.f1 : hf);
    }
    if (quad_walk_index < 0)
        throw Error(ErrorCode::PropertyViolated, "the flipped cycle does not bound a face");

    // Renumber faces without f2; the merged face gets its genus from Euler's formula.
    std::vector<int> renum(at(host_face_count + 1), -1);
    std::vector<int> genus;
    for (int h = 0; h <= host_face_count; ++h) {
        if (h == w.f2)
            continue;
        renum[at(h)] = static_cast<int>(genus.size());
        genus.push_back(h < host_face_count ? g.faces()[at(h)].genus : 0);
    }
    std::vector<int> count(genus.size(), 0);
    for (int& f : walk_face) {
        f = renum[at(f)];
        ++count[at(f)];
    }
    const int merged = renum[at(w.f1)];
    long chi = 2 - g.genus() - n + g.edge_count();
    for (std::size_t f = 0; f < genus.size(); ++f) {
        if (static_cast<int>(f) == merged)
            continue;
        chi -= 2 - genus[f] - count[f];
        const int h = static_cast<int>(std::find(renum.begin(), renum.end(), static_cast<int>(f)) - renum.begin());
        if (h < host_face_count && static_cast<int>(g.faces()[at(h)].walks.size()) != count[f])
            throw Error(ErrorCode::PropertyViolated, "flip changed a face away from the cycle");
    }
    const long merged_genus = 2 - count[at(merged)] - chi;
    if (merged_genus < 0)
        throw Error(ErrorCode::EulerMismatch, "flip produced a negative face genus");
    genus[at(merged)] = static_cast<int>(merged_genus);

    std::vector<Ring> rings = g.rings();
    for (auto& r : rings)
        r.face = renum[at(r.face == w.f2 ? w.f1 : r.face)];
    const FacedMap fm = FacedMap::with_faces(m, walk_face, genus, rings);
    FlipResult out{fm.build(g.genus()), -1, -1};
    out.quad_face = out.graph.face_of_walk(quad_walk_index);
    for (std::size_t i = 0; i < walks.size(); ++i)
        if (walk_face[i] == merged)
            out.merged_face = out.graph.face_of_walk(static_cast<int>(i));

    if (!is_facial_cycle(out.graph, cycle))
        throw Error(ErrorCode::PropertyViolated, "the flipped cycle is not facial");
    for (const auto& c : noncontractible_cycles(out.graph, 4))
        if (c.size() == 4)
            throw Error(ErrorCode::PropertyViolated, "a non-contractible 4-cycle survives the flip: " + join(c));
    if (total_weight(out.graph) < total_weight(g))
        throw Error(ErrorCode::PropertyViolated, "the flip decreased the weight");
    return out;
}

int Cover::total_elasticity() const
{
    int total = 0;
    for (const auto& e : entries)
        total += e.elasticity;
    return total;
}

std::string Cover::to_text() const
{
    std::ostringstream out;
    for (const auto& e : entries) {
        out << "face " << e.face << " el " << e.elasticity << '\n';
        out << "  J edges: " << join(e.host_edges) << '\n';
        std::vector<int> walks;
        for (int s : e.s)
            for (int w : e.j.graph.faces()[at(s)].walks)
                walks.push_back(w);
        out << "  S walks: " << join(walks) << '\n';
        out << "  host faces: " << join(e.host_faces) << '\n';
    }
    out << "total el " << total_elasticity() << '\n';
    return out.str();
}

std::optional<std::string> reduction_hypothesis_failure(const EmbeddedGraph& g, int jobs)
{
    const Graph ug = g.underlying();
    if (ug.has_triangle())
        return "graph contains a triangle";
    for (const auto& c : noncontractible_cycles(g, 4))
        if (c.size() == 4)
            return "non-contractible 4-cycle " + join(c);
    if (!min_essential_edges(g, 13))
        return "an essential subgraph has fewer than 13 edges";
    if (!is_R_critical(g, jobs).verdict)
        return "graph is not R-critical";
    return std::nullopt;
}

QuadLabeling choose_labeling(const EmbeddedGraph& g, int f)
{
    const Graph ug = g.underlying();
    auto problematic = [&](const QuadCorners& q, int i) {
        // v_i with i in {0, 1}: the far path goes through v_{3-i} (0-based).
        const int vi = q.v[at(i)], opp = q.v[at(i + 2)], via = q.v[at(3 - i)];
        if (g.vertex_ring_at(vi) >= 0)
            return true;
        bool found = false;
        paths_between(ug, vi, opp, 4, {via}, [&](const std::vector<int>& p) {
            std::vector<int> cycle{via};
            cycle.insert(cycle.end(), p.begin(), p.end());
            found = !classify_cycle(g, cycle).contractible();
            return found;
        });
        return found;
    };
    bool vertex_ring_only = false;
    for (const auto& lab : all_labelings()) {
        const auto q = corners(g, f, lab);
        if (g.is_ring_vertex(q.v[2]) || g.is_ring_vertex(q.v[3]))
            continue;
        if (problematic(q, 0) && !problematic(q, 1))
            continue;
        if (g.vertex_ring_at(q.v[0]) >= 0) {
            vertex_ring_only = true;
            continue;
        }
        return lab;
    }
    throw Error(ErrorCode::PreconditionFailed, vertex_ring_only
                                                   ? "every admissible labeling identifies a vertex ring"
                                                   : "no labeling has v3 and v4 off the rings");
}

Reduction reduce_4face(const EmbeddedGraph& g, int f, int jobs)
{
    face_quad(g, f);
    if (auto why = reduction_hypothesis_failure(g, jobs))
        throw Error(ErrorCode::PreconditionFailed, *why);
    if (const auto rb = is_ring_bound(g, f); rb.bound)
        throw Error(ErrorCode::PreconditionFailed, "face is ring-bound: " + rb.reason);

    Reduction r;
    r.labeling = choose_labeling(g, f);
    r.collapse = collapse_4face(g, f, r.labeling);
    const auto& g0 = r.collapse.graph;
    bool found = false;
    for (const auto& phi : ring_precolorings(g0))
        if (!extend(g0, phi)) {
            r.phi = phi;
            found = true;
            break;
        }
    if (!found)
        throw Error(ErrorCode::NoNonExtendingPrecoloring, "every precoloring extends to the collapsed graph");
    r.reduced = phi_critical_subgraph(g0, r.phi);
    const auto& gp = r.reduced.graph;
    for (int v : r.reduced.vertex_origin)
        r.vertex_origin.push_back(r.collapse.vertex_origin[at(v)]);
    for (int e : r.reduced.edge_origin)
        r.edge_origin.push_back(r.collapse.edge_origin[at(e)]);

    const auto& lab = r.collapse.labels;
    const int v1 = lab[0], v3 = lab[2], v4 = lab[3];
    const int z = r.reduced.vertex_image[at(r.collapse.z)];
    std::vector<int> image(g.faces().size(), -1);
    for (int h = 0; h < static_cast<int>(g.faces().size()); ++h)
        if (const int h0 = r.collapse.face_image[at(h)]; h0 >= 0)
            image[at(h)] = r.reduced.face_image[at(h0)];

    for (int F : gp.internal_faces()) {
        std::set<int> hv, he;
        auto add_edge = [&](int a, int b) {
            const int e = g.edge_between(a, b);
            if (e < 0)
                throw Error(ErrorCode::PropertyViolated, "rewritten walk uses a missing edge");
            he.insert(e);
            hv.insert(a);
            hv.insert(b);
        };
        for (int wi : gp.faces()[at(F)].walks) {
            const auto& wk = gp.walks()[at(wi)];
            if (wk.is_lone()) {
                hv.insert(r.vertex_origin[at(wk.lone_vertex)]);
                continue;
            }
            const auto vs = wk.vertices(gp.map());
            const int k = static_cast<int>(vs.size());
            for (int j = 0; j < k; ++j) {
                const int a = vs[at(j)], b = vs[at((j + 1) % k)];
                if (a != z && b != z)
                    add_edge(r.vertex_origin[at(a)], r.vertex_origin[at(b)]);
                if (a != z)
                    continue;
                const int x = r.vertex_origin[at(vs[at((j + k - 1) % k)])];
                const int y = r.vertex_origin[at(b)];
                auto adj = [&](int p, int q) { return g.edge_between(p, q) >= 0; };
                if (adj(x, v1) && adj(y, v1)) {
                    add_edge(x, v1);
                    add_edge(v1, y);
                } else if (adj(x, v3) && adj(y, v3)) {
                    add_edge(x, v3);
                    add_edge(v3, y);
                } else {
                    const int vi = adj(x, v1) ? v1 : v3;
                    const int vj = adj(y, v1) ? v1 : v3;
                    add_edge(x, vi);
                    add_edge(vi, v4);
                    add_edge(v4, vj);
                    add_edge(vj, y);
                }
            }
        }
        CoverEntry entry;
        entry.face = F;
        entry.host_edges.assign(he.begin(), he.end());
        entry.host_vertices.assign(hv.begin(), hv.end());
        entry.j = subgraph(g, entry.host_vertices, entry.host_edges);
        std::set<int> s;
        for (int h = 0; h < static_cast<int>(g.faces().size()); ++h)
            if (image[at(h)] == F) {
                entry.host_faces.push_back(h);
                s.insert(entry.j.face_image[at(h)]);
            }
        entry.s.assign(s.begin(), s.end());
        int total = 0;
        for (int x : entry.s)
            total += entry.j.graph.face_length(x);
        entry.elasticity = total - gp.face_length(F);
        r.cover.entries.push_back(std::move(entry));
    }

    // Postconditions.
    auto fail = [&](const std::string& what) { r.failures.push_back(what); };
    if (gp.edge_count() >= g.edge_count())
        fail("reduced graph has no fewer edges");
    if (r.cover.total_elasticity() > 4)
        fail("total elasticity " + std::to_string(r.cover.total_elasticity()) + " exceeds 4");
    if (gp.rings().size() != g.rings().size() || gp.genus() != g.genus())
        fail("ring set or surface changed");
    std::map<int, int> covered;
    for (const auto& e : r.cover.entries) {
        const std::string tag = "face " + std::to_string(e.face) + ": ";
        if (e.elasticity < 0 || e.elasticity % 2 != 0)
            fail(tag + "elasticity " + std::to_string(e.elasticity));
        const FaceClass cls = gp.face_class(e.face);
        const bool omni = cls == FaceClass::Neither && is_omnipresent(gp, e.face);
        if ((cls == FaceClass::Closed2Cell || omni) && e.elasticity != 0 && e.elasticity != 2)
            fail(tag + "elasticity " + std::to_string(e.elasticity) + " on a closed 2-cell or omnipresent face");
        try {
            const auto pieces = g_expansion(g, e.j, e.s);
            int genus = 0;
            for (const auto& p : pieces)
                genus += p.graph.genus();
            if (genus > gp.faces()[at(e.face)].genus)
                fail(tag + "pieces carry more genus than the face");
            if (cls == FaceClass::Closed2Cell && e.elasticity == 2 && pieces.size() == 1) {
                const Graph pg = pieces[0].graph.underlying();
                bool cycle = pg.connected() && pg.size() == pg.order();
                for (int v = 0; v < pg.order(); ++v)
                    cycle = cycle && pg.degree(v) == 2;
                if (cycle)
                    fail(tag + "expansion is a single cycle");
            }
        } catch (const Error& ex) {
            fail(tag + ex.what());
        }
        for (int h : e.host_faces)
            ++covered[h];
    }
    for (int h : g.internal_faces())
        if (h != f && g.face_class(h) != FaceClass::Neither && g.face_length(h) != 4 && covered[h] != 1)
            fail("host face " + std::to_string(h) + " is covered " + std::to_string(covered[h]) + " times");
    if (gp.underlying().has_triangle())
        fail("reduced graph has a triangle");
    std::vector<std::vector<int>> quads;
    for (const auto& c : noncontractible_cycles(gp, 4))
        if (c.size() == 4)
            quads.push_back(c);
    if (quads.size() > 1)
        fail(std::to_string(quads.size()) + " non-contractible 4-cycles");
    if (quads.size() == 1) {
        try {
            r.flip = flip_witness(gp, quads[0]);
        } catch (const Error& ex) {
            fail(std::string("non-contractible 4-cycle is not flippable: ") + ex.what());
        }
    }
    return r;
}

std::string reduction_report(const Reduction& r)
{
    std::ostringstream out;
    const auto& l = r.collapse.labels;
    out << "labels = " << l[0] << ' ' << l[1] << ' ' << l[2] << ' ' << l[3] << '\n';
    out << "edges = " << r.graph().edge_count() << '\n';
    for (const auto& e : r.cover.entries)
        out << "face." << e.face << ".el = " << e.elasticity << '\n';
    out << "total_el = " << r.cover.total_elasticity() << '\n';
    if (r.flip) {
        const auto& c = r.flip->cycle;
        out << "flip = " << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << " ring " << r.flip->ring << '\n';
    }
    for (const auto& f : r.failures)
        out << "failure = " << f << '\n';
    out << "verdict = " << (r.ok() ? "pass" : "fail") << '\n';
    return out.str();
}

} // namespace critsurf
