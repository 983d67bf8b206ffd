#include <critsurf/surgery.hpp>

#include <critsurf/error.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace critsurf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(at(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[at(x)] != x) {
            parent[at(x)] = parent[at(parent[at(x)])];
            x = parent[at(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[at(find(a))] = find(b); }
};

std::vector<int> rotation_positions(const MapData& m)
{
    std::vector<int> pos(2 * m.edges.size(), -1);
    for (const auto& rot : m.rotations)
        for (std::size_t i = 0; i < rot.size(); ++i)
            pos[at(rot[i])] = static_cast<int>(i);
    return pos;
}

int rotate_dart(const MapData& m, const std::vector<int>& pos, int dart, int orient)
{
    const auto& rot = m.rotations[at(m.tail(dart))];
    const int k = static_cast<int>(rot.size());
    const int p = pos[at(dart)];
    return rot[at(orient > 0 ? (p + 1) % k : (p - 1 + k) % k)];
}

// Maps face indices of a FacedMap onto the canonical faces of the built graph.
std::vector<int> built_face_index(const FacedMap& fm, const EmbeddedGraph& built)
{
    std::vector<int> out(at(fm.face_count()), -1);
    for (std::size_t w = 0; w < fm.walks.size(); ++w)
        out[at(fm.walk_face[w])] = built.face_of_walk(static_cast<int>(w));
    return out;
}

} // namespace

FacedMap FacedMap::from(const EmbeddedGraph& g)
{
    FacedMap fm;
    fm.map = g.map();
    fm.walks = g.walks();
    fm.side_walk.resize(2 * at(g.edge_count()));
    for (int s = 0; s < 2 * g.edge_count(); ++s)
        fm.side_walk[at(s)] = g.walk_of_side(s);
    for (std::size_t w = 0; w < g.walks().size(); ++w)
        fm.walk_face.push_back(g.face_of_walk(static_cast<int>(w)));
    for (const auto& f : g.faces())
        fm.face_genus.push_back(f.genus);
    fm.rings = g.rings();
    return fm;
}

FacedMap FacedMap::with_faces(MapData map, const std::vector<int>& walk_face, std::vector<int> face_genus,
                              std::vector<Ring> rings)
{
    FacedMap fm;
    fm.map = std::move(map);
    fm.walks = trace_walks(fm.map, &fm.side_walk);
    fm.walk_face = walk_face;
    fm.face_genus = std::move(face_genus);
    fm.rings = std::move(rings);
    return fm;
}

int FacedMap::face_at_vertex(int v) const
{
    const auto& rot = map.rotations[at(v)];
    if (!rot.empty())
        return face_of_side(side_key(map, rot.front(), 1));
    for (std::size_t w = 0; w < walks.size(); ++w)
        if (walks[w].lone_vertex == v)
            return walk_face[w];
    return -1;
}

EmbeddedGraph FacedMap::build(std::optional<int> genus) const
{
    EmbeddingSpec spec;
    spec.map = map;
    std::vector<FaceSpec> faces(at(face_count()));
    for (int f = 0; f < face_count(); ++f)
        faces[at(f)].genus = face_genus[at(f)];
    for (std::size_t w = 0; w < walks.size(); ++w)
        faces[at(walk_face[w])].walks.push_back(static_cast<int>(w));
    spec.faces = std::move(faces);
    spec.rings = rings;
    spec.genus = genus;
    return EmbeddedGraph::build(spec);
}

Restriction restrict_map(const FacedMap& in, const std::vector<char>& keep_vertex, const std::vector<char>& keep_edge,
                         bool drop_orphans)
{
    const MapData& old = in.map;
    Restriction out;
    out.vertex_image.assign(at(old.vertex_count), -1);
    out.edge_image.assign(old.edges.size(), -1);
    for (int v = 0; v < old.vertex_count; ++v)
        if (keep_vertex[at(v)]) {
            out.vertex_image[at(v)] = static_cast<int>(out.vertex_origin.size());
            out.vertex_origin.push_back(v);
        }
    MapData& m = out.result.map;
    m.vertex_count = static_cast<int>(out.vertex_origin.size());
    for (int e = 0; e < static_cast<int>(old.edges.size()); ++e) {
        const auto& ed = old.edges[at(e)];
        if (keep_edge[at(e)] && keep_vertex[at(ed.u)] && keep_vertex[at(ed.v)]) {
            out.edge_image[at(e)] = static_cast<int>(out.edge_origin.size());
            out.edge_origin.push_back(e);
            m.edges.push_back({out.vertex_image[at(ed.u)], out.vertex_image[at(ed.v)], ed.sign});
        }
    }
    m.rotations.resize(at(m.vertex_count));
    for (int v = 0; v < m.vertex_count; ++v)
        for (int d : old.rotations[at(out.vertex_origin[at(v)])])
            if (int e = out.edge_image[at(dart_edge(d))]; e >= 0)
                m.rotations[at(v)].push_back(make_dart(e, dart_end(d)));

    // Merge old faces across deleted edges and track Euler characteristics.
    DisjointSets ds(in.face_count());
    for (int e = 0; e < static_cast<int>(old.edges.size()); ++e)
        if (out.edge_image[at(e)] < 0)
            ds.unite(in.face_of_side(2 * e), in.face_of_side(2 * e + 1));
    std::vector<long> chi(at(in.face_count()), 0);
    std::vector<int> walk_count(at(in.face_count()), 0);
    for (int w : in.walk_face)
        ++walk_count[at(w)];
    for (int f = 0; f < in.face_count(); ++f)
        chi[at(ds.find(f))] += 2 - in.face_genus[at(f)] - walk_count[at(f)];
    for (int v = 0; v < old.vertex_count; ++v)
        if (!keep_vertex[at(v)])
            chi[at(ds.find(in.face_at_vertex(v)))] += 1;
    for (int e = 0; e < static_cast<int>(old.edges.size()); ++e)
        if (out.edge_image[at(e)] < 0)
            chi[at(ds.find(in.face_of_side(2 * e)))] -= 1;

    out.result.walks = trace_walks(m, &out.result.side_walk);
    std::map<int, int> class_index;
    std::vector<int> class_of_new;
    for (const auto& w : out.result.walks) {
        int old_face;
        if (w.is_lone()) {
            old_face = in.face_at_vertex(out.vertex_origin[at(w.lone_vertex)]);
        } else {
            const auto& s = w.steps.front();
            const int old_dart = make_dart(out.edge_origin[at(dart_edge(s.dart))], dart_end(s.dart));
            old_face = in.face_of_side(side_key(old, old_dart, s.orient));
        }
        const int cls = ds.find(old_face);
        auto [it, fresh] = class_index.emplace(cls, static_cast<int>(class_index.size()));
        if (fresh)
            class_of_new.push_back(cls);
        out.result.walk_face.push_back(it->second);
    }
    std::vector<int> new_walks(class_of_new.size(), 0);
    for (int f : out.result.walk_face)
        ++new_walks[at(f)];
    for (std::size_t f = 0; f < class_of_new.size(); ++f) {
        const long g = 2 - new_walks[f] - chi[at(class_of_new[f])];
        if (g < 0)
            throw Error(ErrorCode::EulerMismatch, "face merge produced negative genus");
        out.result.face_genus.push_back(static_cast<int>(g));
    }
    out.face_image.assign(at(in.face_count()), -1);
    for (int f = 0; f < in.face_count(); ++f) {
        auto it = class_index.find(ds.find(f));
        if (it != class_index.end())
            out.face_image[at(f)] = it->second;
        else if (!drop_orphans)
            throw Error(ErrorCode::PreconditionFailed, "restriction leaves a region without boundary");
    }

    for (const auto& r : in.rings) {
        Ring nr = r;
        nr.face = out.face_image[at(r.face)];
        if (nr.face < 0)
            continue;
        if (r.kind == RingKind::Vertex) {
            nr.vertex = out.vertex_image[at(r.vertex)];
            if (nr.vertex < 0)
                continue;
        } else {
            bool intact = true;
            for (std::size_t w = 0; w < in.walks.size(); ++w) {
                if (in.walk_face[w] != r.face)
                    continue;
                for (const auto& s : in.walks[w].steps)
                    intact = intact && out.edge_image[at(dart_edge(s.dart))] >= 0;
            }
            if (!intact)
                continue;
        }
        out.result.rings.push_back(nr);
    }
    return out;
}

SubgraphView restrict_to(const EmbeddedGraph& g, const std::vector<char>& keep_vertex, const std::vector<char>& keep_edge)
{
    auto r = restrict_map(FacedMap::from(g), keep_vertex, keep_edge);
    if (r.result.map.vertex_count == 0)
        throw Error(ErrorCode::PreconditionFailed, "subgraph is empty");
    SubgraphView view{r.result.build(g.genus()), std::move(r.vertex_origin), std::move(r.edge_origin),
                      std::move(r.vertex_image), std::move(r.edge_image), {}};
    const auto index = built_face_index(r.result, view.graph);
    for (int f : r.face_image)
        view.face_image.push_back(index[at(f)]);
    return view;
}

SubgraphView delete_elements(const EmbeddedGraph& g, const std::vector<int>& vertices, const std::vector<int>& edges)
{
    std::vector<char> kv(at(g.vertex_count()), 1);
    std::vector<char> ke(at(g.edge_count()), 1);
    for (int v : vertices)
        kv[at(v)] = 0;
    for (int e : edges)
        ke[at(e)] = 0;
    return restrict_to(g, kv, ke);
}

SubgraphView subgraph(const EmbeddedGraph& g, const std::vector<int>& vertices, const std::vector<int>& edges)
{
    std::vector<char> kv(at(g.vertex_count()), 0);
    std::vector<char> ke(at(g.edge_count()), 0);
    for (int v : vertices)
        kv[at(v)] = 1;
    for (int e : edges) {
        ke[at(e)] = 1;
        kv[at(g.edge(e).u)] = 1;
        kv[at(g.edge(e).v)] = 1;
    }
    return restrict_to(g, kv, ke);
}

std::vector<Component> cellular_components(const EmbeddedGraph& g)
{
    const auto comps = g.underlying().components();
    const FacedMap host = FacedMap::from(g);
    std::vector<Component> out;
    for (const auto& comp : comps) {
        std::vector<char> kv(at(g.vertex_count()), 0);
        for (int v : comp)
            kv[at(v)] = 1;
        std::vector<char> ke(at(g.edge_count()), 1);
        auto r = restrict_map(host, kv, ke);
        FacedMap& fm = r.result;
        // Every walk becomes its own disk face.
        std::vector<int> old_face_of_walk(fm.walks.size());
        for (std::size_t w = 0; w < fm.walks.size(); ++w) {
            const auto& walk = fm.walks[w];
            if (walk.is_lone()) {
                old_face_of_walk[w] = host.face_at_vertex(r.vertex_origin[at(walk.lone_vertex)]);
            } else {
                const auto& s = walk.steps.front();
                const int od = make_dart(r.edge_origin[at(dart_edge(s.dart))], dart_end(s.dart));
                old_face_of_walk[w] = host.face_of_side(side_key(host.map, od, s.orient));
            }
            fm.walk_face[w] = static_cast<int>(w);
        }
        fm.face_genus.assign(fm.walks.size(), 0);
        fm.rings.clear();
        for (const auto& ring : g.rings()) {
            if (ring.kind == RingKind::Facial) {
                const auto& walk = g.walks()[at(g.faces()[at(ring.face)].walks[0])];
                const int v0 = g.tail(walk.steps[0].dart);
                if (!kv[at(v0)])
                    continue;
                const auto& s = walk.steps[0];
                const int nd = make_dart(r.edge_image[at(dart_edge(s.dart))], dart_end(s.dart));
                fm.rings.push_back({RingKind::Facial, fm.side_walk[at(side_key(fm.map, nd, s.orient))], -1, false});
            } else if (kv[at(ring.vertex)]) {
                const int nv = r.vertex_image[at(ring.vertex)];
                int chosen = -1;
                for (std::size_t w = 0; w < fm.walks.size() && chosen < 0; ++w) {
                    const auto vs = fm.walks[w].vertices(fm.map);
                    if (std::find(vs.begin(), vs.end(), nv) != vs.end() && old_face_of_walk[w] == ring.face)
                        chosen = static_cast<int>(w);
                }
                for (std::size_t w = 0; w < fm.walks.size() && chosen < 0; ++w) {
                    const auto vs = fm.walks[w].vertices(fm.map);
                    if (std::find(vs.begin(), vs.end(), nv) != vs.end())
                        chosen = static_cast<int>(w);
                }
                fm.rings.push_back({RingKind::Vertex, chosen, nv, ring.weak});
            }
        }
        out.push_back({fm.build(), std::move(r.vertex_origin), std::move(r.edge_origin)});
    }
    return out;
}

std::vector<int> cycle_edges(const EmbeddedGraph& g, const std::vector<int>& cycle)
{
    const std::size_t k = cycle.size();
    if (k < 3)
        throw Error(ErrorCode::NotACycle, "a cycle needs at least three vertices");
    std::set<int> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != k)
        throw Error(ErrorCode::NotACycle, "cycle repeats a vertex");
    std::vector<int> edges;
    for (std::size_t i = 0; i < k; ++i) {
        const int a = cycle[i];
        const int b = cycle[(i + 1) % k];
        if (a < 0 || a >= g.vertex_count() || b < 0 || b >= g.vertex_count())
            throw Error(ErrorCode::NotACycle, "cycle names a missing vertex");
        const int e = g.edge_between(a, b);
        if (e < 0)
            throw Error(ErrorCode::NotACycle, "vertices " + std::to_string(a) + " and " + std::to_string(b) + " are not adjacent");
        edges.push_back(e);
    }
    return edges;
}

void check_expansion_property(const EmbeddedGraph& g, const SubgraphView& j, const std::vector<int>& s)
{
    const auto& jg = j.graph;
    std::vector<char> in_s(jg.faces().size(), 0);
    for (int f : s) {
        if (f < 0 || f >= static_cast<int>(jg.faces().size()))
            throw Error(ErrorCode::PropertyViolated, "S names a missing face of J");
        in_s[at(f)] = 1;
    }
    std::vector<char> covered_v(at(jg.vertex_count()), 0);
    std::vector<char> covered_e(at(jg.edge_count()), 0);
    for (int f : s)
        for (int w : jg.faces()[at(f)].walks) {
            const auto& walk = jg.walks()[at(w)];
            if (walk.is_lone())
                covered_v[at(walk.lone_vertex)] = 1;
            for (const auto& st : walk.steps) {
                covered_v[at(jg.tail(st.dart))] = 1;
                covered_e[at(dart_edge(st.dart))] = 1;
            }
        }
    for (int v = 0; v < jg.vertex_count(); ++v)
        if (!covered_v[at(v)])
            throw Error(ErrorCode::PropertyViolated, "boundary union: vertex " + std::to_string(j.vertex_origin[at(v)]) +
                                                         " of J is on no face of S");
    for (int e = 0; e < jg.edge_count(); ++e)
        if (!covered_e[at(e)])
            throw Error(ErrorCode::PropertyViolated, "boundary union: edge " + std::to_string(j.edge_origin[at(e)]) +
                                                         " of J is on no face of S");
    for (int v = 0; v < jg.vertex_count(); ++v)
        if (jg.degree(v) == 0 && g.vertex_ring_at(j.vertex_origin[at(v)]) < 0)
            throw Error(ErrorCode::PropertyViolated, "isolated vertex " + std::to_string(j.vertex_origin[at(v)]) +
                                                         " of J is not a vertex ring");
    for (std::size_t r = 0; r < g.rings().size(); ++r) {
        const auto& ring = g.rings()[r];
        if (!in_s[at(j.face_image[at(ring.face)])])
            continue;
        if (ring.kind == RingKind::Facial || j.vertex_image[at(ring.vertex)] < 0)
            throw Error(ErrorCode::PropertyViolated, "cuff: ring " + std::to_string(r) +
                                                         " meets a face of S without a vertex ring in J");
    }
}

namespace {

struct CopyKey {
    int host;
    int walk;
    int occurrence;
    auto operator<=>(const CopyKey&) const = default;
};

std::vector<ExpansionPiece> expand(const EmbeddedGraph& g, const SubgraphView& j, const std::vector<int>& s,
                                   bool inherit_rings)
{
    const auto& jg = j.graph;
    const MapData& hm = g.map();
    const auto hpos = rotation_positions(hm);

    std::vector<char> in_j_vertex(at(g.vertex_count()), 0);
    std::vector<char> in_j_edge(at(g.edge_count()), 0);
    for (int v : j.vertex_origin)
        in_j_vertex[at(v)] = 1;
    for (int e : j.edge_origin)
        in_j_edge[at(e)] = 1;

    auto host_dart = [&](int jdart) { return make_dart(j.edge_origin[at(dart_edge(jdart))], dart_end(jdart)); };
    auto vertex_class = [&](int v) {
        if (g.degree(v) > 0)
            return j.face_image[at(g.face_of_side(side_key(hm, g.rotation(v).front(), 1)))];
        for (std::size_t w = 0; w < g.walks().size(); ++w)
            if (g.walks()[w].lone_vertex == v)
                return j.face_image[at(g.face_of_walk(static_cast<int>(w)))];
        return -1;
    };

    std::vector<ExpansionPiece> pieces;
    for (int sf : s) {
        const auto& face = jg.faces()[at(sf)];

        // Vertex copies: one per walk occurrence, one per lone vertex, one per interior vertex.
        std::map<CopyKey, int> copy_frame; // copy -> local orientation relative to host
        std::map<int, CopyKey> corner_copy; // host dart -> copy owning it
        std::map<CopyKey, std::vector<int>> corner_darts;
        std::vector<std::pair<int, int>> walk_occ; // (walk, length)
        for (int w : face.walks) {
            const auto& walk = jg.walks()[at(w)];
            if (walk.is_lone()) {
                const int hv = j.vertex_origin[at(walk.lone_vertex)];
                CopyKey key{hv, w, 0};
                copy_frame[key] = 1;
                corner_darts[key] = g.rotation(hv);
                for (int d : g.rotation(hv))
                    corner_copy[d] = key;
                continue;
            }
            const int len = walk.length();
            for (int i = 0; i < len; ++i) {
                const auto& cur = walk.steps[at(i)];
                const auto& prev = walk.steps[at((i + len - 1) % len)];
                const int out_dart = host_dart(cur.dart);
                const int back = dart_reverse(host_dart(prev.dart));
                CopyKey key{hm.tail(out_dart), w, i};
                copy_frame[key] = cur.orient;
                auto& list = corner_darts[key];
                for (int d = rotate_dart(hm, hpos, back, cur.orient); d != out_dart; d = rotate_dart(hm, hpos, d, cur.orient)) {
                    if (in_j_edge[at(dart_edge(d))])
                        throw Error(ErrorCode::PropertyViolated, "J corner contains a J edge");
                    list.push_back(d);
                    corner_copy[d] = key;
                }
            }
        }
        std::vector<int> interior;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!in_j_vertex[at(v)] && vertex_class(v) == sf) {
                interior.push_back(v);
                copy_frame[CopyKey{v, -1, 0}] = 1;
            }

        ExpansionPiece piece;
        piece.source_face = sf;
        std::map<CopyKey, int> copy_id;
        std::vector<int> piece_frame;
        for (const auto& [key, frame] : copy_frame) {
            copy_id[key] = static_cast<int>(piece.vertex_origin.size());
            piece.vertex_origin.push_back(key.host);
            piece_frame.push_back(frame);
        }
        auto owner = [&](int host_dart_id) -> CopyKey {
            const int v = hm.tail(host_dart_id);
            if (!in_j_vertex[at(v)])
                return {v, -1, 0};
            return corner_copy.at(host_dart_id);
        };

        // Edges: walk copies first (ordered by walk, occurrence), then interior edges by host id.
        MapData pm;
        pm.vertex_count = static_cast<int>(piece.vertex_origin.size());
        std::vector<int> edge_host_dart; // host dart matching piece dart (e, 0)
        std::map<std::pair<int, int>, int> walk_edge; // (walk, occurrence) -> piece edge
        for (int w : face.walks) {
            const auto& walk = jg.walks()[at(w)];
            const int len = walk.length();
            for (int i = 0; i < len; ++i) {
                walk_edge[{w, i}] = static_cast<int>(pm.edges.size());
                const int hd = host_dart(walk.steps[at(i)].dart);
                pm.edges.push_back({copy_id.at({hm.tail(hd), w, i}), copy_id.at({hm.head(hd), w, (i + 1) % len}), 1});
                edge_host_dart.push_back(hd);
                piece.edge_origin.push_back(dart_edge(hd));
            }
        }
        std::map<int, int> interior_edge;
        for (int e = 0; e < g.edge_count(); ++e) {
            if (in_j_edge[at(e)] || j.face_image[at(g.face_of_side(2 * e))] != sf)
                continue;
            const CopyKey a = owner(make_dart(e, 0));
            const CopyKey b = owner(make_dart(e, 1));
            interior_edge[e] = static_cast<int>(pm.edges.size());
            pm.edges.push_back({copy_id.at(a), copy_id.at(b), g.edge(e).sign * copy_frame.at(a) * copy_frame.at(b)});
            edge_host_dart.push_back(make_dart(e, 0));
            piece.edge_origin.push_back(e);
        }

        pm.rotations.resize(at(pm.vertex_count));
        std::vector<int> hole_start;
        for (const auto& [key, frame] : copy_frame) {
            auto& rot = pm.rotations[at(copy_id.at(key))];
            if (key.walk < 0) {
                for (int d : g.rotation(key.host))
                    rot.push_back(make_dart(interior_edge.at(dart_edge(d)), dart_end(d)));
                continue;
            }
            const auto& walk = jg.walks()[at(key.walk)];
            if (walk.is_lone()) {
                for (int d : corner_darts.at(key))
                    rot.push_back(make_dart(interior_edge.at(dart_edge(d)), dart_end(d)));
                continue;
            }
            const int len = walk.length();
            const int prev_edge = walk_edge.at({key.walk, (key.occurrence + len - 1) % len});
            const int next_edge = walk_edge.at({key.walk, key.occurrence});
            rot.push_back(make_dart(prev_edge, 1));
            for (int d : corner_darts.at(key))
                rot.push_back(make_dart(interior_edge.at(dart_edge(d)), dart_end(d)));
            rot.push_back(make_dart(next_edge, 0));
            if (key.occurrence == 0)
                hole_start.push_back(make_dart(prev_edge, 1));
        }

        // Faces: holes become ring faces; the rest inherit the host face they trace.
        std::vector<int> side_walk;
        const auto pwalks = trace_walks(pm, &side_walk);
        std::vector<int> walk_face(pwalks.size(), -1);
        std::vector<int> face_genus;
        std::vector<Ring> rings;
        for (int d : hole_start) {
            const int w = side_walk[at(side_key(pm, d, 1))];
            walk_face[at(w)] = static_cast<int>(face_genus.size());
            rings.push_back({RingKind::Facial, static_cast<int>(face_genus.size()), -1, false});
            face_genus.push_back(0);
        }
        std::map<int, int> host_face_to_piece;
        auto piece_face_for = [&](int host_face) {
            auto [it, fresh] = host_face_to_piece.emplace(host_face, static_cast<int>(face_genus.size()));
            if (fresh) {
                face_genus.push_back(g.faces()[at(host_face)].genus);
                piece.host_faces.push_back(host_face);
            }
            return it->second;
        };
        for (std::size_t w = 0; w < pwalks.size(); ++w) {
            if (walk_face[w] >= 0)
                continue;
            const auto& walk = pwalks[w];
            int host_face;
            if (walk.is_lone()) {
                host_face = g.face_of_walk([&] {
                    for (std::size_t hw = 0; hw < g.walks().size(); ++hw)
                        if (g.walks()[hw].lone_vertex == piece.vertex_origin[at(walk.lone_vertex)])
                            return static_cast<int>(hw);
                    return -1;
                }());
            } else {
                host_face = -1;
                for (const auto& st : walk.steps) {
                    const int pe = dart_edge(st.dart);
                    const int hd = edge_host_dart[at(pe)] ^ dart_end(st.dart);
                    const int hf = g.face_of_side(side_key(hm, hd, st.orient * piece_frame[at(pm.tail(st.dart))]));
                    if (host_face < 0)
                        host_face = hf;
                    else if (host_face != hf)
                        throw Error(ErrorCode::PropertyViolated, "piece walk crosses host faces");
                }
            }
            walk_face[w] = piece_face_for(host_face);
        }
        std::sort(piece.host_faces.begin(), piece.host_faces.end());

        // Natural vertex rings for lone walks; inherited rings in cut mode.
        for (int w : face.walks) {
            const auto& walk = jg.walks()[at(w)];
            if (!walk.is_lone())
                continue;
            const int hv = j.vertex_origin[at(walk.lone_vertex)];
            const int r = g.vertex_ring_at(hv);
            rings.push_back({RingKind::Vertex, piece_face_for(g.rings()[at(r)].face), copy_id.at({hv, w, 0}), g.rings()[at(r)].weak});
        }
        for (std::size_t r = 0; r < g.rings().size(); ++r) {
            const auto& ring = g.rings()[r];
            if (j.face_image[at(ring.face)] != sf)
                continue;
            piece.host_rings.push_back(static_cast<int>(r));
            if (!inherit_rings)
                continue;
            if (ring.kind == RingKind::Vertex && !in_j_vertex[at(ring.vertex)]) {
                rings.push_back({RingKind::Vertex, piece_face_for(ring.face), copy_id.at({ring.vertex, -1, 0}), ring.weak});
            } else if (ring.kind == RingKind::Facial) {
                bool clear = true;
                for (int v : g.ring_vertices(static_cast<int>(r)))
                    clear = clear && !in_j_vertex[at(v)];
                if (clear)
                    rings.push_back({RingKind::Facial, piece_face_for(ring.face), -1, false});
            }
        }
        // Lone J walks of vertex rings are themselves host rings of the piece.
        for (int w : face.walks) {
            const auto& walk = jg.walks()[at(w)];
            if (walk.is_lone()) {
                const int r = g.vertex_ring_at(j.vertex_origin[at(walk.lone_vertex)]);
                if (std::find(piece.host_rings.begin(), piece.host_rings.end(), r) == piece.host_rings.end())
                    piece.host_rings.push_back(r);
            }
        }
        std::sort(piece.host_rings.begin(), piece.host_rings.end());

        for (std::size_t i = 0; i < pwalks.size(); ++i)
            if (walk_face[i] < 0)
                throw Error(ErrorCode::PropertyViolated, "unassigned piece walk");
        FacedMap fm;
        fm.map = pm;
        fm.walks = pwalks;
        fm.side_walk = side_walk;
        fm.walk_face = walk_face;
        fm.face_genus = face_genus;
        fm.rings = rings;
        piece.graph = fm.build();
        // Natural rings: hole rings and lone vertex rings, located in the canonical ring order.
        for (std::size_t r = 0; r < piece.graph.rings().size(); ++r) {
            const auto& ring = piece.graph.rings()[r];
            bool natural = false;
            if (ring.kind == RingKind::Facial) {
                const int w = piece.graph.faces()[at(ring.face)].walks[0];
                for (int d : hole_start)
                    natural = natural || piece.graph.walk_of_side(side_key(pm, d, 1)) == w;
            } else {
                for (int w : face.walks)
                    natural = natural || (jg.walks()[at(w)].is_lone() &&
                                          copy_id.at({j.vertex_origin[at(jg.walks()[at(w)].lone_vertex)], w, 0}) == ring.vertex);
            }
            if (natural)
                piece.natural_rings.push_back(static_cast<int>(r));
        }
        piece.cut_boundaries = static_cast<int>(hole_start.size());
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

} // namespace

std::vector<ExpansionPiece> g_expansion(const EmbeddedGraph& g, const SubgraphView& j, const std::vector<int>& s)
{
    check_expansion_property(g, j, s);
    return expand(g, j, s, false);
}

std::vector<ExpansionPiece> cut_along(const EmbeddedGraph& g, const std::vector<int>& cycle)
{
    const auto edges = cycle_edges(g, cycle);
    const auto j = subgraph(g, cycle, edges);
    std::vector<int> s(j.graph.faces().size());
    std::iota(s.begin(), s.end(), 0);
    return expand(g, j, s, true);
}

std::vector<ExpansionPiece> cut_through_vertex(const EmbeddedGraph& g, int face, int i, int j)
{
    if (face < 0 || face >= static_cast<int>(g.faces().size()) || !g.is_internal(face))
        throw Error(ErrorCode::NotSimpleCurve, "curve must run through an internal face");
    if (g.face_class(face) == FaceClass::Neither)
        throw Error(ErrorCode::Unsupported, "curves are supported only inside open 2-cell faces");
    const auto& walk = g.walks()[at(g.faces()[at(face)].walks[0])];
    const int len = walk.length();
    if (i < 0 || j < 0 || i >= len || j >= len || i == j)
        throw Error(ErrorCode::NotSimpleCurve, "occurrences must be two distinct positions of the face walk");
    const auto vs = walk.vertices(g.map());
    const int v = vs[at(i)];
    if (vs[at(j)] != v)
        throw Error(ErrorCode::NotSimpleCurve, "the curve must return to the vertex it left");
    if (g.is_ring_vertex(v))
        throw Error(ErrorCode::Unsupported, "cutting through a ring vertex");

    // Corners are gaps between consecutive darts in the vertex's own rotation order.
    const auto& rot = g.rotation(v);
    const int k = static_cast<int>(rot.size());
    auto gap_after = [&](int occ) {
        const auto& cur = walk.steps[at(occ)];
        const auto& prev = walk.steps[at((occ + len - 1) % len)];
        const int back = dart_reverse(prev.dart);
        const int lo = cur.orient > 0 ? back : cur.dart;
        return static_cast<int>(std::find(rot.begin(), rot.end(), lo) - rot.begin());
    };
    const int gi = gap_after(i);
    const int gj = gap_after(j);
    std::vector<char> second(2 * at(g.edge_count()), 0);
    for (int p = (gi + 1) % k; p != (gj + 1) % k; p = (p + 1) % k)
        second[at(rot[at(p)])] = 1;

    MapData m = g.map();
    const int nv = m.vertex_count++;
    m.rotations.emplace_back();
    std::vector<int> keep, moved;
    for (int d : rot)
        (second[at(d)] ? moved : keep).push_back(d);
    m.rotations[at(v)] = keep;
    m.rotations[at(nv)] = moved;
    for (int d : moved) {
        auto& e = m.edges[at(dart_edge(d))];
        (dart_end(d) == 0 ? e.u : e.v) = nv;
    }

    std::vector<int> side_walk;
    const auto walks = trace_walks(m, &side_walk);
    std::vector<int> walk_face(walks.size(), -1);
    std::vector<int> genus;
    std::map<int, int> old_to_new;
    std::vector<int> split_faces;
    for (std::size_t w = 0; w < walks.size(); ++w) {
        int old_face;
        if (walks[w].is_lone()) {
            old_face = -1;
            for (std::size_t hw = 0; hw < g.walks().size(); ++hw)
                if (g.walks()[hw].lone_vertex == walks[w].lone_vertex)
                    old_face = g.face_of_walk(static_cast<int>(hw));
            if (old_face < 0)
                old_face = face; // a copy left without edges sits in the cut face
        } else {
            old_face = g.face_of_side(side_key(m, walks[w].steps[0].dart, walks[w].steps[0].orient));
        }
        if (old_face == face) {
            walk_face[w] = static_cast<int>(genus.size());
            split_faces.push_back(static_cast<int>(genus.size()));
            genus.push_back(0);
            continue;
        }
        auto [it, fresh] = old_to_new.emplace(old_face, static_cast<int>(genus.size()));
        if (fresh)
            genus.push_back(g.faces()[at(old_face)].genus);
        walk_face[w] = it->second;
    }
    auto split_face_at = [&](int x) {
        for (std::size_t w = 0; w < walks.size(); ++w) {
            if (std::find(split_faces.begin(), split_faces.end(), walk_face[w]) == split_faces.end())
                continue;
            const auto wv = walks[w].vertices(m);
            if (std::find(wv.begin(), wv.end(), x) != wv.end())
                return walk_face[w];
        }
        return split_faces.front();
    };
    std::vector<Ring> rings;
    for (const auto& r : g.rings()) {
        Ring nr = r;
        nr.face = r.face == face ? split_face_at(r.vertex) : old_to_new.at(r.face);
        rings.push_back(nr);
    }
    for (int copy : {v, nv})
        rings.push_back({RingKind::Vertex, split_face_at(copy), copy, false});
    FacedMap whole = FacedMap::with_faces(m, walk_face, genus, rings);

    // Split into connected surfaces.
    DisjointSets ds(m.vertex_count);
    for (const auto& e : m.edges)
        ds.unite(e.u, e.v);
    std::vector<int> face_root(genus.size(), -1);
    for (std::size_t w = 0; w < walks.size(); ++w) {
        const int x = walks[w].vertices(m)[0];
        int& root = face_root[at(walk_face[w])];
        if (root < 0)
            root = x;
        else
            ds.unite(root, x);
    }
    std::map<int, std::vector<char>> parts;
    for (int x = 0; x < m.vertex_count; ++x) {
        auto& mask = parts[ds.find(x)];
        mask.resize(at(m.vertex_count), 0);
        mask[at(x)] = 1;
    }
    std::vector<ExpansionPiece> out;
    for (auto& [root, mask] : parts) {
        std::vector<char> all_edges(m.edges.size(), 1);
        auto r = restrict_map(whole, mask, all_edges, true);
        ExpansionPiece piece;
        piece.graph = r.result.build();
        for (int x : r.vertex_origin)
            piece.vertex_origin.push_back(x == nv ? v : x);
        piece.edge_origin = r.edge_origin;
        for (std::size_t q = 0; q < piece.graph.rings().size(); ++q) {
            const auto& ring = piece.graph.rings()[q];
            if (ring.kind == RingKind::Vertex && piece.vertex_origin[at(ring.vertex)] == v)
                piece.natural_rings.push_back(static_cast<int>(q));
        }
        piece.source_face = face;
        out.push_back(std::move(piece));
    }
    return out;
}

} // namespace critsurf
