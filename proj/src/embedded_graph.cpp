#include <critsurf/embedded_graph.hpp>

#include <critsurf/error.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace critsurf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

std::vector<int> dart_positions(const MapData& map)
{
    std::vector<int> pos(2 * map.edges.size(), -1);
    for (const auto& rot : map.rotations)
        for (std::size_t i = 0; i < rot.size(); ++i)
            pos[at(rot[i])] = static_cast<int>(i);
    return pos;
}

WalkStep advance(const MapData& map, const std::vector<int>& pos, WalkStep s)
{
    const int o = s.orient * map.sign(s.dart);
    const int r = dart_reverse(s.dart);
    const auto& rot = map.rotations[at(map.tail(r))];
    const int k = static_cast<int>(rot.size());
    const int p = pos[at(r)];
    return {rot[at(o > 0 ? (p + 1) % k : (p - 1 + k) % k)], o};
}

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

} // namespace

std::vector<int> Walk::vertices(const MapData& map) const
{
    if (is_lone())
        return {lone_vertex};
    std::vector<int> out;
    out.reserve(steps.size());
    for (const auto& s : steps)
        out.push_back(map.tail(s.dart));
    return out;
}

bool Walk::is_cycle(const MapData& map) const
{
    if (steps.size() < 3)
        return false;
    auto vs = vertices(map);
    std::sort(vs.begin(), vs.end());
    return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

int side_key(const MapData& map, int dart, int orient)
{
    const int e = dart_edge(dart);
    const int o = dart_end(dart) == 0 ? orient : -orient * map.sign(dart);
    return 2 * e + (o < 0 ? 1 : 0);
}

std::vector<Walk> trace_walks(const MapData& map, std::vector<int>* side_walk)
{
    const auto pos = dart_positions(map);
    const int states = 4 * static_cast<int>(map.edges.size());
    std::vector<char> seen(at(states), 0);
    std::vector<Walk> walks;
    if (side_walk)
        side_walk->assign(2 * map.edges.size(), -1);

    for (int s = 0; s < states; ++s) {
        if (seen[at(s)])
            continue;
        Walk w;
        WalkStep cur{s / 2, (s & 1) ? -1 : 1};
        do {
            w.steps.push_back(cur);
            seen[at(make_state(cur.dart, cur.orient))] = 1;
            const int back = -cur.orient * map.sign(cur.dart);
            seen[at(make_state(dart_reverse(cur.dart), back))] = 1;
            if (side_walk)
                (*side_walk)[at(side_key(map, cur.dart, cur.orient))] = static_cast<int>(walks.size());
            cur = advance(map, pos, cur);
        } while (make_state(cur.dart, cur.orient) != s);
        walks.push_back(std::move(w));
    }
    for (int v = 0; v < map.vertex_count; ++v)
        if (map.rotations[at(v)].empty()) {
            Walk w;
            w.lone_vertex = v;
            walks.push_back(std::move(w));
        }
    return walks;
}

int rotation_system_genus(const MapData& map)
{
    std::vector<int> side_walk;
    const auto walks = trace_walks(map, &side_walk);
    DisjointSets ds(map.vertex_count);
    for (const auto& e : map.edges)
        ds.unite(e.u, e.v);
    std::map<int, int> chi;
    for (int v = 0; v < map.vertex_count; ++v)
        chi[ds.find(v)] += 1;
    for (const auto& e : map.edges)
        chi[ds.find(e.u)] -= 1;
    for (const auto& w : walks)
        chi[ds.find(w.is_lone() ? w.lone_vertex : map.tail(w.steps.front().dart))] += 1;
    int g = 0;
    for (const auto& [root, c] : chi)
        g += 2 - c;
    return g;
}

bool rotation_system_orientable(const MapData& map)
{
    std::vector<int> side(at(map.vertex_count), 0);
    std::vector<std::vector<std::pair<int, int>>> adj(at(map.vertex_count));
    for (const auto& e : map.edges) {
        adj[at(e.u)].emplace_back(e.v, e.sign);
        adj[at(e.v)].emplace_back(e.u, e.sign);
    }
    for (int s = 0; s < map.vertex_count; ++s) {
        if (side[at(s)] != 0)
            continue;
        side[at(s)] = 1;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, sign] : adj[at(v)]) {
                const int want = side[at(v)] * sign;
                if (side[at(w)] == 0) {
                    side[at(w)] = want;
                    stack.push_back(w);
                } else if (side[at(w)] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

EmbeddedGraph EmbeddedGraph::build(const EmbeddingSpec& spec)
{
    EmbeddedGraph g;
    g.map_ = spec.map;
    MapData& m = g.map_;
    const int n = m.vertex_count;
    const int edge_count = static_cast<int>(m.edges.size());
    if (n < 0)
        throw Error(ErrorCode::DanglingReference, "negative vertex count");
    if (n == 0)
        throw Error(ErrorCode::EulerMismatch, "an empty graph has no surface structure");
    if (static_cast<int>(m.rotations.size()) != n)
        throw Error(ErrorCode::DanglingReference, "rotation count differs from vertex count");

    std::map<std::pair<int, int>, int> pairs;
    for (int e = 0; e < edge_count; ++e) {
        const auto& ed = m.edges[at(e)];
        if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n)
            throw Error(ErrorCode::DanglingReference, "edge " + std::to_string(e) + " has an endpoint out of range");
        if (ed.sign != 1 && ed.sign != -1)
            throw Error(ErrorCode::DanglingReference, "edge " + std::to_string(e) + " has an invalid sign");
        if (ed.u == ed.v)
            throw Error(ErrorCode::NotSimple, "edge " + std::to_string(e) + " is a loop");
        if (!pairs.emplace(std::minmax(ed.u, ed.v), e).second)
            throw Error(ErrorCode::NotSimple, "edges " + std::to_string(pairs[std::minmax(ed.u, ed.v)]) + " and " +
                                                  std::to_string(e) + " are parallel");
    }

    std::vector<int> owner(2 * at(edge_count), -1);
    for (int v = 0; v < n; ++v) {
        auto& rot = m.rotations[at(v)];
        for (int d : rot) {
            if (d < 0 || d >= 2 * edge_count)
                throw Error(ErrorCode::DanglingReference, "rotation of vertex " + std::to_string(v) + " names a missing dart");
            if (owner[at(d)] >= 0)
                throw Error(ErrorCode::DanglingReference, "dart listed twice in rotations");
            if (m.tail(d) != v)
                throw Error(ErrorCode::DanglingReference, "dart " + std::to_string(dart_edge(d)) + "." +
                                                              std::to_string(dart_end(d)) + " is not incident with vertex " +
                                                              std::to_string(v));
            owner[at(d)] = v;
        }
        if (!rot.empty())
            std::rotate(rot.begin(), std::min_element(rot.begin(), rot.end()), rot.end());
    }
    if (std::find(owner.begin(), owner.end(), -1) != owner.end())
        throw Error(ErrorCode::DanglingReference, "some dart is missing from the rotations");

    g.walks_ = trace_walks(m, &g.side_walk_);
    const int walk_count = static_cast<int>(g.walks_.size());

    std::vector<FaceSpec> faces;
    if (spec.faces) {
        faces = *spec.faces;
    } else {
        for (int w = 0; w < walk_count; ++w)
            faces.push_back({{w}, 0});
    }
    std::vector<int> walk_face(at(walk_count), -1);
    for (std::size_t f = 0; f < faces.size(); ++f) {
        auto& fs = faces[f];
        if (fs.walks.empty())
            throw Error(ErrorCode::DanglingReference, "face " + std::to_string(f) + " has no walks");
        if (fs.genus < 0)
            throw Error(ErrorCode::EulerMismatch, "face " + std::to_string(f) + " has negative genus");
        std::sort(fs.walks.begin(), fs.walks.end());
        for (int w : fs.walks) {
            if (w < 0 || w >= walk_count)
                throw Error(ErrorCode::DanglingReference, "face " + std::to_string(f) + " names missing walk " + std::to_string(w));
            if (walk_face[at(w)] >= 0)
                throw Error(ErrorCode::DanglingReference, "walk " + std::to_string(w) + " lies in two faces");
            walk_face[at(w)] = static_cast<int>(f);
        }
    }
    for (int w = 0; w < walk_count; ++w)
        if (walk_face[at(w)] < 0)
            throw Error(ErrorCode::DanglingReference, "walk " + std::to_string(w) + " is in no face");

    std::vector<int> order(faces.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return faces[at(a)].walks[0] < faces[at(b)].walks[0]; });
    std::vector<int> renamed(faces.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        renamed[at(order[i])] = static_cast<int>(i);
        g.faces_.push_back({faces[at(order[i])].walks, faces[at(order[i])].genus, false});
    }
    g.walk_face_.resize(at(walk_count));
    for (int w = 0; w < walk_count; ++w)
        g.walk_face_[at(w)] = renamed[at(walk_face[at(w)])];

    // Euler characteristic and connectivity of the surface.
    long chi = static_cast<long>(n) - edge_count;
    DisjointSets ds(n);
    for (const auto& e : m.edges)
        ds.unite(e.u, e.v);
    for (const auto& f : g.faces_) {
        chi += 2 - f.genus - static_cast<long>(f.walks.size());
        const auto first = g.walks_[at(f.walks[0])].vertices(m)[0];
        for (int w : f.walks)
            ds.unite(first, g.walks_[at(w)].vertices(m)[0]);
    }
    for (int v = 1; v < n; ++v)
        if (ds.find(v) != ds.find(0))
            throw Error(ErrorCode::EulerMismatch, "the face structure describes a disconnected surface");
    const long genus = 2 - chi;
    if (genus < 0)
        throw Error(ErrorCode::EulerMismatch, "Euler characteristic " + std::to_string(chi) + " exceeds 2");
    if (spec.genus && *spec.genus != genus)
        throw Error(ErrorCode::EulerMismatch, "declared genus " + std::to_string(*spec.genus) + " but Euler count gives " +
                                                  std::to_string(genus));
    g.genus_ = static_cast<int>(genus);

    // Rings.
    g.vertex_ring_.assign(at(n), -1);
    g.rings_ = spec.rings;
    for (auto& r : g.rings_) {
        if (r.face < 0 || r.face >= static_cast<int>(faces.size()))
            throw Error(ErrorCode::DanglingReference, "ring names a missing face");
        r.face = renamed[at(r.face)];
        if (r.kind == RingKind::Facial) {
            r.vertex = -1;
            r.weak = false;
        } else if (r.vertex < 0 || r.vertex >= n) {
            throw Error(ErrorCode::DanglingReference, "vertex ring names a missing vertex");
        }
    }
    std::sort(g.rings_.begin(), g.rings_.end(), [](const Ring& a, const Ring& b) {
        return std::tuple(a.kind, a.face, a.vertex) < std::tuple(b.kind, b.face, b.vertex);
    });
    g.ring_edge_.assign(at(edge_count), 0);
    for (std::size_t i = 0; i < g.rings_.size(); ++i) {
        const auto& r = g.rings_[i];
        auto& face = g.faces_[at(r.face)];
        if (r.kind == RingKind::Facial) {
            if (face.ring_face)
                throw Error(ErrorCode::NotNormal, "two rings share a ring face");
            if (face.walks.size() != 1 || face.genus != 0 || !g.walks_[at(face.walks[0])].is_cycle(m))
                throw Error(ErrorCode::NotNormal, "facial ring face is not bounded by a single cycle");
            face.ring_face = true;
            for (const auto& s : g.walks_[at(face.walks[0])].steps) {
                int& slot = g.vertex_ring_[at(m.tail(s.dart))];
                if (slot >= 0)
                    throw Error(ErrorCode::NotNormal, "rings are not vertex-disjoint");
                slot = static_cast<int>(i);
                g.ring_edge_[at(dart_edge(s.dart))] = 1;
            }
        } else {
            int& slot = g.vertex_ring_[at(r.vertex)];
            if (slot >= 0)
                throw Error(ErrorCode::NotNormal, "rings are not vertex-disjoint");
            slot = static_cast<int>(i);
        }
    }
    for (const auto& r : g.rings_) {
        if (r.kind != RingKind::Vertex)
            continue;
        const auto& face = g.faces_[at(r.face)];
        if (face.ring_face)
            throw Error(ErrorCode::NotNormal, "cuff face of vertex ring " + std::to_string(r.vertex) + " is a ring face");
        bool incident = false;
        for (int w : face.walks) {
            const auto vs = g.walks_[at(w)].vertices(m);
            incident = incident || std::find(vs.begin(), vs.end(), r.vertex) != vs.end();
        }
        if (!incident)
            throw Error(ErrorCode::NotNormal, "vertex ring " + std::to_string(r.vertex) + " is not incident with its cuff face");
    }

    g.dart_pos_ = dart_positions(m);
    return g;
}

MapData oriented_map(int vertex_count, const std::vector<std::vector<int>>& faces)
{
    std::map<std::pair<int, int>, int> edge_id;
    for (const auto& f : faces)
        for (std::size_t i = 0; i < f.size(); ++i)
            edge_id.emplace(std::minmax(f[i], f[(i + 1) % f.size()]), 0);
    MapData m;
    m.vertex_count = vertex_count;
    for (auto& [key, id] : edge_id) {
        id = static_cast<int>(m.edges.size());
        m.edges.push_back({key.first, key.second, 1});
    }
    auto dart_to = [&](int a, int b) {
        const int e = edge_id.at(std::minmax(a, b));
        return make_dart(e, m.edges[at(e)].u == a ? 0 : 1);
    };

    std::map<int, int> succ;
    for (const auto& f : faces) {
        const std::size_t k = f.size();
        for (std::size_t i = 0; i < k; ++i) {
            const int prev = f[(i + k - 1) % k];
            const int cur = f[i];
            const int next = f[(i + 1) % k];
            if (!succ.emplace(dart_to(cur, prev), dart_to(cur, next)).second)
                throw Error(ErrorCode::NotNormal, "face boundaries are not consistently oriented");
        }
    }
    m.rotations.assign(at(vertex_count), {});
    std::vector<int> degree(at(vertex_count), 0);
    for (const auto& e : m.edges) {
        ++degree[at(e.u)];
        ++degree[at(e.v)];
    }
    for (int v = 0; v < vertex_count; ++v) {
        if (degree[at(v)] == 0)
            continue;
        int start = -1;
        for (const auto& [d, nd] : succ)
            if (m.tail(d) == v && (start < 0 || d < start))
                start = d;
        if (start < 0)
            throw Error(ErrorCode::NotNormal, "vertex " + std::to_string(v) + " lies on no face");
        auto& rot = m.rotations[at(v)];
        int d = start;
        do {
            rot.push_back(d);
            auto it = succ.find(d);
            if (it == succ.end())
                throw Error(ErrorCode::NotNormal, "open corner at vertex " + std::to_string(v));
            d = it->second;
        } while (d != start && static_cast<int>(rot.size()) <= degree[at(v)]);
        if (static_cast<int>(rot.size()) != degree[at(v)])
            throw Error(ErrorCode::NotNormal, "vertex " + std::to_string(v) + " is not a manifold point");
    }

    return m;
}

int directed_dart(const MapData& map, int a, int b)
{
    for (int d : map.rotations[at(a)])
        if (map.head(d) == b)
            return d;
    throw Error(ErrorCode::DanglingReference, "no edge " + std::to_string(a) + "-" + std::to_string(b));
}

EmbeddedGraph EmbeddedGraph::from_faces(int vertex_count, const std::vector<std::vector<int>>& faces,
                                        const std::vector<int>& facial_rings)
{
    EmbeddingSpec spec;
    spec.map = oriented_map(vertex_count, faces);
    std::vector<int> side_walk;
    trace_walks(spec.map, &side_walk);
    for (int fi : facial_rings) {
        const auto& f = faces[at(fi)];
        const int d = directed_dart(spec.map, f[0], f[1]);
        spec.rings.push_back({RingKind::Facial, side_walk[at(side_key(spec.map, d, 1))], -1, false});
    }
    return build(spec);
}

int EmbeddedGraph::next_dart(int dart, int orient) const
{
    const auto& rot = rotation(tail(dart));
    const int k = static_cast<int>(rot.size());
    const int p = dart_pos_[at(dart)];
    return rot[at(orient > 0 ? (p + 1) % k : (p - 1 + k) % k)];
}

int EmbeddedGraph::edge_between(int u, int v) const
{
    for (int d : rotation(u))
        if (head(d) == v)
            return dart_edge(d);
    return -1;
}

std::vector<int> EmbeddedGraph::internal_faces() const
{
    std::vector<int> out;
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f)
        if (is_internal(f))
            out.push_back(f);
    return out;
}

int EmbeddedGraph::walk_weight_length(int w) const
{
    const auto& walk = walks_[at(w)];
    if (!walk.is_lone())
        return walk.length();
    const int r = vertex_ring_at(walk.lone_vertex);
    return r < 0 ? 0 : ring_length(r);
}

int EmbeddedGraph::face_length(int f) const
{
    int total = 0;
    for (int w : faces_[at(f)].walks)
        total += walk_weight_length(w);
    return total;
}

int EmbeddedGraph::ring_length(int r) const
{
    const auto& ring = rings_[at(r)];
    if (ring.kind == RingKind::Vertex)
        return ring.weak ? 0 : 1;
    return walks_[at(faces_[at(ring.face)].walks[0])].length();
}

int EmbeddedGraph::total_ring_length() const
{
    int total = 0;
    for (int r = 0; r < static_cast<int>(rings_.size()); ++r)
        total += ring_length(r);
    return total;
}

std::vector<int> EmbeddedGraph::ring_vertices(int r) const
{
    const auto& ring = rings_[at(r)];
    if (ring.kind == RingKind::Vertex)
        return {ring.vertex};
    return walks_[at(faces_[at(ring.face)].walks[0])].vertices(map_);
}

bool EmbeddedGraph::is_ring_edge(int e) const
{
    return ring_edge_[at(e)] != 0;
}

int EmbeddedGraph::vertex_ring_at(int v) const
{
    const int r = vertex_ring_[at(v)];
    return r >= 0 && rings_[at(r)].kind == RingKind::Vertex ? r : -1;
}

int EmbeddedGraph::weak_vertex_ring_count() const
{
    return static_cast<int>(std::count_if(rings_.begin(), rings_.end(),
                                          [](const Ring& r) { return r.kind == RingKind::Vertex && r.weak; }));
}

int EmbeddedGraph::strong_vertex_ring_count() const
{
    return static_cast<int>(std::count_if(rings_.begin(), rings_.end(),
                                          [](const Ring& r) { return r.kind == RingKind::Vertex && !r.weak; }));
}

FaceClass EmbeddedGraph::face_class(int f) const
{
    const auto& face = faces_[at(f)];
    if (face.ring_face)
        throw Error(ErrorCode::RingFace, "face " + std::to_string(f) + " is a ring face");
    if (face.genus != 0 || face.walks.size() != 1)
        return FaceClass::Neither;
    return walks_[at(face.walks[0])].is_cycle(map_) ? FaceClass::Closed2Cell : FaceClass::Open2Cell;
}

Graph EmbeddedGraph::underlying() const
{
    Graph out(vertex_count());
    for (const auto& e : map_.edges)
        out.add_edge(e.u, e.v);
    return out;
}

EmbeddingSpec EmbeddedGraph::spec() const
{
    EmbeddingSpec s;
    s.map = map_;
    std::vector<FaceSpec> faces;
    for (const auto& f : faces_)
        faces.push_back({f.walks, f.genus});
    s.faces = std::move(faces);
    s.rings = rings_;
    s.genus = genus_;
    return s;
}

std::optional<int> find_walk(const EmbeddedGraph& g, const std::vector<int>& cycle)
{
    const std::size_t k = cycle.size();
    for (int w = 0; w < static_cast<int>(g.walks().size()); ++w) {
        const auto vs = g.walks()[at(w)].vertices(g.map());
        if (vs.size() != k || g.walks()[at(w)].is_lone() != (k == 1 && g.degree(cycle[0]) == 0))
            continue;
        for (std::size_t shift = 0; shift < k; ++shift) {
            bool fwd = true;
            bool bwd = true;
            for (std::size_t i = 0; i < k; ++i) {
                fwd = fwd && vs[(shift + i) % k] == cycle[i];
                bwd = bwd && vs[(shift + k - i) % k] == cycle[i];
            }
            if (fwd || bwd)
                return w;
        }
    }
    return std::nullopt;
}

FaceClass face_class(const EmbeddedGraph& g, int face)
{
    return g.face_class(face);
}

std::string to_string(FaceClass c)
{
    switch (c) {
    case FaceClass::Open2Cell: return "open-2-cell";
    case FaceClass::Closed2Cell: return "closed-2-cell";
    case FaceClass::Neither: return "neither";
    }
    return "neither";
}

} // namespace critsurf
