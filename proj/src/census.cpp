#include <critsurf/census.hpp>

#include <critsurf/coloring.hpp>
#include <critsurf/emg.hpp>
#include <critsurf/error.hpp>

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace critsurf {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

std::vector<int> dart_positions(const MapData& m)
{
    std::vector<int> pos(2 * m.edges.size(), -1);
    for (const auto& rot : m.rotations)
        for (std::size_t i = 0; i < rot.size(); ++i)
            pos[at(rot[i])] = static_cast<int>(i);
    return pos;
}

std::vector<int> code_from(const MapData& m, const std::vector<int>& pos, int root, int orient)
{
    const int n = m.vertex_count;
    std::vector<int> label(at(n), -1), frame(at(n), 0), start(at(n), -1);
    std::vector<int> order;
    std::vector<int> code;
    code.reserve(4 * m.edges.size() + at(n));
    const int r = m.tail(root);
    label[at(r)] = 0;
    frame[at(r)] = orient;
    start[at(r)] = root;
    order.push_back(r);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int v = order[i];
        const auto& rot = m.rotations[at(v)];
        const int deg = static_cast<int>(rot.size());
        code.push_back(deg);
        int p = pos[at(start[at(v)])];
        for (int j = 0; j < deg; ++j) {
            const int d = rot[at(p)];
            const int h = m.head(d);
            const int s = m.sign(d);
            if (label[at(h)] < 0) {
                label[at(h)] = static_cast<int>(order.size());
                frame[at(h)] = frame[at(v)] * s;
                start[at(h)] = dart_reverse(d);
                order.push_back(h);
            }
            code.push_back(label[at(h)]);
            code.push_back(frame[at(v)] * s * frame[at(h)]);
            p = frame[at(v)] > 0 ? (p + 1) % deg : (p - 1 + deg) % deg;
        }
    }
    return code;
}

std::string code_key(const std::vector<int>& code)
{
    std::string key(code.size(), '\0');
    for (std::size_t i = 0; i < code.size(); ++i)
        key[i] = static_cast<char>(code[i] + 2);
    return key;
}

int map_genus(const MapData& m, int walks)
{
    return 2 - m.vertex_count + static_cast<int>(m.edges.size()) - walks;
}

// Shortest path lengths from src in the underlying graph.
std::vector<int> distances(const MapData& m, int src)
{
    std::vector<int> dist(at(m.vertex_count), -1);
    std::deque<int> queue{src};
    dist[at(src)] = 0;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int d : m.rotations[at(v)]) {
            const int h = m.head(d);
            if (dist[at(h)] < 0) {
                dist[at(h)] = dist[at(v)] + 1;
                queue.push_back(h);
            }
        }
    }
    return dist;
}

struct Corner {
    int v = 0;
    int pos = 0; ///< insert before rotations[v][pos]
};

// Path a = p0 ... pL = b through L-1 new vertices; the last edge carries `sign`.
MapData add_ear(const MapData& m, Corner a, Corner b, int length, int sign)
{
    MapData out = m;
    std::vector<int> path{a.v};
    for (int t = 1; t < length; ++t) {
        path.push_back(out.vertex_count++);
        out.rotations.emplace_back();
    }
    path.push_back(b.v);
    const int first = static_cast<int>(out.edges.size());
    for (int t = 0; t < length; ++t)
        out.edges.push_back({path[at(t)], path[at(t + 1)], t == length - 1 ? sign : 1});
    for (int t = 1; t < length; ++t)
        out.rotations[at(path[at(t)])] = {make_dart(first + t - 1, 1), make_dart(first + t, 0)};
    auto& ra = out.rotations[at(a.v)];
    ra.insert(ra.begin() + a.pos, make_dart(first, 0));
    auto& rb = out.rotations[at(b.v)];
    rb.insert(rb.begin() + b.pos, make_dart(first + length - 1, 1));
    return out;
}

MapData cycle_map(int k, int last_sign)
{
    MapData m;
    m.vertex_count = k;
    m.rotations.resize(at(k));
    for (int i = 0; i < k; ++i)
        m.edges.push_back({i, (i + 1) % k, i == k - 1 ? last_sign : 1});
    for (int i = 0; i < k; ++i)
        m.rotations[at(i)] = {make_dart((i - 1 + k) % k, 1), make_dart(i, 0)};
    return m;
}

struct Grower {
    int girth = 4;
    int n_max = 0;
    int max_genus = 0;
    bool orientable_only = true;
    bool disk = false; ///< ears only inside non-outer faces, genus 0
    std::unordered_set<std::string> seen;
    std::vector<std::pair<std::string, MapData>> found;

    std::string key(const MapData& m) const { return code_key(canonical_code(m, disk ? 0 : -1)); }

    void visit(const MapData& m)
    {
        auto k = key(m);
        if (!seen.insert(k).second)
            return;
        found.emplace_back(std::move(k), m);
    }

    void run(const std::vector<MapData>& seeds)
    {
        for (const auto& s : seeds)
            visit(s);
        for (std::size_t i = 0; i < found.size(); ++i) {
            const MapData m = found[i].second;
            expand(m);
        }
    }

    void expand(const MapData& m)
    {
        const int spare = n_max - m.vertex_count;
        std::vector<Corner> corners;
        for (int v = 0; v < m.vertex_count; ++v)
            for (int p = 0; p < static_cast<int>(m.rotations[at(v)].size()); ++p)
                corners.push_back({v, p});
        std::vector<int> side_walk;
        std::vector<int> corner_walk;
        int outer = -1;
        if (disk) {
            trace_walks(m, &side_walk);
            outer = side_walk[at(side_key(m, make_dart(0, 0), 1))];
            for (const auto& c : corners)
                corner_walk.push_back(side_walk[at(side_key(m, m.rotations[at(c.v)][at(c.pos)], 1))]);
        }
        std::vector<std::vector<int>> dist(at(m.vertex_count));
        for (std::size_t i = 0; i < corners.size(); ++i) {
            if (disk && corner_walk[i] == outer)
                continue;
            const Corner a = corners[i];
            for (std::size_t j = 0; j < corners.size(); ++j) {
                const Corner b = corners[j];
                if (b.v <= a.v)
                    continue;
                if (disk && corner_walk[j] != corner_walk[i])
                    continue;
                if (dist[at(a.v)].empty())
                    dist[at(a.v)] = distances(m, a.v);
                const int d = dist[at(a.v)][at(b.v)];
                for (int len = std::max(1, girth - d); len <= spare + 1; ++len)
                    for (int sign : {1, -1}) {
                        if (sign < 0 && orientable_only)
                            continue;
                        MapData next = add_ear(m, a, b, len, sign);
                        const int walks = static_cast<int>(trace_walks(next).size());
                        const int g = map_genus(next, walks);
                        if (g > max_genus || (disk && g != 0))
                            continue;
                        if (orientable_only && !rotation_system_orientable(next))
                            continue;
                        visit(next);
                    }
            }
        }
    }
};

bool min_internal_degree_3(const MapData& m, int ring_vertices)
{
    for (int v = ring_vertices; v < m.vertex_count; ++v)
        if (m.rotations[at(v)].size() < 3)
            return false;
    return true;
}

std::string catalog_name(int r, int k) { return "s" + std::to_string(r) + "_" + std::to_string(k); }

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

std::string to_string(const Multiset& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

Multiset parse_multiset(const std::string& text)
{
    const std::string t = trim(text);
    if (t.size() < 2 || t.front() != '{' || t.back() != '}')
        throw Error(ErrorCode::ParseError, "multiset must look like {5,6}: " + text);
    Multiset out;
    std::stringstream in(t.substr(1, t.size() - 2));
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad multiset element '" + item + "'");
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Multiset face_multiset(const EmbeddedGraph& g)
{
    Multiset out;
    for (int f : g.internal_faces())
        if (g.face_length(f) >= 5)
            out.push_back(g.face_length(f));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> canonical_code(const MapData& m, int outer_dart)
{
    const auto pos = dart_positions(m);
    std::vector<std::pair<int, int>> roots;
    if (outer_dart >= 0) {
        // Steps of the walk through (outer_dart, +1), in both directions.
        std::vector<int> side_walk;
        const auto walks = trace_walks(m, &side_walk);
        const auto& w = walks[at(side_walk[at(side_key(m, outer_dart, 1))])];
        const int len = w.length();
        for (int i = 0; i < len; ++i) {
            roots.emplace_back(w.steps[at(i)].dart, w.steps[at(i)].orient);
            roots.emplace_back(dart_reverse(w.steps[at(i)].dart), -w.steps[at((i + 1) % len)].orient);
        }
    } else {
        for (int d = 0; d < 2 * static_cast<int>(m.edges.size()); ++d) {
            roots.emplace_back(d, 1);
            roots.emplace_back(d, -1);
        }
    }
    // Only darts with the largest (tail degree, head degree) can start the least code.
    auto degrees = [&](int d) {
        return std::pair{m.rotations[at(m.tail(d))].size(), m.rotations[at(m.head(d))].size()};
    };
    std::pair<std::size_t, std::size_t> top{0, 0};
    for (const auto& root : roots)
        top = std::max(top, degrees(root.first));
    std::vector<int> best;
    for (const auto& [d, o] : roots) {
        if (degrees(d) != top)
            continue;
        auto code = code_from(m, pos, d, o);
        if (best.empty() || code < best)
            best = std::move(code);
    }
    return best;
}

bool Catalog::contains(const Multiset& s) const
{
    return std::any_of(entries.begin(), entries.end(), [&](const Entry& e) { return e.lengths == s; });
}

std::string Catalog::to_text() const
{
    std::ostringstream out;
    out << "# S_{" << r << "," << k << "} exhaustive_up_to=" << exhaustive_up_to << " graphs=" << graphs.size()
        << " entries=" << entries.size() << "\n";
    for (const auto& e : entries)
        out << to_string(e.lengths) << " | " << (e.witness_path.empty() ? "-" : e.witness_path) << " | "
            << exhaustive_up_to << "\n";
    return out.str();
}

Catalog enumerate_disk(int r, int k, int n_max, int jobs)
{
    if (r != 4 && r != 5)
        throw Error(ErrorCode::DomainError, "girth bound must be 4 or 5");
    if (k < 4 || n_max < k)
        throw Error(ErrorCode::DomainError, "need k >= 4 and n_max >= k");
    Catalog cat;
    cat.r = r;
    cat.k = k;
    cat.exhaustive_up_to = n_max;
    if (k < r)
        return cat;

    Grower grow;
    grow.girth = r;
    grow.n_max = n_max;
    grow.disk = true;
    grow.run({cycle_map(k, 1)});
    cat.maps_examined = static_cast<long>(grow.found.size());

    std::vector<std::pair<std::string, MapData>> candidates;
    for (auto& f : grow.found)
        if (min_internal_degree_3(f.second, k))
            candidates.push_back(std::move(f));
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<std::optional<EmbeddedGraph>> graphs(candidates.size());
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(candidates.size())));
    auto work = [&](int w) {
        for (std::size_t i = at(w); i < candidates.size(); i += at(workers)) {
            const auto& m = candidates[i].second;
            std::vector<int> side_walk;
            trace_walks(m, &side_walk);
            EmbeddingSpec spec;
            spec.map = m;
            spec.rings.push_back({RingKind::Facial, side_walk[at(side_key(m, make_dart(0, 0), 1))], -1, false});
            auto g = EmbeddedGraph::build(spec);
            if (is_R_critical(g).verdict)
                graphs[i] = std::move(g);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        for (int w = 0; w < workers; ++w)
            threads.emplace_back(work, w);
    }

    std::map<Multiset, int> first;
    for (auto& g : graphs) {
        if (!g)
            continue;
        const auto s = face_multiset(*g);
        first.emplace(s, static_cast<int>(cat.graphs.size()));
        cat.graphs.push_back(std::move(*g));
    }
    for (const auto& [s, id] : first)
        cat.entries.push_back({s, id, {}});
    return cat;
}

void write_catalog(const std::filesystem::path& dir, Catalog& c)
{
    std::filesystem::create_directories(dir);
    const std::string base = catalog_name(c.r, c.k);
    for (std::size_t i = 0; i < c.entries.size(); ++i) {
        auto& e = c.entries[i];
        if (e.witness < 0)
            continue;
        e.witness_path = base + "_w" + std::to_string(i) + ".emg";
        write_emg_file(dir / e.witness_path, c.graphs[at(e.witness)]);
    }
    std::ofstream out(dir / (base + ".txt"));
    if (!out)
        throw Error(ErrorCode::ParseError, "cannot write catalog in " + dir.string());
    out << c.to_text();
}

Catalog read_catalog(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot read " + file.string());
    Catalog c;
    std::string line;
    bool header = false;
    int exhaustive = -1;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            int r = 0, k = 0;
            if (std::sscanf(line.c_str(), "# S_{%d,%d} exhaustive_up_to=%d", &r, &k, &c.exhaustive_up_to) == 3) {
                c.r = r;
                c.k = k;
                header = true;
            }
            continue;
        }
        const auto p1 = line.find('|');
        const auto p2 = line.find('|', p1 == std::string::npos ? p1 : p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw Error(ErrorCode::ParseError, "catalog line needs three fields: " + line);
        Catalog::Entry e;
        e.lengths = parse_multiset(line.substr(0, p1));
        e.witness_path = trim(line.substr(p1 + 1, p2 - p1 - 1));
        const int n = std::atoi(trim(line.substr(p2 + 1)).c_str());
        if (exhaustive >= 0 && n != exhaustive)
            throw Error(ErrorCode::ParseError, "catalog lines disagree on exhaustive_up_to");
        exhaustive = n;
        c.entries.push_back(std::move(e));
    }
    if (!header)
        throw Error(ErrorCode::ParseError, "catalog header missing in " + file.string());
    if (exhaustive >= 0 && exhaustive != c.exhaustive_up_to)
        throw Error(ErrorCode::ParseError, "catalog header disagrees with its lines");
    std::sort(c.entries.begin(), c.entries.end(),
              [](const auto& a, const auto& b) { return a.lengths < b.lengths; });
    return c;
}

Refinement is_refinement(const Multiset& s2_in, const Multiset& s1_in, const CatalogSet& catalogs)
{
    Multiset s1 = s1_in, s2 = s2_in;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    Refinement res;
    int top = 0;
    for (int x : s1)
        top = std::max(top, x);
    for (int x : s2)
        top = std::max(top, x);
    const std::size_t max_size = s2.size() + 2;
    constexpr std::size_t max_states = 200000;

    std::map<Multiset, Multiset> parent;
    parent.emplace(s1, Multiset{});
    std::deque<Multiset> queue{s1};
    auto finish = [&](const Multiset& last) {
        res.refines = true;
        for (Multiset cur = last;; cur = parent.at(cur)) {
            res.chain.push_back(cur);
            if (cur == s1)
                break;
        }
        std::reverse(res.chain.begin(), res.chain.end());
        return res;
    };
    if (s1 == s2)
        return finish(s1);

    while (!queue.empty()) {
        const Multiset cur = queue.front();
        queue.pop_front();
        std::set<int> distinct(cur.begin(), cur.end());
        for (int k : distinct)
            for (int kk : {k, k + 2}) {
                const auto it = catalogs.find(kk);
                if (it == catalogs.end() || it->second == nullptr || it->second->r != 4)
                    throw Error(ErrorCode::CatalogIncomplete,
                                "refining " + std::to_string(k) + " needs S_{4," + std::to_string(kk) + "}");
                for (const auto& z : it->second->entries) {
                    Multiset next = cur;
                    next.erase(std::find(next.begin(), next.end(), k));
                    next.insert(next.end(), z.lengths.begin(), z.lengths.end());
                    std::sort(next.begin(), next.end());
                    if (next.size() > max_size || (!next.empty() && next.back() > top)) {
                        res.truncated = true;
                        continue;
                    }
                    if (!parent.emplace(next, cur).second)
                        continue;
                    if (next == s2)
                        return finish(next);
                    if (parent.size() > max_states) {
                        res.truncated = true;
                        return res;
                    }
                    queue.push_back(std::move(next));
                }
            }
    }
    return res;
}

std::string to_string(Surface s)
{
    switch (s) {
    case Surface::Sphere: return "sphere";
    case Surface::ProjectivePlane: return "projective-plane";
    case Surface::Torus: return "torus";
    case Surface::KleinBottle: return "klein-bottle";
    }
    return "?";
}

Surface parse_surface(const std::string& name)
{
    for (auto s : {Surface::Sphere, Surface::ProjectivePlane, Surface::Torus, Surface::KleinBottle})
        if (to_string(s) == name)
            return s;
    if (name == "plane")
        return Surface::Sphere;
    throw Error(ErrorCode::ParseError, "unknown surface '" + name + "'");
}

int euler_genus(Surface s)
{
    switch (s) {
    case Surface::Sphere: return 0;
    case Surface::ProjectivePlane: return 1;
    default: return 2;
    }
}

bool orientable(Surface s) { return s == Surface::Sphere || s == Surface::Torus; }

std::vector<EmbeddedGraph> enumerate_surface(Surface s, int n_max, const SurfaceConstraints& c)
{
    if (c.girth < 3)
        throw Error(ErrorCode::DomainError, "girth bound must be at least 3");
    Grower grow;
    grow.girth = c.girth;
    grow.n_max = n_max;
    grow.max_genus = euler_genus(s);
    grow.orientable_only = orientable(s);
    std::vector<MapData> seeds;
    for (int len = c.girth; len <= n_max; ++len) {
        seeds.push_back(cycle_map(len, 1));
        if (!grow.orientable_only)
            seeds.push_back(cycle_map(len, -1));
    }
    grow.run(seeds);

    std::vector<std::pair<std::string, MapData>> keep;
    for (auto& f : grow.found) {
        const auto& m = f.second;
        const auto walks = trace_walks(m);
        if (map_genus(m, static_cast<int>(walks.size())) != euler_genus(s))
            continue;
        if (rotation_system_orientable(m) != orientable(s))
            continue;
        if (c.quadrangulation &&
            !std::all_of(walks.begin(), walks.end(), [](const Walk& w) { return w.length() == 4; }))
            continue;
        keep.push_back(std::move(f));
    }
    std::sort(keep.begin(), keep.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<EmbeddedGraph> out;
    out.reserve(keep.size());
    for (const auto& [key, m] : keep) {
        EmbeddingSpec spec;
        spec.map = m;
        out.push_back(EmbeddedGraph::build(spec));
    }
    return out;
}

std::optional<EmbeddedGraph> find_embedding(const Graph& g, Surface s, long max_systems)
{
    if (!g.connected())
        throw Error(ErrorCode::Unsupported, "find_embedding needs a connected graph");
    MapData m;
    m.vertex_count = g.order();
    m.rotations.resize(at(g.order()));
    std::vector<std::vector<int>> darts(at(g.order()));
    for (const auto& [a, b] : g.edges()) {
        const int e = static_cast<int>(m.edges.size());
        m.edges.push_back({a, b, 1});
        darts[at(a)].push_back(make_dart(e, 0));
        darts[at(b)].push_back(make_dart(e, 1));
    }
    // Edges outside a BFS tree may twist; tree edges can be switched to +.
    std::vector<int> twistable;
    if (!orientable(s)) {
        std::vector<char> seen(at(g.order()), 0), tree(m.edges.size(), 0);
        std::deque<int> queue{0};
        seen[0] = 1;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int d : darts[at(v)]) {
                const int h = m.head(d);
                if (!seen[at(h)]) {
                    seen[at(h)] = 1;
                    tree[at(dart_edge(d))] = 1;
                    queue.push_back(h);
                }
            }
        }
        for (std::size_t e = 0; e < tree.size(); ++e)
            if (!tree[e])
                twistable.push_back(static_cast<int>(e));
    }
    // Each rotation keeps its first dart in place and permutes the rest.
    for (int v = 0; v < g.order(); ++v)
        m.rotations[at(v)] = darts[at(v)];
    const int target = euler_genus(s);
    const std::size_t signs = std::size_t{1} << twistable.size();
    long tried = 0;
    for (;;) {
        for (std::size_t mask = 0; mask < signs; ++mask) {
            if (++tried > max_systems)
                return std::nullopt;
            for (std::size_t i = 0; i < twistable.size(); ++i)
                m.edges[at(twistable[i])].sign = (mask >> i & 1) ? -1 : 1;
            const int walks = static_cast<int>(trace_walks(m).size());
            if (map_genus(m, walks) == target && rotation_system_orientable(m) == orientable(s)) {
                EmbeddingSpec spec;
                spec.map = m;
                return EmbeddedGraph::build(spec);
            }
        }
        int v = g.order() - 1;
        for (; v >= 0; --v) {
            auto& rot = m.rotations[at(v)];
            if (rot.size() > 2 && std::next_permutation(rot.begin() + 1, rot.end()))
                break;
        }
        if (v < 0)
            return std::nullopt;
    }
}

EmbeddedGraph groetzsch_projective()
{
    static constexpr const char* text = R"(EMG 1
V 11
E 20
genus 1
edge 0 0 1 +
edge 1 1 2 +
edge 2 2 3 +
edge 3 3 0 +
edge 4 0 4 +
edge 5 4 5 +
edge 6 5 1 +
edge 7 0 6 +
edge 8 6 7 +
edge 9 7 8 +
edge 10 8 1 -
edge 11 2 9 +
edge 12 9 10 +
edge 13 10 3 +
edge 14 2 7 -
edge 15 4 7 +
edge 16 4 9 -
edge 17 5 10 -
edge 18 6 10 +
edge 19 8 10 +
rot 0 0.0 4.0 7.0 3.1
rot 1 0.1 1.0 10.1 6.1
rot 2 1.1 2.0 11.0 14.0
rot 3 2.1 3.0 13.1
rot 4 4.1 5.0 16.0 15.0
rot 5 5.1 6.0 17.0
rot 6 7.1 8.0 18.0
rot 7 8.1 15.1 14.1 9.0
rot 8 9.1 10.0 19.0
rot 9 11.1 12.0 16.1
rot 10 12.1 13.0 18.1 19.1 17.1
face 0 genus 0 walks 0
face 1 genus 0 walks 1
face 2 genus 0 walks 2
face 3 genus 0 walks 3
face 4 genus 0 walks 4
face 5 genus 0 walks 5
face 6 genus 0 walks 6
face 7 genus 0 walks 7
face 8 genus 0 walks 8
face 9 genus 0 walks 9
)";
    return parse_emg(text);
}

} // namespace critsurf
