#include <critsurf/emg.hpp>

#include <critsurf/error.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace critsurf {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == sep || (sep == ' ' && line[i] == '\t')))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != sep && !(sep == ' ' && line[j] == '\t'))
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

struct LineParser {
    int line_no = 0;

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
    }

    int integer(std::string_view tok) const
    {
        int value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            fail("expected an integer, got '" + std::string(tok) + "'");
        return value;
    }

    int dart(std::string_view tok) const
    {
        const auto dot = tok.find('.');
        if (dot == std::string_view::npos)
            fail("dart must be written edge.end");
        const int end = integer(tok.substr(dot + 1));
        if (end != 0 && end != 1)
            fail("dart end must be 0 or 1");
        return make_dart(integer(tok.substr(0, dot)), end);
    }
};

} // namespace

EmbeddedGraph parse_emg(std::string_view text)
{
    LineParser p;
    EmbeddingSpec spec;
    bool header = false;
    int vertex_count = -1;
    int edge_count = -1;
    std::vector<char> edge_seen;
    std::vector<char> rot_seen;
    std::vector<std::pair<int, FaceSpec>> faces;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++p.line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto tok = split(line, ' ');
        if (tok.empty())
            continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "EMG" || tok[1] != "1")
                p.fail("missing 'EMG 1' header");
            header = true;
            continue;
        }
        const auto& kw = tok[0];
        if (kw == "V") {
            if (tok.size() != 2 || vertex_count >= 0)
                p.fail("malformed V line");
            vertex_count = p.integer(tok[1]);
            if (vertex_count < 0)
                p.fail("negative vertex count");
            spec.map.vertex_count = vertex_count;
            spec.map.rotations.assign(static_cast<std::size_t>(vertex_count), {});
            rot_seen.assign(static_cast<std::size_t>(vertex_count), 0);
        } else if (kw == "E") {
            if (tok.size() != 2 || edge_count >= 0)
                p.fail("malformed E line");
            edge_count = p.integer(tok[1]);
            if (edge_count < 0)
                p.fail("negative edge count");
            spec.map.edges.assign(static_cast<std::size_t>(edge_count), {});
            edge_seen.assign(static_cast<std::size_t>(edge_count), 0);
        } else if (kw == "genus") {
            if (tok.size() != 2 || spec.genus)
                p.fail("malformed genus line");
            spec.genus = p.integer(tok[1]);
        } else if (kw == "edge") {
            if (tok.size() != 5 || edge_count < 0)
                p.fail("malformed edge line (E must come first)");
            const int id = p.integer(tok[1]);
            if (id < 0 || id >= edge_count || edge_seen[static_cast<std::size_t>(id)])
                p.fail("edge id out of range or repeated");
            edge_seen[static_cast<std::size_t>(id)] = 1;
            if (tok[4] != "+" && tok[4] != "-")
                p.fail("edge sign must be + or -");
            spec.map.edges[static_cast<std::size_t>(id)] = {p.integer(tok[2]), p.integer(tok[3]), tok[4] == "+" ? 1 : -1};
        } else if (kw == "rot") {
            if (tok.size() < 2 || vertex_count < 0)
                p.fail("malformed rot line (V must come first)");
            const int v = p.integer(tok[1]);
            if (v < 0 || v >= vertex_count || rot_seen[static_cast<std::size_t>(v)])
                p.fail("rotation vertex out of range or repeated");
            rot_seen[static_cast<std::size_t>(v)] = 1;
            for (std::size_t i = 2; i < tok.size(); ++i)
                spec.map.rotations[static_cast<std::size_t>(v)].push_back(p.dart(tok[i]));
        } else if (kw == "face") {
            if (tok.size() != 6 || tok[2] != "genus" || tok[4] != "walks")
                p.fail("malformed face line");
            FaceSpec fs;
            fs.genus = p.integer(tok[3]);
            for (auto w : split(tok[5], ','))
                fs.walks.push_back(p.integer(w));
            faces.emplace_back(p.integer(tok[1]), std::move(fs));
        } else if (kw == "ring") {
            if (tok.size() == 3 && tok[1] == "facial") {
                spec.rings.push_back({RingKind::Facial, p.integer(tok[2]), -1, false});
            } else if ((tok.size() == 5 || tok.size() == 6) && tok[1] == "vertex") {
                const bool weak = tok.size() == 6;
                if ((weak && tok[3] != "weak") || tok[tok.size() - 2] != "face")
                    p.fail("malformed vertex ring line");
                spec.rings.push_back({RingKind::Vertex, p.integer(tok.back()), p.integer(tok[2]), weak});
            } else {
                p.fail("malformed ring line");
            }
        } else {
            p.fail("unknown keyword '" + std::string(kw) + "'");
        }
    }
    if (!header)
        throw Error(ErrorCode::ParseError, "missing 'EMG 1' header");
    if (vertex_count < 0 || edge_count < 0)
        throw Error(ErrorCode::ParseError, "V and E lines are required");
    for (char seen : edge_seen)
        if (!seen)
            throw Error(ErrorCode::ParseError, "not every edge id is defined");
    if (!faces.empty()) {
        std::vector<FaceSpec> ordered(faces.size());
        std::vector<char> used(faces.size(), 0);
        for (auto& [id, fs] : faces) {
            if (id < 0 || id >= static_cast<int>(faces.size()) || used[static_cast<std::size_t>(id)])
                throw Error(ErrorCode::ParseError, "face ids must be 0..F-1 without repeats");
            used[static_cast<std::size_t>(id)] = 1;
            ordered[static_cast<std::size_t>(id)] = std::move(fs);
        }
        spec.faces = std::move(ordered);
    }
    return EmbeddedGraph::build(spec);
}

std::string write_emg(const EmbeddedGraph& g)
{
    std::ostringstream out;
    out << "EMG 1\n";
    out << "V " << g.vertex_count() << "\n";
    out << "E " << g.edge_count() << "\n";
    out << "genus " << g.genus() << "\n";
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        out << "edge " << e << ' ' << ed.u << ' ' << ed.v << ' ' << (ed.sign > 0 ? '+' : '-') << "\n";
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        out << "rot " << v;
        for (int d : g.rotation(v))
            out << ' ' << dart_edge(d) << '.' << dart_end(d);
        out << "\n";
    }
    for (std::size_t f = 0; f < g.faces().size(); ++f) {
        const auto& face = g.faces()[f];
        out << "face " << f << " genus " << face.genus << " walks ";
        for (std::size_t i = 0; i < face.walks.size(); ++i)
            out << (i ? "," : "") << face.walks[i];
        out << "\n";
    }
    for (const auto& r : g.rings()) {
        if (r.kind == RingKind::Facial)
            out << "ring facial " << r.face << "\n";
        else
            out << "ring vertex " << r.vertex << (r.weak ? " weak" : "") << " face " << r.face << "\n";
    }
    return out.str();
}

EmbeddedGraph read_emg_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_emg(buf.str());
}

void write_emg_file(const std::filesystem::path& path, const EmbeddedGraph& g)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::ParseError, "cannot write " + path.string());
    out << write_emg(g);
}

} // namespace critsurf
