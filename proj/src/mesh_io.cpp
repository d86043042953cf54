#include "burnback/mesh.hpp"

#include "burnback/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace burnback {

namespace {

struct Line {
    int number;
    std::vector<std::string_view> fields;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
            if (j > i) line.fields.push_back(raw.substr(i, j - i));
            i = j;
        }
        if (!line.fields.empty()) lines.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

double to_double(std::string_view s, int line) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ParseError("expected a number, got '" + std::string(s) + "'", line);
    }
    return v;
}

int to_int(std::string_view s, int line) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ParseError("expected an integer, got '" + std::string(s) + "'", line);
    }
    return v;
}

void expect_fields(const Line& l, std::size_t lo, std::size_t hi, const char* what) {
    if (l.fields.size() < lo || l.fields.size() > hi) {
        throw ParseError(std::string("malformed ") + what + " record", l.number);
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Mesh load_mesh(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw ParseError("empty mesh document", 0);

    const Line& head = lines.front();
    expect_fields(head, 3, 3, "header");
    const int ntri = to_int(head.fields[0], head.number);
    const int nnode = to_int(head.fields[1], head.number);
    const int nsym = to_int(head.fields[2], head.number);
    if (ntri < 0 || nnode < 0 || nsym < 0) throw ParseError("negative count in header", head.number);
    const std::size_t expected = 1 + static_cast<std::size_t>(ntri) + nnode + nsym;
    if (lines.size() != expected) {
        const int at = lines.size() > expected ? lines[expected].number : lines.back().number;
        throw ParseError("expected " + std::to_string(expected) + " records, found " +
                             std::to_string(lines.size()),
                         at);
    }

    Mesh m;
    std::size_t li = 1;
    for (int s = 0; s < nsym; ++s, ++li) {
        const Line& l = lines[li];
        expect_fields(l, 4, 4, "symmetry line");
        m.symmetry_lines.push_back({{to_double(l.fields[0], l.number), to_double(l.fields[1], l.number)},
                                    {to_double(l.fields[2], l.number), to_double(l.fields[3], l.number)}});
    }
    for (int i = 0; i < nnode; ++i, ++li) {
        const Line& l = lines[li];
        expect_fields(l, 3, 4, "node");
        m.nodes.push_back({to_double(l.fields[0], l.number), to_double(l.fields[1], l.number)});
        const int mk = to_int(l.fields[2], l.number);
        if (mk < 0 || mk > 3) throw ParseError("marker must be 0..3", l.number);
        const auto marker = static_cast<Marker>(mk);
        int ref = -1;
        if (l.fields.size() == 4) ref = to_int(l.fields[3], l.number);
        if (marker == Marker::Symmetry && ref < 0) {
            throw ParseError("SYMMETRY node needs a symmetry line index", l.number);
        }
        if (marker != Marker::Symmetry && ref >= 0) {
            throw ParseError("only SYMMETRY nodes take a symmetry line index", l.number);
        }
        m.markers.push_back(marker);
        m.symmetry_ref.push_back(ref);
    }
    for (int t = 0; t < ntri; ++t, ++li) {
        const Line& l = lines[li];
        expect_fields(l, 3, 3, "triangle");
        m.triangles.push_back({to_int(l.fields[0], l.number), to_int(l.fields[1], l.number),
                               to_int(l.fields[2], l.number)});
    }
    validate(m);
    return m;
}

std::string save_mesh(const Mesh& m) {
    std::string out;
    out += std::to_string(m.triangle_count()) + " " + std::to_string(m.node_count()) + " " +
           std::to_string(m.symmetry_lines.size()) + "\n";
    for (const auto& s : m.symmetry_lines) {
        out += fmt17(s.point.x) + " " + fmt17(s.point.y) + " " + fmt17(s.direction.x) + " " +
               fmt17(s.direction.y) + "\n";
    }
    for (int i = 0; i < m.node_count(); ++i) {
        out += fmt17(m.nodes[i].x) + " " + fmt17(m.nodes[i].y) + " " +
               std::to_string(static_cast<int>(m.markers[i]));
        if (m.markers[i] == Marker::Symmetry) out += " " + std::to_string(m.symmetry_ref[i]);
        out += "\n";
    }
    for (const auto& t : m.triangles) {
        out += std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
    }
    return out;
}

Mesh read_mesh_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("mesh: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_mesh(ss.str());
}

void write_mesh_file(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("mesh: cannot write " + path);
    out << save_mesh(mesh);
    if (!out) throw std::runtime_error("mesh: write failed for " + path);
}

} // namespace burnback
