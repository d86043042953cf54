#include "burnback/postproc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace burnback::post {

namespace {

void put(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out += buf;
}

void put_svg(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    out += buf;
}

struct Box {
    double x0 = std::numeric_limits<double>::infinity();
    double y0 = std::numeric_limits<double>::infinity();
    double x1 = -std::numeric_limits<double>::infinity();
    double y1 = -std::numeric_limits<double>::infinity();

    void add(Vec2 p) {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    bool empty() const { return !(x1 >= x0); }
};

// Model coordinates with y flipped so that +y points up on screen.
std::string svg_open(Box box, double width_px) {
    if (box.empty()) box = {0.0, 0.0, 1.0, 1.0};
    const double w = std::max(box.x1 - box.x0, 1e-12);
    const double h = std::max(box.y1 - box.y0, 1e-12);
    const double pad = 0.02 * std::max(w, h);
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" ";
    out += "width=\"";
    put_svg(out, width_px);
    out += "\" height=\"";
    put_svg(out, width_px * (h + 2 * pad) / (w + 2 * pad));
    out += "\" viewBox=\"";
    put_svg(out, box.x0 - pad);
    out += ' ';
    put_svg(out, -box.y1 - pad);
    out += ' ';
    put_svg(out, w + 2 * pad);
    out += ' ';
    put_svg(out, h + 2 * pad);
    out += "\">\n<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linejoin=\"round\">\n";
    return out;
}

void svg_points(std::string& out, std::span<const Vec2> pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        put_svg(out, pts[i].x);
        out += ',';
        put_svg(out, pts[i].y);
    }
}

} // namespace

std::string curves_csv(const BurnCurves& c) {
    std::string out = c.grain_length ? "tau,P_b,A_p,A_eq,A_b\n" : "tau,P_b,A_p,A_eq\n";
    for (std::size_t k = 0; k < c.tau.size(); ++k) {
        put(out, c.tau[k]);
        out += ',';
        put(out, c.perimeter[k]);
        out += ',';
        put(out, c.port_area[k]);
        out += ',';
        put(out, c.equivalent[k]);
        if (c.grain_length) {
            out += ',';
            put(out, c.perimeter[k] * *c.grain_length);
        }
        out += '\n';
    }
    return out;
}

std::string field_csv(const Mesh& mesh, std::span<const double> s, std::span<const double> error) {
    std::string out = error.empty() ? "node,x,y,s\n" : "node,x,y,s,err\n";
    for (int i = 0; i < mesh.node_count(); ++i) {
        out += std::to_string(i);
        out += ',';
        put(out, mesh.nodes[i].x);
        out += ',';
        put(out, mesh.nodes[i].y);
        out += ',';
        put(out, s[i]);
        if (!error.empty()) {
            out += ',';
            put(out, error[i]);
        }
        out += '\n';
    }
    return out;
}

std::string isochrone_svg(const Mesh& mesh, std::span<const double> s, std::span<const double> levels,
                          const SvgOptions& options) {
    Box box;
    for (const auto& p : mesh.nodes) box.add(p);
    const double stroke = box.empty() ? 0.002 : 0.002 * std::max(box.x1 - box.x0, box.y1 - box.y0);
    std::string out = svg_open(box, options.width_px);

    if (options.show_mesh) {
        out += "<g class=\"mesh\" stroke=\"#cccccc\" stroke-width=\"";
        put_svg(out, 0.5 * stroke);
        out += "\">\n";
        for (const auto& t : mesh.triangles) {
            const Vec2 pts[4] = {mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]], mesh.nodes[t[0]]};
            out += "<polyline points=\"";
            svg_points(out, pts);
            out += "\"/>\n";
        }
        out += "</g>\n";
    }

    out += "<g class=\"boundary\" stroke=\"#000000\" stroke-width=\"";
    put_svg(out, stroke);
    out += "\">\n";
    for (const auto& loop : boundary_loops(mesh)) {
        std::vector<Vec2> pts;
        for (int i : loop) pts.push_back(mesh.nodes[i]);
        out += "<polygon points=\"";
        svg_points(out, pts);
        out += "\"/>\n";
    }
    out += "</g>\n";

    for (double tau : levels) {
        out += "<g class=\"isochrone\" data-tau=\"";
        put(out, tau);
        out += "\" stroke=\"#c0392b\" stroke-width=\"";
        put_svg(out, stroke);
        out += "\">\n";
        for (const auto& line : isocontour(mesh, s, tau)) {
            out += "<polyline points=\"";
            svg_points(out, line.points);
            out += "\"/>\n";
        }
        out += "</g>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::string contour_svg(const Contour& contour, int samples_per_piece) {
    std::vector<Vec2> pts;
    Box box;
    for (const auto& piece : contour.pieces()) {
        const int n = piece.kind == Piece::Kind::Line ? 1 : std::max(samples_per_piece, 1);
        for (int k = pts.empty() ? 0 : 1; k <= n; ++k) pts.push_back(piece.point_at(static_cast<double>(k) / n));
    }
    for (const auto& p : pts) box.add(p);
    const double stroke = box.empty() ? 0.002 : 0.004 * std::max(box.x1 - box.x0, box.y1 - box.y0);
    std::string out = svg_open(box, 800.0);
    out += "<g class=\"contour\" stroke=\"#000000\" stroke-width=\"";
    put_svg(out, stroke);
    out += "\">\n<polyline points=\"";
    svg_points(out, pts);
    out += "\"/>\n</g>\n</g>\n</svg>\n";
    return out;
}

} // namespace burnback::post
