#include "burnback/contour.hpp"

#include "burnback/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

namespace burnback {

using std::numbers::pi;

Piece Piece::line(Vec2 from, Vec2 to) {
    Piece p;
    p.kind = Kind::Line;
    p.p0 = from;
    p.p1 = to;
    return p;
}

Piece Piece::arc(Vec2 center, double radius, double a0, double a1, int sweep) {
    if (!(radius > 0.0)) throw DomainError("arc radius must be > 0");
    if (sweep != 1 && sweep != -1) throw DomainError("arc sweep must be +1 or -1");
    if ((a1 - a0) * sweep <= 0.0) throw DomainError("arc end angle disagrees with sweep sign");
    Piece p;
    p.kind = Kind::Arc;
    p.center = center;
    p.radius = radius;
    p.a0 = a0;
    p.a1 = a1;
    p.sweep = sweep;
    return p;
}

Vec2 Piece::start() const { return kind == Kind::Line ? p0 : center + polar(radius, a0); }
Vec2 Piece::end() const { return kind == Kind::Line ? p1 : center + polar(radius, a1); }

double Piece::length() const {
    return kind == Kind::Line ? burnback::distance(p0, p1) : radius * std::abs(a1 - a0);
}

Vec2 Piece::point_at(double t) const {
    if (kind == Kind::Line) return p0 + t * (p1 - p0);
    return center + polar(radius, a0 + t * (a1 - a0));
}

Vec2 Piece::tangent_at(double t) const {
    if (kind == Kind::Line) return normalized(p1 - p0);
    const double a = a0 + t * (a1 - a0);
    return static_cast<double>(sweep) * Vec2{-std::sin(a), std::cos(a)};
}

double Piece::distance_to(Vec2 p) const {
    if (kind == Kind::Line) {
        const Vec2 d = p1 - p0;
        const double len2 = dot(d, d);
        const double t = len2 > 0.0 ? std::clamp(dot(p - p0, d) / len2, 0.0, 1.0) : 0.0;
        return burnback::distance(p, p0 + t * d);
    }
    const Vec2 r = p - center;
    const double rn = norm(r);
    const double span = std::abs(a1 - a0);
    if (rn == 0.0) return radius;
    if (span >= 2.0 * pi) return std::abs(rn - radius);
    double offset = std::fmod(sweep * (std::atan2(r.y, r.x) - a0), 2.0 * pi);
    if (offset < 0.0) offset += 2.0 * pi;
    if (offset <= span) return std::abs(rn - radius);
    return std::min(burnback::distance(p, start()), burnback::distance(p, end()));
}

Contour::Contour(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw DomainError("contour needs at least one piece");
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        if (burnback::distance(pieces_[i - 1].end(), pieces_[i].start()) > kJoinTolerance) {
            throw DomainError("contour pieces " + std::to_string(i - 1) + " and " + std::to_string(i) +
                              " do not share an endpoint");
        }
    }
    closed_ = burnback::distance(pieces_.back().end(), pieces_.front().start()) <= kJoinTolerance;
}

double Contour::length() const {
    double l = 0.0;
    for (const auto& p : pieces_) l += p.length();
    return l;
}

Vec2 Contour::point_at(double t) const {
    const double target = std::clamp(t, 0.0, 1.0) * length();
    double acc = 0.0;
    for (const auto& p : pieces_) {
        const double l = p.length();
        if (target <= acc + l) return p.point_at(l > 0.0 ? (target - acc) / l : 0.0);
        acc += l;
    }
    return end();
}

std::vector<Vec2> Contour::sample(int n) const {
    std::vector<Vec2> out;
    out.reserve(n + 1);
    for (int k = 0; k <= n; ++k) out.push_back(k == n ? end() : point_at(static_cast<double>(k) / n));
    return out;
}

Contour Contour::reflected(Vec2 line_point, Vec2 line_direction) const {
    const Vec2 d = normalized(line_direction);
    const double alpha = std::atan2(d.y, d.x);
    auto mirror = [&](Vec2 p) {
        const Vec2 r = p - line_point;
        return line_point + 2.0 * dot(r, d) * d - r;
    };
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
        if (p.kind == Piece::Kind::Line) {
            out.push_back(Piece::line(mirror(p.p0), mirror(p.p1)));
        } else {
            out.push_back(Piece::arc(mirror(p.center), p.radius, 2 * alpha - p.a0, 2 * alpha - p.a1, -p.sweep));
        }
    }
    return Contour(std::move(out));
}

Contour Contour::rotated(double angle) const {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    auto rot = [&](Vec2 p) { return Vec2{c * p.x - s * p.y, s * p.x + c * p.y}; };
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
        if (p.kind == Piece::Kind::Line) {
            out.push_back(Piece::line(rot(p.p0), rot(p.p1)));
        } else {
            out.push_back(Piece::arc(rot(p.center), p.radius, p.a0 + angle, p.a1 + angle, p.sweep));
        }
    }
    return Contour(std::move(out));
}

Contour Contour::reversed() const {
    std::vector<Piece> out;
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
        if (it->kind == Piece::Kind::Line) {
            out.push_back(Piece::line(it->p1, it->p0));
        } else {
            out.push_back(Piece::arc(it->center, it->radius, it->a1, it->a0, -it->sweep));
        }
    }
    return Contour(std::move(out));
}

Contour make_circle(double radius) {
    if (!(radius > 0.0)) throw DomainError("make_circle: radius must be > 0");
    return Contour({Piece::arc({0, 0}, radius, 2.0 * pi, 0.0, -1)});
}

Contour make_slot(double straight_length, double cap_radius) {
    if (!(straight_length > 0.0) || !(cap_radius > 0.0)) {
        throw DomainError("make_slot: straight length and cap radius must be > 0");
    }
    const double r = cap_radius;
    const double l = straight_length;
    return Contour({Piece::line({-r, 0}, {-r, l}), Piece::arc({0, l}, r, pi, 0.0, -1),
                    Piece::line({r, l}, {r, 0})});
}

Contour make_star(int n, double tip_angle, double eps, double valley_depth, double casing_radius) {
    if (n < 3) throw DomainError("make_star: n must be >= 3");
    if (!(tip_angle > 0.0 && tip_angle < pi)) throw DomainError("make_star: tip angle must be in (0, pi)");
    if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("make_star: eps must be in (0, 1]");
    if (!(valley_depth > 0.0 && valley_depth < casing_radius)) {
        throw DomainError("make_star: need 0 < valley_depth < casing_radius");
    }
    const double sector = pi / n;
    const double half = 0.5 * tip_angle;
    const double wall_dir_angle = sector - half; // polar direction of the wall, outward from V
    const Vec2 v = polar(1.0, sector);           // unit-scale valley point, rescaled below
    const Vec2 w = polar(1.0, wall_dir_angle);

    if (eps == 1.0) {
        // Sharp port point where the wall meets the 0 ray.
        if (!(w.y < 0.0)) {
            throw DomainError("make_star: with eps = 1 the wall must converge to the symmetry ray "
                              "(needs tip_angle/2 > pi/n)");
        }
        const double t = -v.y / w.y;
        const Vec2 tip = v + t * w;
        const double k = valley_depth / tip.x;
        return Contour({Piece::line(k * v, {valley_depth, 0.0})});
    }

    const double phi_j = (1.0 - eps) * sector; // polar angle of the wall/fillet junction
    const double denom = std::sin(phi_j - wall_dir_angle);
    if (!(denom > 0.0)) {
        throw DomainError("make_star: wall never reaches the fillet junction "
                          "(needs eps*pi/n < tip_angle/2)");
    }
    const double t = std::sin(sector - phi_j) / denom;
    const Vec2 j = v + t * w;
    const Vec2 inward = {std::sin(wall_dir_angle), -std::cos(wall_dir_angle)}; // toward the 0 ray
    const double rho = j.y / std::cos(wall_dir_angle);
    const double cx = j.x + rho * inward.x;
    if (!(rho > 0.0) || !(cx > 0.0)) throw DomainError("make_star: fillet crosses the symmetry ray");
    const double k = valley_depth / (cx + rho);
    const double a_start = 0.5 * pi + wall_dir_angle;
    return Contour({Piece::line(k * v, k * j), Piece::arc({k * cx, 0.0}, k * rho, a_start, 0.0, -1)});
}

Contour star_full(const Contour& half_sector, int n) {
    const Contour mirrored = half_sector.reflected({0, 0}, {1, 0}).reversed();
    std::vector<Piece> all;
    for (int k = 0; k < n; ++k) {
        const double a = -2.0 * pi * k / n;
        const Contour upper = half_sector.rotated(a);
        const Contour lower = mirrored.rotated(a);
        all.insert(all.end(), upper.pieces().begin(), upper.pieces().end());
        all.insert(all.end(), lower.pieces().begin(), lower.pieces().end());
    }
    return Contour(std::move(all));
}

double distance(Vec2 p, const Contour& contour) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& piece : contour.pieces()) best = std::min(best, piece.distance_to(p));
    return best;
}

double feature_rate(const FeatureKind& f) {
    switch (f.kind) {
    case FeatureKind::Kind::Regular:
        return 2.0 * pi;
    case FeatureKind::Kind::Corner:
        if (!(f.dphi > 0.0 && f.dphi < pi)) throw DomainError("feature_rate: corner angle must be in (0, pi)");
        return f.dphi;
    case FeatureKind::Kind::Cusp:
        if (!(f.dphi > 0.0 && f.dphi < pi)) throw DomainError("feature_rate: cusp angle must be in (0, pi)");
        return -2.0 * std::tan(0.5 * f.dphi);
    }
    return 0.0;
}

double collision_drop(double front_length, double semi_thickness, double y) {
    return y - semi_thickness >= 0.0 ? -front_length : 0.0;
}

CylinderState cylinder_laws(double perimeter0, double port_area0, double y) {
    return {perimeter0 + 2.0 * pi * y, port_area0 + perimeter0 * y + pi * y * y};
}

namespace {

double field(std::string_view s, int line) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ParseError("expected a number, got '" + std::string(s) + "'", line);
    }
    return v;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Contour parse_contour(std::string_view text) {
    std::vector<Piece> pieces;
    int number = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++number;
        if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
        std::vector<std::string_view> f;
        for (std::size_t i = 0; i < raw.size();) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
            if (j > i) f.push_back(raw.substr(i, j - i));
            i = j;
        }
        if (f.empty()) continue;
        try {
            if (f[0] == "L" && f.size() == 5) {
                pieces.push_back(Piece::line({field(f[1], number), field(f[2], number)},
                                             {field(f[3], number), field(f[4], number)}));
            } else if (f[0] == "A" && f.size() == 7) {
                const double s = field(f[6], number);
                pieces.push_back(Piece::arc({field(f[1], number), field(f[2], number)}, field(f[3], number),
                                            field(f[4], number), field(f[5], number), s < 0 ? -1 : 1));
            } else {
                throw ParseError("expected 'L x0 y0 x1 y1' or 'A cx cy r a0 a1 s'", number);
            }
        } catch (const DomainError& e) {
            throw ParseError(e.what(), number);
        }
    }
    if (pieces.empty()) throw ParseError("contour has no pieces", 0);
    return Contour(std::move(pieces));
}

std::string format_contour(const Contour& contour) {
    std::string out;
    for (const auto& p : contour.pieces()) {
        if (p.kind == Piece::Kind::Line) {
            out += "L " + num(p.p0.x) + " " + num(p.p0.y) + " " + num(p.p1.x) + " " + num(p.p1.y) + "\n";
        } else {
            out += "A " + num(p.center.x) + " " + num(p.center.y) + " " + num(p.radius) + " " + num(p.a0) +
                   " " + num(p.a1) + " " + std::to_string(p.sweep) + "\n";
        }
    }
    return out;
}

} // namespace burnback
