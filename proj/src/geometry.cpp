#include "msseg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "msseg/errors.hpp"

namespace msseg {

double norm(Point2 a) { return std::hypot(a.x, a.y); }

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw DegeneratePolygon("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Point2& v = vertices_[i];
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw DegeneratePolygon("polygon vertex is not finite");
        if (norm(next(i) - v) <= kMinEdge)
            throw DegeneratePolygon("polygon has coincident consecutive vertices at index " +
                                    std::to_string(i));
    }
}

std::vector<Point2> remove_coincident(std::vector<Point2> pts, double tol) {
    std::vector<Point2> out;
    out.reserve(pts.size());
    for (const Point2& p : pts)
        if (out.empty() || norm(p - out.back()) > tol) out.push_back(p);
    while (out.size() > 1 && norm(out.front() - out.back()) <= tol) out.pop_back();
    return out;
}

double signed_area(const Polygon& p) {
    double twice = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) twice += cross(p[i], p.next(i));
    return 0.5 * twice;
}

Polygon ensure_ccw(const Polygon& p) {
    const double a = signed_area(p);
    if (std::abs(a) < 1e-9) throw DegeneratePolygon("polygon encloses no area");
    if (a > 0) return p;
    std::vector<Point2> rev(p.vertices());
    std::reverse(rev.begin() + 1, rev.end());
    return Polygon(std::move(rev));
}

double polygon_area(const Polygon& p) { return signed_area(p); }

double polygon_perimeter(const Polygon& p) {
    double len = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) len += norm(p.next(i) - p[i]);
    return len;
}

NormalField outward_normals(const Polygon& p) {
    NormalField field;
    field.normals.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point2 t = p.next(i) - p.prev(i);
        const double len = norm(t);
        if (len <= Polygon::kMinEdge)
            throw DegeneratePolygon("neighbours of vertex " + std::to_string(i) + " coincide");
        field.normals.push_back({t.y / len, -t.x / len});
    }
    return field;
}

std::vector<double> discrete_curvature(const Polygon& p) {
    std::vector<double> kappa(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point2 a = p[i] - p.prev(i);
        const Point2 b = p.next(i) - p[i];
        const Point2 c = p.next(i) - p.prev(i);
        const double denom = norm(a) * norm(b) * norm(c);
        // 1/R = 4 * triangle area / (product of side lengths)
        kappa[i] = denom > 0.0 ? 2.0 * cross(a, b) / denom : 0.0;
    }
    return kappa;
}

std::vector<double> vertex_weights(const Polygon& p) {
    std::vector<double> w(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) w[i] = 0.5 * norm(p.next(i) - p.prev(i));
    return w;
}

Polygon resample_uniform(const Polygon& p, std::size_t n_target) {
    if (n_target < 3) throw DegeneratePolygon("resampling needs at least 3 vertices");
    const std::size_t n = p.size();
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + norm(p.next(i) - p[i]);
    const double perimeter = cum[n];
    if (perimeter < 1e-9) throw DegeneratePolygon("polygon has zero perimeter");

    std::vector<Point2> out;
    out.reserve(n_target);
    std::size_t edge = 0;
    for (std::size_t j = 0; j < n_target; ++j) {
        const double s = perimeter * static_cast<double>(j) / static_cast<double>(n_target);
        while (edge + 1 < n && cum[edge + 1] <= s) ++edge;
        const double len = cum[edge + 1] - cum[edge];
        const double t = len > 0.0 ? (s - cum[edge]) / len : 0.0;
        const Point2 a = p[edge];
        const Point2 b = p.next(edge);
        out.push_back(a + t * (b - a));
    }
    return Polygon(remove_coincident(std::move(out)));
}

namespace {

int orientation(Point2 a, Point2 b, Point2 c) {
    const double v = cross(b - a, c - a);
    return (v > 0) - (v < 0);
}

bool on_segment(Point2 a, Point2 b, Point2 q) {
    return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= q.y && q.y <= std::max(a.y, b.y);
}

bool segments_touch(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

double point_segment_distance(Point2 q, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(q - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(q - (a + t * ab));
}

std::vector<Point2> densify(const Polygon& p, double spacing) {
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point2 a = p[i];
        const Point2 b = p.next(i);
        const int steps = std::max(1, static_cast<int>(std::ceil(norm(b - a) / spacing)));
        for (int k = 0; k < steps; ++k) pts.push_back(a + (static_cast<double>(k) / steps) * (b - a));
    }
    return pts;
}

double directed_hausdorff(const std::vector<Point2>& from, const Polygon& to) {
    double worst = 0.0;
    for (const Point2& q : from) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < to.size() && best > worst; ++i)
            best = std::min(best, point_segment_distance(q, to[i], to.next(i)));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

bool is_simple(const Polygon& p) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segments_touch(p[i], p.next(i), p[j], p.next(j))) return false;
        }
    }
    return true;
}

Point2 centroid(const Polygon& p) {
    Point2 c;
    for (const Point2& v : p.vertices()) c = c + v;
    return (1.0 / static_cast<double>(p.size())) * c;
}

double hausdorff_distance(const Polygon& a, const Polygon& b, double spacing) {
    return std::max(directed_hausdorff(densify(a, spacing), b),
                    directed_hausdorff(densify(b, spacing), a));
}

Polygon read_polygon(std::istream& in) {
    std::vector<Point2> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        Point2 v;
        std::string extra;
        if (!(ls >> v.x >> v.y) || (ls >> extra))
            throw ParseError("polygon line " + std::to_string(lineno) + ": expected \"x y\"");
        pts.push_back(v);
    }
    return Polygon(std::move(pts));
}

Polygon read_polygon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open polygon file " + path.string());
    return read_polygon(in);
}

void write_polygon(std::ostream& out, const Polygon& p) {
    char buf[64];
    for (const Point2& v : p.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
        out << buf;
    }
}

void write_polygon(const std::filesystem::path& path, const Polygon& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write polygon file " + path.string());
    write_polygon(out, p);
    if (!out) throw IoError("failed writing polygon file " + path.string());
}

}  // namespace msseg
