#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace msseg {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a);

/// Closed polygon; the edge from the last vertex back to the first is implicit.
///
/// Construction enforces at least three finite vertices and no coincident
/// consecutive pair (edge length above kMinEdge). Orientation is not enforced;
/// see ensure_ccw().
class Polygon {
public:
    static constexpr double kMinEdge = 1e-9;

    explicit Polygon(std::vector<Point2> vertices);

    std::size_t size() const { return vertices_.size(); }
    const Point2& operator[](std::size_t i) const { return vertices_[i]; }
    const std::vector<Point2>& vertices() const { return vertices_; }

    const Point2& prev(std::size_t i) const { return vertices_[(i + size() - 1) % size()]; }
    const Point2& next(std::size_t i) const { return vertices_[(i + 1) % size()]; }

    friend bool operator==(const Polygon&, const Polygon&) = default;

private:
    std::vector<Point2> vertices_;
};

/// Drops vertices that coincide with their predecessor (closing edge included).
std::vector<Point2> remove_coincident(std::vector<Point2> pts, double tol = Polygon::kMinEdge);

/// Unit outward normal per vertex.
struct NormalField {
    std::vector<Point2> normals;
};

/// Shoelace area, positive for counter-clockwise vertex order.
double signed_area(const Polygon& p);

/// Returns p with positive signed area. A clockwise input is reversed while
/// keeping the first vertex in place.
Polygon ensure_ccw(const Polygon& p);

double polygon_area(const Polygon& p);
double polygon_perimeter(const Polygon& p);

/// Normal at vertex i is the central-difference tangent v[i+1] - v[i-1]
/// rotated by -90 degrees, which points outward for a CCW polygon.
NormalField outward_normals(const Polygon& p);

/// Signed circumcircle curvature per vertex, positive at left turns.
std::vector<double> discrete_curvature(const Polygon& p);

/// Boundary quadrature weight per vertex: half the distance between the two
/// neighbours. Moving vertex i by d along its outward normal changes the
/// enclosed area by exactly d * w_i.
std::vector<double> vertex_weights(const Polygon& p);

/// Places n_target vertices at equal arc-length spacing along the closed
/// polyline, starting at the current first vertex.
Polygon resample_uniform(const Polygon& p, std::size_t n_target);

/// True iff no two non-adjacent edges touch or cross.
bool is_simple(const Polygon& p);

Point2 centroid(const Polygon& p);

/// Symmetric Hausdorff distance between two closed polylines, evaluated on
/// edges subdivided to at most `spacing` length.
double hausdorff_distance(const Polygon& a, const Polygon& b, double spacing = 0.05);

/// Polygon text format: one "x y" pair per line, '#' starts a comment line.
Polygon read_polygon(std::istream& in);
Polygon read_polygon(const std::filesystem::path& path);
void write_polygon(std::ostream& out, const Polygon& p);
void write_polygon(const std::filesystem::path& path, const Polygon& p);

}  // namespace msseg
