#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "msseg/errors.hpp"
#include "msseg/evolve.hpp"
#include "msseg/geometry.hpp"
#include "msseg/imageio.hpp"
#include "support.hpp"

using namespace msseg;

namespace {

Polygon poly(std::initializer_list<Point2> pts) { return Polygon(std::vector<Point2>(pts)); }

Polygon regular(int n, double r, Point2 c = {0, 0}) { return init_circle(c, r, n); }

}  // namespace

TEST_CASE("polygon construction rejects degenerate input") {
    CHECK_THROWS_AS(poly({{0, 0}, {1, 0}}), DegeneratePolygon);
    CHECK_THROWS_AS(poly({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), DegeneratePolygon);
    CHECK_THROWS_AS(poly({{0, 0}, {1, 0}, {0, 1}, {0, 0}}), DegeneratePolygon);
    CHECK_THROWS_AS(poly({{0, 0}, {NAN, 0}, {0, 1}}), DegeneratePolygon);
    CHECK_NOTHROW(poly({{0, 0}, {1, 0}, {0, 1}}));
}

TEST_CASE("remove_coincident drops repeated and closing duplicates") {
    const auto v = remove_coincident({{0, 0}, {0, 0}, {1, 0}, {1, 1}, {0, 0}});
    REQUIRE(v.size() == 3);
    CHECK(v[0] == Point2{0, 0});
    CHECK(v[2] == Point2{1, 1});
}

TEST_CASE("ensure_ccw") {
    SUBCASE("clockwise square is reversed keeping the first vertex") {
        const Polygon q = ensure_ccw(poly({{0, 0}, {0, 1}, {1, 1}, {1, 0}}));
        CHECK(q == poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
        CHECK(signed_area(q) > 0);
    }
    SUBCASE("ccw triangle is unchanged") {
        const Polygon t = poly({{0, 0}, {2, 0}, {0, 2}});
        CHECK(ensure_ccw(t) == t);
    }
    SUBCASE("collinear points are degenerate") {
        CHECK_THROWS_AS(ensure_ccw(poly({{0, 0}, {1, 0}, {2, 0}})), DegeneratePolygon);
    }
    SUBCASE("area is positive afterwards for random polygons") {
        Rng rng(3);
        for (int k = 0; k < 50; ++k) {
            Polygon p = testsupport::jagged_star(rng, 12, {10, 10}, 2, 8);
            std::vector<Point2> rev(p.vertices().rbegin(), p.vertices().rend());
            CHECK(polygon_area(ensure_ccw(p)) > 0);
            CHECK(polygon_area(ensure_ccw(Polygon(rev))) > 0);
        }
    }
}

TEST_CASE("area and perimeter") {
    const Polygon unit = poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(polygon_area(unit) == 1.0);
    CHECK(polygon_perimeter(unit) == 4.0);
    CHECK(polygon_area(poly({{0, 0}, {2, 0}, {0, 2}})) == 2.0);
    CHECK(polygon_perimeter(poly({{0, 0}, {3, 0}, {0, 4}})) == 12.0);

    const Polygon p100 = regular(100, 50.0);
    const double area = 0.5 * 100 * 50.0 * 50.0 * std::sin(2 * std::numbers::pi / 100);
    const double perim = 100 * 2 * 50.0 * std::sin(std::numbers::pi / 100);
    CHECK(polygon_area(p100) == doctest::Approx(area).epsilon(1e-12));
    CHECK(polygon_perimeter(p100) == doctest::Approx(perim).epsilon(1e-12));
    CHECK(area == doctest::Approx(7848.81).epsilon(1e-6));
    CHECK(perim == doctest::Approx(314.1).epsilon(1e-3));
}

TEST_CASE("outward normals") {
    SUBCASE("regular octagon is radial") {
        const Polygon p = regular(8, 3.0);
        const NormalField nf = outward_normals(p);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const Point2 radial = (1.0 / norm(p[i])) * p[i];
            CHECK(nf.normals[i].x == doctest::Approx(radial.x).epsilon(1e-12));
            CHECK(nf.normals[i].y == doctest::Approx(radial.y).epsilon(1e-12));
            CHECK(norm(nf.normals[i]) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("square corners give the diagonals") {
        const NormalField nf = outward_normals(poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
        const double h = std::sqrt(0.5);
        const Point2 expect[] = {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
        for (int i = 0; i < 4; ++i) {
            CHECK(nf.normals[i].x == doctest::Approx(expect[i].x));
            CHECK(nf.normals[i].y == doctest::Approx(expect[i].y));
        }
    }
    SUBCASE("orientation normalisation gives the same normal per vertex") {
        Rng rng(11);
        const Polygon p = testsupport::jagged_star(rng, 20, {0, 0}, 3, 6);
        std::vector<Point2> rev(p.vertices().rbegin(), p.vertices().rend());
        const Polygon a = ensure_ccw(p);
        const Polygon b = ensure_ccw(Polygon(rev));
        const NormalField na = outward_normals(a);
        const NormalField nb = outward_normals(b);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto j = std::find(b.vertices().begin(), b.vertices().end(), a[i]) - b.vertices().begin();
            REQUIRE(static_cast<std::size_t>(j) < b.size());
            CHECK(na.normals[i] == nb.normals[j]);
        }
    }
    SUBCASE("convex polygons point away from the centroid") {
        Rng rng(5);
        for (int k = 0; k < 20; ++k) {
            const Polygon p = testsupport::smooth_star(rng, 30, {0, 0}, 10);
            const Point2 c = centroid(p);
            const NormalField nf = outward_normals(p);
            for (std::size_t i = 0; i < p.size(); ++i) CHECK(dot(nf.normals[i], p[i] - c) > 0);
        }
    }
    SUBCASE("coincident neighbours are degenerate") {
        CHECK_THROWS_AS(outward_normals(poly({{0, 0}, {1, 0}, {0, 1e-3}, {1, 0}})),
                        DegeneratePolygon);
    }
}

TEST_CASE("discrete curvature") {
    SUBCASE("regular polygons give 1/r") {
        for (int n : {3, 4, 7, 100}) {
            for (double r : {0.5, 10.0, 123.0}) {
                for (double k : discrete_curvature(regular(n, r, {5, -2})))
                    CHECK(std::abs(k - 1.0 / r) < 1e-10);
            }
        }
    }
    SUBCASE("collinear triple gives zero") {
        const auto k = discrete_curvature(poly({{0, 0}, {1, 0}, {2, 0}, {1, 1}}));
        CHECK(k[1] == 0.0);
        CHECK(k[0] > 0.0);
    }
    SUBCASE("reflex vertex is negative") {
        const auto k = discrete_curvature(poly({{0, 0}, {2, 0}, {2, 2}, {1, 0.5}, {0, 2}}));
        CHECK(k[3] < 0.0);
        CHECK(k[1] > 0.0);
    }
    SUBCASE("reflection preserves curvature") {
        Rng rng(9);
        const Polygon p = ensure_ccw(testsupport::jagged_star(rng, 25, {0, 0}, 4, 9));
        std::vector<Point2> mirrored;
        for (const Point2& v : p.vertices()) mirrored.push_back({-v.x, v.y});
        const Polygon q = ensure_ccw(Polygon(mirrored));
        const auto kp = discrete_curvature(p);
        const auto kq = discrete_curvature(q);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const Point2 m{-p[i].x, p[i].y};
            const auto j = std::find(q.vertices().begin(), q.vertices().end(), m) - q.vertices().begin();
            REQUIRE(static_cast<std::size_t>(j) < q.size());
            CHECK(kq[j] == doctest::Approx(kp[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("vertex weights are the exact area derivative") {
    Rng rng(21);
    for (int k = 0; k < 100; ++k) {
        const Polygon p = ensure_ccw(testsupport::jagged_star(rng, 5 + k % 40, {50, 50}, 5, 40));
        const auto w = vertex_weights(p);
        const auto nf = outward_normals(p);
        const double delta = 1e-4;
        for (std::size_t i = 0; i < p.size(); ++i) {
            std::vector<Point2> plus = p.vertices();
            std::vector<Point2> minus = p.vertices();
            plus[i] = p[i] + delta * nf.normals[i];
            minus[i] = p[i] - delta * nf.normals[i];
            const double fd = (polygon_area(Polygon(plus)) - polygon_area(Polygon(minus))) / (2 * delta);
            CHECK(std::abs(fd - w[i]) <= 1e-3 * w[i]);
        }
    }
}

TEST_CASE("resample_uniform") {
    SUBCASE("square to 8 gives corners and midpoints") {
        const Polygon q = resample_uniform(poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 8);
        const Point2 expect[] = {{0, 0}, {0.5, 0}, {1, 0}, {1, 0.5}, {1, 1}, {0.5, 1}, {0, 1}, {0, 0.5}};
        REQUIRE(q.size() == 8);
        for (int i = 0; i < 8; ++i) {
            CHECK(q[i].x == doctest::Approx(expect[i].x).epsilon(1e-12));
            CHECK(q[i].y == doctest::Approx(expect[i].y).epsilon(1e-12));
        }
    }
    SUBCASE("uniform polygon is a fixed point") {
        const Polygon p = regular(37, 12.0, {3, 4});
        const Polygon q = resample_uniform(p, 37);
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(norm(q[i] - p[i]) < 1e-9);
    }
    SUBCASE("upsampling a 100-gon keeps the perimeter") {
        const Polygon p = regular(100, 50.0);
        const Polygon q = resample_uniform(p, 200);
        CHECK(q.size() == 200);
        CHECK(std::abs(polygon_perimeter(q) - polygon_perimeter(p)) < 0.005 * polygon_perimeter(p));
    }
    SUBCASE("smooth polygons end up evenly spaced") {
        Rng rng(4);
        for (int k = 0; k < 20; ++k) {
            const Polygon p = testsupport::smooth_star(rng, 40, {0, 0}, 20);
            const Polygon q = resample_uniform(p, 60);
            CHECK(q[0] == p[0]);
            double lo = 1e300, hi = 0.0;
            for (std::size_t i = 0; i < q.size(); ++i) {
                const double e = norm(q.next(i) - q[i]);
                lo = std::min(lo, e);
                hi = std::max(hi, e);
            }
            CHECK(hi / lo < 1.01);
            CHECK(std::abs(polygon_perimeter(q) - polygon_perimeter(p)) <= 0.01 * polygon_perimeter(p));
        }
    }
    SUBCASE("bad targets") {
        CHECK_THROWS_AS(resample_uniform(regular(5, 1.0), 2), DegeneratePolygon);
    }
}

TEST_CASE("is_simple") {
    CHECK(is_simple(poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}})));
    CHECK_FALSE(is_simple(poly({{0, 0}, {1, 1}, {1, 0}, {0, 1}})));
    // vertex touching a non-adjacent edge
    CHECK_FALSE(is_simple(poly({{0, 0}, {4, 0}, {2, 0}, {2, 3}})));
    Rng rng(8);
    for (int k = 0; k < 20; ++k) CHECK(is_simple(testsupport::jagged_star(rng, 50, {0, 0}, 5, 20)));
}

TEST_CASE("hausdorff distance") {
    const Polygon a = regular(400, 10.0);
    const Polygon b = regular(400, 12.0);
    CHECK(hausdorff_distance(a, b) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(hausdorff_distance(a, a) < 1e-12);
    const Polygon sq = poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const Polygon shifted = poly({{0.25, 0}, {1.25, 0}, {1.25, 1}, {0.25, 1}});
    CHECK(hausdorff_distance(sq, shifted) == doctest::Approx(0.25));
}

TEST_CASE("polygon text round trip") {
    Rng rng(1);
    const Polygon p = testsupport::jagged_star(rng, 17, {3.3, -1.7}, 1, 4);
    std::stringstream s;
    s << "# comment\n\n";
    write_polygon(s, p);
    CHECK(read_polygon(s) == p);

    std::istringstream bad("1 2\n3\n4 5\n");
    CHECK_THROWS_AS(read_polygon(bad), ParseError);
    std::istringstream extra("1 2 3\n3 4\n4 5\n");
    CHECK_THROWS_AS(read_polygon(extra), ParseError);
    std::istringstream two("1 2\n3 4\n");
    CHECK_THROWS_AS(read_polygon(two), DegeneratePolygon);
    CHECK_THROWS_AS(read_polygon(std::filesystem::path("/nonexistent/poly.txt")), IoError);
}
