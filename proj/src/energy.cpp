#include "msseg/energy.hpp"

#include <algorithm>
#include <cmath>

#include "msseg/errors.hpp"

namespace msseg {

RegionMeans means(const RegionStats& stats) {
    if (!(stats.area_in > 0.0)) throw EmptyRegion("inside region has zero area");
    if (!(stats.area_out > 0.0)) throw EmptyRegion("outside region has zero area");
    const int nc = stats.channels();
    RegionMeans m;
    m.mu_in.resize(nc);
    m.mu_out.resize(nc);
    m.var_in.resize(nc);
    m.var_out.resize(nc);
    for (int c = 0; c < nc; ++c) {
        m.mu_in[c] = stats.s1_in[c] / stats.area_in;
        m.mu_out[c] = stats.s1_out[c] / stats.area_out;
        m.var_in[c] = std::max(0.0, stats.s2_in[c] / stats.area_in - m.mu_in[c] * m.mu_in[c]);
        m.var_out[c] = std::max(0.0, stats.s2_out[c] / stats.area_out - m.mu_out[c] * m.mu_out[c]);
    }
    return m;
}

EnergyBreakdown energy_from_stats(const RegionStats& stats, double perimeter, double eta) {
    const RegionMeans m = means(stats);
    EnergyBreakdown e;
    for (int c = 0; c < stats.channels(); ++c) {
        e.e1 += m.var_in[c];
        e.e2 += m.var_out[c];
    }
    e.e3 = perimeter;
    e.eta = eta;
    e.total = e.e1 + e.e2 + eta * e.e3;
    return e;
}

EnergyBreakdown energy(const Image& img, const Polygon& p, double eta) {
    const Mask mask = rasterize_mask(p, img.width, img.height);
    return energy_from_stats(region_stats(img, mask), polygon_perimeter(p), eta);
}

std::vector<double> region_shape_gradient(const Image& img, const RegionMeans& m,
                                          const RegionStats& stats, std::span<const Point2> points) {
    if (!(stats.area_in > 0.0) || !(stats.area_out > 0.0))
        throw EmptyRegion("shape gradient needs both regions non-empty");
    std::vector<double> out(points.size(), 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        double g = 0.0;
        for (int c = 0; c < img.channels; ++c) {
            const double f = img.sample(points[i].x, points[i].y, c);
            const double din = f - m.mu_in[c];
            const double dout = f - m.mu_out[c];
            g += (din * din - m.var_in[c]) / stats.area_in;
            g += (m.var_out[c] - dout * dout) / stats.area_out;
        }
        out[i] = g;
    }
    return out;
}

GradientField assemble_gradient(const Polygon& p, std::vector<double> region_speeds, double eta) {
    if (signed_area(p) <= 0.0) throw DegeneratePolygon("shape gradient expects a CCW polygon");
    GradientField g;
    g.normals = outward_normals(p);
    g.weights = vertex_weights(p);
    g.speeds = std::move(region_speeds);
    if (eta != 0.0) {
        const auto kappa = discrete_curvature(p);
        for (std::size_t i = 0; i < g.speeds.size(); ++i) g.speeds[i] += eta * kappa[i];
    }
    return g;
}

GradientField shape_gradient(const Image& img, const Polygon& p, double eta) {
    const Mask mask = rasterize_mask(p, img.width, img.height);
    const RegionStats stats = region_stats(img, mask);
    return assemble_gradient(p, region_shape_gradient(img, means(stats), stats, p.vertices()), eta);
}


GradientCheck gradient_check(const Image& img, const Polygon& p, double eta, int factor, double h,
                             double min_magnitude, bool negate) {
    const GradientField g = shape_gradient(img, p, eta);
    GradientCheck out;
    const std::size_t n = p.size();
    out.analytic.resize(n);
    out.numeric.resize(n);
    out.rel_error.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 d = h * g.normals.normals[i];
        std::vector<Point2> plus = p.vertices();
        std::vector<Point2> minus = p.vertices();
        plus[i] = plus[i] + d;
        minus[i] = minus[i] - d;
        const double ep = supersampled_energy(img, Polygon(std::move(plus)), eta, factor).total;
        const double em = supersampled_energy(img, Polygon(std::move(minus)), eta, factor).total;
        out.numeric[i] = (ep - em) / (2.0 * h);
        out.analytic[i] = (negate ? -1.0 : 1.0) * g.speeds[i] * g.weights[i];
        if (std::abs(out.analytic[i]) > min_magnitude) {
            out.rel_error[i] = std::abs(out.analytic[i] - out.numeric[i]) / std::abs(out.analytic[i]);
            out.max_rel_error = std::max(out.max_rel_error, out.rel_error[i]);
            ++out.checked;
        }
    }
    return out;
}

}  // namespace msseg
