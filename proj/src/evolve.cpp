#include "msseg/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>


namespace msseg {

void EvolveConfig::validate() const {
    if (n_vertices < 3) throw BadParams("n_vertices must be at least 3");
    if (!(eta >= 0.0)) throw BadParams("eta must be non-negative");
    if (!adaptive_dt && !(dt > 0.0)) throw BadParams("a fixed dt must be positive");
    if (!(dt_cap >= 0.0)) throw BadParams("dt_cap must be non-negative");
    if (!(cfl > 0.0)) throw BadParams("cfl must be positive");
    if (!(stiffness >= 0.0)) throw BadParams("stiffness must be non-negative");
    if (!(max_step > 0.0)) throw BadParams("max_step must be positive");
    if (max_iters < 1) throw BadParams("max_iters must be at least 1");
    if (!(e_thr > 0.0)) throw BadParams("e_thr must be positive");
    if (resample_every < 1) throw BadParams("resample_every must be at least 1");
    if (window < 1) throw BadParams("window must be at least 1");
    if (max_halvings < 0) throw BadParams("max_halvings must be non-negative");
}

Polygon init_circle(Point2 center, double radius, int n) {
    if (!(radius > 0.0)) throw BadParams("circle radius must be positive");
    if (n < 3) throw BadParams("circle needs at least 3 vertices");
    std::vector<Point2> v;
    v.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n;
        v.push_back({center.x + radius * std::cos(theta), center.y + radius * std::sin(theta)});
    }
    return Polygon(std::move(v));
}

namespace {

std::vector<Point2> moved_vertices(const Polygon& p, const GradientField& g, double dt, int width,
                                   int height) {
    std::vector<Point2> v;
    v.reserve(p.size());
    const double xmax = width - 1;
    const double ymax = height - 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double s = dt * g.speeds[i];
        const Point2 n = g.normals.normals[i];
        v.push_back({std::clamp(p[i].x - s * n.x, 0.0, xmax), std::clamp(p[i].y - s * n.y, 0.0, ymax)});
    }
    return v;
}

// Cyclic tridiagonal solve (Sherman-Morrison around the Thomas algorithm).
// Row i reads lo[i]*x[i-1] + di[i]*x[i] + up[i]*x[i+1] = rhs[i], indices mod n.
std::vector<double> solve_cyclic(const std::vector<double>& lo, const std::vector<double>& di,
                                 const std::vector<double>& up, const std::vector<double>& rhs) {
    const std::size_t n = di.size();
    const double gamma = -di[0];
    std::vector<double> b = di;
    b[0] -= gamma;
    b[n - 1] -= lo[0] * up[n - 1] / gamma;
    auto thomas = [&](std::vector<double> d) {
        std::vector<double> c(n);
        double m = b[0];
        c[0] = up[0] / m;
        d[0] /= m;
        for (std::size_t i = 1; i < n; ++i) {
            m = b[i] - lo[i] * c[i - 1];
            c[i] = up[i] / m;
            d[i] = (d[i] - lo[i] * d[i - 1]) / m;
        }
        for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
        return d;
    };
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = up[n - 1];
    const std::vector<double> y = thomas(rhs);
    const std::vector<double> z = thomas(u);
    const double fact = (y[0] + lo[0] * y[n - 1] / gamma) / (1.0 + z[0] + lo[0] * z[n - 1] / gamma);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - fact * z[i];
    return x;
}

std::vector<Point2> semi_implicit_vertices(const Polygon& p, std::span<const double> region,
                                           const NormalField& nf, double dt, double eta, int width,
                                           int height) {
    const std::size_t n = p.size();
    std::vector<double> lo(n), di(n), up(n), bx(n), by(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = norm(p[i] - p.prev(i));
        const double b = norm(p.next(i) - p[i]);
        const double k = 2.0 * dt * eta / (a + b);
        lo[i] = -k / a;
        up[i] = -k / b;
        di[i] = 1.0 + k / a + k / b;
        bx[i] = p[i].x - dt * region[i] * nf.normals[i].x;
        by[i] = p[i].y - dt * region[i] * nf.normals[i].y;
    }
    const std::vector<double> x = solve_cyclic(lo, di, up, bx);
    const std::vector<double> y = solve_cyclic(lo, di, up, by);
    std::vector<Point2> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = {std::clamp(x[i], 0.0, width - 1.0), std::clamp(y[i], 0.0, height - 1.0)};
    return v;
}

}  // namespace

Polygon step(const Polygon& p, const GradientField& g, double dt, int width, int height) {
    return Polygon(remove_coincident(moved_vertices(p, g, dt, width, height)));
}

Polygon step_semi_implicit(const Polygon& p, std::span<const double> region_speeds,
                           const NormalField& normals, double dt, double eta, int width, int height) {
    if (region_speeds.size() != p.size() || normals.normals.size() != p.size())
        throw BadParams("speeds and normals must match the polygon size");
    return Polygon(remove_coincident(
        semi_implicit_vertices(p, region_speeds, normals, dt, eta, width, height)));
}

double region_stiffness(const Image& img, const RegionMeans& m, const RegionStats& stats,
                        const Polygon& p, const NormalField& normals) {
    double kmax = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point2 a = p[i] + 0.5 * normals.normals[i];
        const Point2 b = p[i] - 0.5 * normals.normals[i];
        double k = 0.0;
        for (int c = 0; c < img.channels; ++c) {
            const double f = img.sample(p[i].x, p[i].y, c);
            const double dfdn = img.sample(a.x, a.y, c) - img.sample(b.x, b.y, c);
            k += 2.0 * ((f - m.mu_in[c]) / stats.area_in - (f - m.mu_out[c]) / stats.area_out) * dfdn;
        }
        kmax = std::max(kmax, k);
    }
    return kmax;
}

double choose_dt(const Polygon& p, const GradientField& g, const EvolveConfig& cfg,
                 double stiffness) {
    if (!cfg.adaptive_dt) return cfg.dt;
    double cap = std::numeric_limits<double>::infinity();
    if (cfg.stiffness > 0.0 && stiffness > 0.0) cap = cfg.stiffness / stiffness;
    if (cfg.dt_cap > 0.0) {
        cap = std::min(cap, cfg.dt_cap);
    } else if (!cfg.implicit_curvature && cfg.eta > 0.0) {
        double hmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < p.size(); ++i) hmin = std::min(hmin, norm(p.next(i) - p[i]));
        cap = std::min(cap, cfg.cfl * hmin * hmin / cfg.eta);
    }
    double vmax = 0.0;
    for (double s : g.speeds) vmax = std::max(vmax, std::abs(s));
    const double dt = vmax > 0.0 ? std::min(cap, cfg.max_step / vmax) : cap;
    return std::isfinite(dt) ? dt : 0.0;
}

bool converged(std::span<const TraceRow> trace, double e_thr, int window) {
    const std::size_t w = static_cast<std::size_t>(window);
    if (window < 1 || trace.size() < 2 * w) return false;
    double last = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < w; ++k) {
        last += trace[trace.size() - 1 - k].total;
        prev += trace[trace.size() - 1 - w - k].total;
    }
    last /= window;
    prev /= window;
    return std::abs(last - prev) / std::max(std::abs(prev), 1e-12) < e_thr;
}

namespace {

double max_displacement(const Polygon& p, const std::vector<Point2>& moved) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d = std::max(d, norm(moved[i] - p[i]));
    return d;
}

}  // namespace

SegmentationResult run(const Image& img, const Polygon& p0, const EvolveConfig& cfg,
                       const IterationObserver& observer) {
    cfg.validate();
    validate(img);

    Polygon p = ensure_ccw(p0);
    if (p.size() != static_cast<std::size_t>(cfg.n_vertices))
        p = ensure_ccw(resample_uniform(p, cfg.n_vertices));

    std::vector<TraceRow> trace;
    int flagged = 0;
    bool done = false;
    int it = 0;
    try {
        for (; it < cfg.max_iters && !done; ++it) {
            const Mask mask = rasterize_mask(p, img.width, img.height);
            if (mask.count_inside() < cfg.min_inside)
                throw EmptyRegion("contour collapsed below " + std::to_string(cfg.min_inside) +
                                  " inside pixels");

            const RegionStats stats = region_stats(img, mask);
            const EnergyBreakdown e = energy_from_stats(stats, polygon_perimeter(p), cfg.eta);
            const RegionMeans m = means(stats);
            const std::vector<double> region = region_shape_gradient(img, m, stats, p.vertices());
            const GradientField g = assemble_gradient(p, region, cfg.eta);
            auto move = [&](double dt) {
                return cfg.implicit_curvature
                           ? semi_implicit_vertices(p, region, g.normals, dt, cfg.eta, img.width,
                                                    img.height)
                           : moved_vertices(p, g, dt, img.width, img.height);
            };

            double dt = choose_dt(
                p, g, cfg, cfg.stiffness > 0.0 ? region_stiffness(img, m, stats, p, g.normals) : 0.0);
            std::vector<Point2> moved = move(dt);
            Polygon next(remove_coincident(moved));
            if (cfg.safeguard && !is_simple(next) && is_simple(p)) {
                int halvings = 0;
                while (halvings < cfg.max_halvings && !is_simple(next)) {
                    dt *= 0.5;
                    ++halvings;
                    moved = move(dt);
                    next = Polygon(remove_coincident(moved));
                }
                if (!is_simple(next)) ++flagged;
            }

            TraceRow row;
            row.iter = it;
            row.e1 = e.e1;
            row.e2 = e.e2;
            row.e3 = e.e3;
            row.total = e.total;
            row.area = polygon_area(p);
            row.perimeter = e.e3;
            row.max_disp = max_displacement(p, moved);
            trace.push_back(row);

            p = ensure_ccw(next);
            if ((it + 1) % cfg.resample_every == 0) p = ensure_ccw(resample_uniform(p, cfg.n_vertices));
            if (observer) observer(it, p);
            done = converged(trace, cfg.e_thr, cfg.window);
        }
        Mask final_mask = rasterize_mask(p, img.width, img.height);
        const bool simple = is_simple(p);
        return SegmentationResult{std::move(p), std::move(final_mask), std::move(trace), done, it,
                                  simple, flagged};
    } catch (const EmptyRegion& err) {
        throw ContourCollapsed(err.what(), std::move(trace), p);
    }
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace) {
    out << "iter,e1,e2,e3,total,area,perimeter,max_disp\n";
    char buf[512];
    for (const TraceRow& r : trace) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.iter, r.e1,
                      r.e2, r.e3, r.total, r.area, r.perimeter, r.max_disp);
        out << buf;
    }
}

}  // namespace msseg
