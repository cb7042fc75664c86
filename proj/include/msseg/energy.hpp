#pragma once

#include <span>
#include <vector>

#include "msseg/geometry.hpp"
#include "msseg/image.hpp"
#include "msseg/raster.hpp"

namespace msseg {

/// Terms of the two-region piecewise-constant energy
///   E = var(f | inside) + var(f | outside) + eta * perimeter.
/// For multi-channel images e1 and e2 are sums over channels.
struct EnergyBreakdown {
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    double eta = 0.0;
    double total = 0.0;
};

struct RegionMeans {
    std::vector<double> mu_in, mu_out;
    std::vector<double> var_in, var_out;
};

/// Per-vertex shape gradient of the energy.
struct GradientField {
    std::vector<double> speeds;
    NormalField normals;
    std::vector<double> weights;
};

/// mu = s1 / area, var = max(0, s2 / area - mu^2) per channel.
RegionMeans means(const RegionStats& stats);

EnergyBreakdown energy_from_stats(const RegionStats& stats, double perimeter, double eta);

/// Energy of the rasterized partition plus eta times the polygon perimeter.
EnergyBreakdown energy(const Image& img, const Polygon& p, double eta);

/// Region part of the shape gradient at each point, summed over channels:
///   [(f - mu_in)^2 - var_in] / area_in + [var_out - (f - mu_out)^2] / area_out
/// with f the bilinear image value at the point.
std::vector<double> region_shape_gradient(const Image& img, const RegionMeans& m,
                                          const RegionStats& stats, std::span<const Point2> points);

/// Full shape gradient at the vertices of a counter-clockwise polygon: region
/// terms computed from the pixel mask plus eta times the discrete curvature.
GradientField shape_gradient(const Image& img, const Polygon& p, double eta);

/// Assembles a GradientField from precomputed region speeds.
GradientField assemble_gradient(const Polygon& p, std::vector<double> region_speeds, double eta);


/// Analytic directional derivatives (speed * weight per vertex) against
/// central differences of the supersampled energy, each vertex displaced by
/// +-h along its normal.
struct GradientCheck {
    std::vector<double> analytic;
    std::vector<double> numeric;
    /// |analytic - numeric| / |analytic|, or 0 where |analytic| <= min_magnitude.
    std::vector<double> rel_error;
    double max_rel_error = 0.0;
    std::size_t checked = 0;
};

GradientCheck gradient_check(const Image& img, const Polygon& p, double eta, int factor = 16,
                             double h = 0.25, double min_magnitude = 1e-4, bool negate = false);

}  // namespace msseg
