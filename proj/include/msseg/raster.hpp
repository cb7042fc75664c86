#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "msseg/geometry.hpp"
#include "msseg/image.hpp"

namespace msseg {

struct EnergyBreakdown;

/// Binary partition of the image domain, row-major.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> inside;

    bool at(int x, int y) const { return inside[static_cast<std::size_t>(y) * width + x] != 0; }
    std::size_t count_inside() const;
};

/// Area and first/second intensity moments of the two regions, per channel.
/// Areas are in pixel units (sample counts times sample weight).
struct RegionStats {
    double area_in = 0.0;
    double area_out = 0.0;
    std::vector<double> s1_in, s1_out;
    std::vector<double> s2_in, s2_out;

    int channels() const { return static_cast<int>(s1_in.size()); }
};

/// Sorted x-coordinates where the closed polyline crosses the horizontal line
/// at height y. An edge contributes iff min(y_a, y_b) <= y < max(y_a, y_b).
std::vector<double> scanline_crossings(const Polygon& p, double y);

/// Even-odd fill sampled at pixel centers. A center exactly on a left or top
/// edge is inside, on a right or bottom edge outside.
/// Throws EmptyRegion when no pixel is inside.
Mask rasterize_mask(const Polygon& p, int width, int height);

/// Exact sums over the inside and outside pixel sets. Throws EmptyRegion if
/// either side is empty.
RegionStats region_stats(const Image& img, const Mask& m);

/// Fractional region statistics: every pixel is split into factor x factor
/// subsamples carrying weight 1/factor^2 and the bilinear intensity at their
/// position. factor must be one of 1, 2, 4, 8, 16.
RegionStats supersampled_stats(const Image& img, const Polygon& p, int factor);

/// Energy assembled from supersampled_stats; factor 1 reproduces energy()
/// bit for bit. Test oracle for the shape gradient.
EnergyBreakdown supersampled_energy(const Image& img, const Polygon& p, double eta, int factor);

}  // namespace msseg
