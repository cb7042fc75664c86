#include "msseg/raster.hpp"

#include <algorithm>
#include <cmath>

#include "msseg/energy.hpp"
#include "msseg/errors.hpp"

namespace msseg {

std::size_t Mask::count_inside() const {
    return static_cast<std::size_t>(std::count(inside.begin(), inside.end(), std::uint8_t{1}));
}

std::vector<double> scanline_crossings(const Polygon& p, double y) {
    std::vector<double> xs;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point2 a = p[i];
        const Point2 b = p.next(i);
        if ((a.y <= y) == (b.y <= y)) continue;
        xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

namespace {

// Subsample k of a grid with `factor` samples per pixel sits at this
// continuous coordinate; factor 1 gives the pixel centers exactly.
double subsample_coord(int k, int factor) {
    if (factor == 1) return static_cast<double>(k);
    return (k + 0.5) / factor - 0.5;
}

// Marks subsamples [0, count) of one row whose coordinate falls in a span
// [x0, x1) of the even-odd crossing list.
void fill_row(const std::vector<double>& xs, int count, int factor, std::uint8_t* row) {
    std::fill(row, row + count, std::uint8_t{0});
    for (std::size_t s = 0; s + 1 < xs.size(); s += 2) {
        const double x0 = xs[s];
        const double x1 = xs[s + 1];
        const double guess = std::clamp(std::ceil((x0 + 0.5) * factor - 0.5), 0.0,
                                        static_cast<double>(count));
        int first = static_cast<int>(guess);
        while (first > 0 && subsample_coord(first - 1, factor) >= x0) --first;
        while (first < count && subsample_coord(first, factor) < x0) ++first;
        int last = first;
        while (last < count && subsample_coord(last, factor) < x1) ++last;
        std::fill(row + first, row + last, std::uint8_t{1});
    }
}

void check_factor(int factor) {
    if (factor != 1 && factor != 2 && factor != 4 && factor != 8 && factor != 16)
        throw BadParams("supersampling factor must be 1, 2, 4, 8 or 16");
}

}  // namespace

Mask rasterize_mask(const Polygon& p, int width, int height) {
    if (width < 1 || height < 1) throw BadParams("mask needs positive dimensions");
    Mask m{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0)};
    bool any = false;
    for (int r = 0; r < height; ++r) {
        const auto xs = scanline_crossings(p, static_cast<double>(r));
        if (xs.empty()) continue;
        std::uint8_t* row = m.inside.data() + static_cast<std::size_t>(r) * width;
        fill_row(xs, width, 1, row);
        any = any || std::find(row, row + width, std::uint8_t{1}) != row + width;
    }
    if (!any) throw EmptyRegion("polygon covers no pixel center");
    return m;
}

RegionStats region_stats(const Image& img, const Mask& m) {
    if (img.width != m.width || img.height != m.height)
        throw BadParams("mask and image dimensions differ");
    const int nc = img.channels;
    RegionStats st;
    st.s1_in.assign(nc, 0.0);
    st.s1_out.assign(nc, 0.0);
    st.s2_in.assign(nc, 0.0);
    st.s2_out.assign(nc, 0.0);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const bool in = m.at(x, y);
            auto& s1 = in ? st.s1_in : st.s1_out;
            auto& s2 = in ? st.s2_in : st.s2_out;
            (in ? st.area_in : st.area_out) += 1.0;
            for (int c = 0; c < nc; ++c) {
                const double f = img.at(x, y, c);
                s1[c] += f;
                s2[c] += f * f;
            }
        }
    }
    if (st.area_in == 0.0) throw EmptyRegion("no pixel inside the contour");
    if (st.area_out == 0.0) throw EmptyRegion("no pixel outside the contour");
    return st;
}

RegionStats supersampled_stats(const Image& img, const Polygon& p, int factor) {
    check_factor(factor);
    const int nc = img.channels;
    const int cols = img.width * factor;
    const int rows = img.height * factor;
    RegionStats st;
    st.s1_in.assign(nc, 0.0);
    st.s1_out.assign(nc, 0.0);
    st.s2_in.assign(nc, 0.0);
    st.s2_out.assign(nc, 0.0);

    std::vector<std::uint8_t> row(cols);
    double count_in = 0.0;
    double count_out = 0.0;
    for (int r = 0; r < rows; ++r) {
        const double y = subsample_coord(r, factor);
        fill_row(scanline_crossings(p, y), cols, factor, row.data());
        for (int k = 0; k < cols; ++k) {
            const double x = subsample_coord(k, factor);
            const bool in = row[k] != 0;
            auto& s1 = in ? st.s1_in : st.s1_out;
            auto& s2 = in ? st.s2_in : st.s2_out;
            (in ? count_in : count_out) += 1.0;
            for (int c = 0; c < nc; ++c) {
                const double f = img.sample(x, y, c);
                s1[c] += f;
                s2[c] += f * f;
            }
        }
    }
    if (count_in == 0.0) throw EmptyRegion("no subsample inside the contour");
    if (count_out == 0.0) throw EmptyRegion("no subsample outside the contour");

    const double w = 1.0 / (static_cast<double>(factor) * factor);
    st.area_in = count_in * w;
    st.area_out = count_out * w;
    for (int c = 0; c < nc; ++c) {
        st.s1_in[c] *= w;
        st.s1_out[c] *= w;
        st.s2_in[c] *= w;
        st.s2_out[c] *= w;
    }
    return st;
}

EnergyBreakdown supersampled_energy(const Image& img, const Polygon& p, double eta, int factor) {
    return energy_from_stats(supersampled_stats(img, p, factor), polygon_perimeter(p), eta);
}

}  // namespace msseg
