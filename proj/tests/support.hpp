#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>
#include <vector>

#include "msseg/evolve.hpp"
#include "msseg/geometry.hpp"
#include "msseg/image.hpp"
#include "msseg/imageio.hpp"

namespace testsupport {

using msseg::Image;
using msseg::Point2;
using msseg::Polygon;

// 0.1 plus three Gaussian bumps.
inline Image smooth_blobs(int w = 64, int h = 64) {
    struct Bump {
        double x, y, sigma, amp;
    };
    const Bump bumps[] = {{20, 22, 7, 0.7}, {42, 30, 9, 0.5}, {30, 45, 6, 0.6}};
    Image img(w, h, 1, msseg::Colorspace::Gray);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double v = 0.1;
            for (const Bump& b : bumps) {
                const double d2 = (x - b.x) * (x - b.x) + (y - b.y) * (y - b.y);
                v += b.amp * std::exp(-d2 / (2.0 * b.sigma * b.sigma));
            }
            img.at(x, y) = v;
        }
    return img;
}

inline Image constant_image(int w, int h, double value, int channels = 1) {
    Image img(w, h, channels, channels == 1 ? msseg::Colorspace::Gray : msseg::Colorspace::Rgb);
    img.data.assign(img.data.size(), value);
    return img;
}

// Star-shaped polygon with equally spaced angles and a smooth random radius
// r(t) = R (1 + sum_k a_k cos(k t + phi_k)), k = 1..3.
inline Polygon smooth_star(msseg::Rng& rng, int n, Point2 c, double radius) {
    double amp[4] = {0, 0, 0, 0};
    double phase[4] = {0, 0, 0, 0};
    for (int k = 1; k < 4; ++k) {
        amp[k] = 0.12 * rng.uniform() / k;
        phase[k] = 2.0 * std::numbers::pi * rng.uniform();
    }
    std::vector<Point2> v;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * i / n;
        double r = radius;
        for (int k = 1; k < 4; ++k) r += radius * amp[k] * std::cos(k * t + phase[k]);
        v.push_back({c.x + r * std::cos(t), c.y + r * std::sin(t)});
    }
    return Polygon(std::move(v));
}

// Random smooth star on the 64x64 blob fixture.
inline Polygon blob_star(msseg::Rng& rng, int n) {
    const double cx = 32.0 + 4.0 * (rng.uniform() - 0.5);
    const double cy = 32.0 + 4.0 * (rng.uniform() - 0.5);
    const double r = 14.0 + 6.0 * rng.uniform();
    return smooth_star(rng, n, {cx, cy}, r);
}

// Star with jittered angles and radii; simple by construction.
inline Polygon jagged_star(msseg::Rng& rng, int n, Point2 c, double rmin, double rmax) {
    std::vector<Point2> v;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * (i + 0.8 * (rng.uniform() - 0.5)) / n;
        const double r = rmin + (rmax - rmin) * rng.uniform();
        v.push_back({c.x + r * std::cos(t), c.y + r * std::sin(t)});
    }
    return Polygon(std::move(v));
}

// Disk radius 60 centred in a 200x200 image, 0.9 inside and 0.1 outside.
inline Image disk_fixture(double noise_sd = 0.0, std::uint64_t seed = 1) {
    Image img = msseg::synth_shape(msseg::ShapeKind::Disk, 200, 200, 0.9, 0.1, {100, 100, 60});
    if (noise_sd > 0.0) {
        msseg::Rng rng(seed);
        img = msseg::add_gaussian_noise(img, noise_sd, rng);
    }
    return img;
}

// Hausdorff distance to the circle, using a finely sampled reference polygon.
inline double distance_to_circle(const Polygon& p, Point2 c, double r) {
    return msseg::hausdorff_distance(p, msseg::init_circle(c, r, 3600));
}

// Mean of window k for consecutive, non-overlapping windows from iteration 0.
inline std::vector<double> window_means(const std::vector<msseg::TraceRow>& trace, int window) {
    std::vector<double> out;
    for (std::size_t k = 0; k + window <= trace.size(); k += window) {
        double s = 0.0;
        for (int j = 0; j < window; ++j) s += trace[k + j].total;
        out.push_back(s / window);
    }
    return out;
}

// Fraction of window transitions that do not increase the mean energy.
inline double non_increasing_fraction(const std::vector<msseg::TraceRow>& trace, int window) {
    const std::vector<double> m = window_means(trace, window);
    if (m.size() < 2) return 1.0;
    int ok = 0;
    for (std::size_t k = 1; k < m.size(); ++k) ok += m[k] <= m[k - 1];
    return static_cast<double>(ok) / static_cast<double>(m.size() - 1);
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Fresh directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("msseg_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testsupport
