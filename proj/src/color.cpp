#include "msseg/color.hpp"

#include <cmath>

#include "msseg/errors.hpp"
#include "msseg/raster.hpp"

namespace msseg {

std::vector<Image> split_channels(const Image& img) {
    std::vector<Image> out;
    out.reserve(img.channels);
    for (int c = 0; c < img.channels; ++c) {
        Image ch(img.width, img.height, 1, Colorspace::Gray);
        for (std::size_t i = 0; i < img.pixel_count(); ++i)
            ch.data[i] = img.data[i * img.channels + c];
        out.push_back(std::move(ch));
    }
    return out;
}

Image merge_channels(const std::vector<Image>& channels, Colorspace space) {
    if (channels.empty()) throw BadParams("no channels to merge");
    const int nc = static_cast<int>(channels.size());
    const Image& first = channels.front();
    Image out(first.width, first.height, nc, nc == 1 ? Colorspace::Gray : space);
    for (int c = 0; c < nc; ++c) {
        const Image& ch = channels[c];
        if (ch.width != first.width || ch.height != first.height || ch.channels != 1)
            throw BadParams("channels must be single-channel images of equal size");
        for (std::size_t i = 0; i < out.pixel_count(); ++i) out.data[i * nc + c] = ch.data[i];
    }
    return out;
}

namespace {

double srgb_to_linear(double u) {
    return u <= 0.04045 ? u / 12.92 : std::pow((u + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

struct Xyz {
    double x, y, z;
};

Xyz linear_to_xyz(double r, double g, double b) {
    return {0.4124564 * r + 0.3575761 * g + 0.1804375 * b,
            0.2126729 * r + 0.7151522 * g + 0.0721750 * b,
            0.0193339 * r + 0.1191920 * g + 0.9503041 * b};
}

}  // namespace

Image srgb_to_lab(const Image& img) {
    if (img.space != Colorspace::Rgb) throw WrongColorspace("srgb_to_lab expects an RGB image");
    // Reference white is the matrix image of linear (1, 1, 1), i.e. D65
    // (0.95047, 1.0000001, 1.08883), so that sRGB white lands on L* = 100 exactly.
    const Xyz white = linear_to_xyz(1.0, 1.0, 1.0);
    Image out(img.width, img.height, 3, Colorspace::Lab);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const double r = srgb_to_linear(img.data[i * 3 + 0]);
        const double g = srgb_to_linear(img.data[i * 3 + 1]);
        const double b = srgb_to_linear(img.data[i * 3 + 2]);
        const Xyz xyz = linear_to_xyz(r, g, b);
        const double fx = lab_f(xyz.x / white.x);
        const double fy = lab_f(xyz.y / white.y);
        const double fz = lab_f(xyz.z / white.z);
        out.data[i * 3 + 0] = (116.0 * fy - 16.0) / 100.0;
        out.data[i * 3 + 1] = (500.0 * (fx - fy) + 128.0) / 255.0;
        out.data[i * 3 + 2] = (200.0 * (fy - fz) + 128.0) / 255.0;
    }
    return out;
}

GradientField multichannel_gradient(const std::vector<Image>& channels, const Polygon& p, double eta) {
    if (channels.empty()) throw BadParams("multichannel_gradient needs at least one channel");
    const Image& first = channels.front();
    const Mask mask = rasterize_mask(p, first.width, first.height);
    std::vector<double> region;
    for (const Image& ch : channels) {
        if (ch.width != first.width || ch.height != first.height)
            throw BadParams("channel dimensions differ");
        const RegionStats stats = region_stats(ch, mask);
        auto part = region_shape_gradient(ch, means(stats), stats, p.vertices());
        if (region.empty()) {
            region = std::move(part);
        } else {
            for (std::size_t i = 0; i < region.size(); ++i) region[i] += part[i];
        }
    }
    return assemble_gradient(p, std::move(region), eta);
}

}  // namespace msseg
