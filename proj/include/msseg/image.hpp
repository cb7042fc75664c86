#pragma once

#include <cstddef>
#include <vector>

namespace msseg {

enum class Colorspace { Gray, Rgb, Lab };

const char* to_string(Colorspace space);

/// Raster of real samples, interleaved per pixel. Pixel (row r, col c) has its
/// center at (x = c, y = r).
struct Image {
    int width = 0;
    int height = 0;
    int channels = 1;
    Colorspace space = Colorspace::Gray;
    std::vector<double> data;

    Image() = default;
    Image(int w, int h, int c, Colorspace s, double fill = 0.0);

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    double& at(int x, int y, int c = 0) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    double at(int x, int y, int c = 0) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    /// Bilinear interpolation between pixel centers, clamped at the borders.
    double sample(double x, double y, int c = 0) const;
};

/// Throws BadParams unless dimensions, channel count and tag agree and every
/// sample is finite.
void validate(const Image& img);

}  // namespace msseg
