#include "msseg/image.hpp"

#include <algorithm>
#include <cmath>

#include "msseg/errors.hpp"

namespace msseg {

const char* to_string(Colorspace space) {
    switch (space) {
        case Colorspace::Gray: return "gray";
        case Colorspace::Rgb: return "rgb";
        case Colorspace::Lab: return "lab";
    }
    return "?";
}

Image::Image(int w, int h, int c, Colorspace s, double fill)
    : width(w), height(h), channels(c), space(s),
      data(static_cast<std::size_t>(w) * h * c, fill) {}

double Image::sample(double x, double y, int c) const {
    x = std::clamp(x, 0.0, static_cast<double>(width - 1));
    y = std::clamp(y, 0.0, static_cast<double>(height - 1));
    const int x0 = std::min(static_cast<int>(x), width - 1);
    const int y0 = std::min(static_cast<int>(y), height - 1);
    const int x1 = std::min(x0 + 1, width - 1);
    const int y1 = std::min(y0 + 1, height - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double top = (1.0 - fx) * at(x0, y0, c) + fx * at(x1, y0, c);
    const double bottom = (1.0 - fx) * at(x0, y1, c) + fx * at(x1, y1, c);
    return (1.0 - fy) * top + fy * bottom;
}

void validate(const Image& img) {
    if (img.width < 1 || img.height < 1) throw BadParams("image has no pixels");
    if (img.channels < 1) throw BadParams("image has no channels");
    if (img.space == Colorspace::Gray && img.channels != 1)
        throw BadParams("gray image must have one channel");
    if (img.space != Colorspace::Gray && img.channels != 3)
        throw BadParams("color image must have three channels");
    if (img.data.size() != img.pixel_count() * img.channels)
        throw BadParams("image buffer size does not match its dimensions");
    for (double v : img.data)
        if (!std::isfinite(v)) throw BadParams("image holds a non-finite sample");
}

}  // namespace msseg
