#pragma once

#include <vector>

#include "msseg/energy.hpp"
#include "msseg/geometry.hpp"
#include "msseg/image.hpp"

namespace msseg {

/// One gray-tagged image per channel, samples unchanged.
std::vector<Image> split_channels(const Image& img);

/// Inverse of split_channels; a single channel yields a gray image.
Image merge_channels(const std::vector<Image>& channels, Colorspace space);

/// sRGB (D65, 2 degree observer) to CIELAB, stored as
/// (L* / 100, (a* + 128) / 255, (b* + 128) / 255).
Image srgb_to_lab(const Image& img);

/// Region gradients summed over channels plus a single eta * curvature term.
/// All channels share the mask of p.
GradientField multichannel_gradient(const std::vector<Image>& channels, const Polygon& p, double eta);

}  // namespace msseg
