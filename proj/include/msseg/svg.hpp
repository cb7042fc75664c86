#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msseg/evolve.hpp"
#include "msseg/geometry.hpp"
#include "msseg/image.hpp"

namespace msseg {

std::string base64_encode(std::string_view bytes);

struct StrokedPolygon {
    const Polygon* polygon = nullptr;
    std::string color;
    double width = 1.0;
};

/// SVG 1.1 document with the image as background and one closed <polyline>
/// per entry. The background is embedded as a base64 PNM data URI unless
/// `href` is given, in which case it is referenced.
std::string overlay_svg(const Image& background, std::span<const StrokedPolygon> curves,
                        const std::optional<std::string>& href = std::nullopt);

/// Line plot of the energy trace: total (red), e1 (black), e2 (green) and
/// eta * e3 (blue).
std::string energy_svg(std::span<const TraceRow> trace, double eta);

}  // namespace msseg
