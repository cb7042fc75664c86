#include "msseg/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "msseg/imageio.hpp"

namespace msseg {

std::string base64_encode(std::string_view bytes) {
    static constexpr char table[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 2 < bytes.size(); i += 3) {
        const unsigned v = (static_cast<unsigned char>(bytes[i]) << 16) |
                           (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                           static_cast<unsigned char>(bytes[i + 2]);
        out += table[(v >> 18) & 63];
        out += table[(v >> 12) & 63];
        out += table[(v >> 6) & 63];
        out += table[v & 63];
    }
    if (i < bytes.size()) {
        unsigned v = static_cast<unsigned char>(bytes[i]) << 16;
        if (i + 1 < bytes.size()) v |= static_cast<unsigned char>(bytes[i + 1]) << 8;
        out += table[(v >> 18) & 63];
        out += table[(v >> 12) & 63];
        out += i + 1 < bytes.size() ? table[(v >> 6) & 63] : '=';
        out += '=';
    }
    return out;
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string overlay_svg(const Image& background, std::span<const StrokedPolygon> curves,
                        const std::optional<std::string>& href) {
    std::ostringstream out;
    const int w = background.width;
    const int h = background.height;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" "
           "version=\"1.1\" width=\""
        << w << "\" height=\"" << h << "\" viewBox=\"-0.5 -0.5 " << w << ' ' << h << "\">\n";
    std::string uri;
    if (href) {
        uri = xml_escape(*href);
    } else {
        // LAB inputs are shown through their lightness channel.
        Image shown = background;
        if (shown.space == Colorspace::Lab) {
            Image l(shown.width, shown.height, 1, Colorspace::Gray);
            for (std::size_t i = 0; i < l.pixel_count(); ++i) l.data[i] = shown.data[i * 3];
            shown = std::move(l);
        }
        const char* mime = shown.space == Colorspace::Rgb ? "image/x-portable-pixmap"
                                                          : "image/x-portable-graymap";
        uri = std::string("data:") + mime + ";base64," + base64_encode(encode_pnm(shown, true));
    }
    out << "  <image x=\"-0.5\" y=\"-0.5\" width=\"" << w << "\" height=\"" << h
        << "\" preserveAspectRatio=\"none\" xlink:href=\"" << uri << "\"/>\n";
    for (const StrokedPolygon& c : curves) {
        out << "  <polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"" << fmt(c.width)
            << "\" points=\"";
        const auto& v = c.polygon->vertices();
        for (std::size_t i = 0; i <= v.size(); ++i) {
            const Point2& q = v[i % v.size()];
            out << (i ? " " : "") << fmt(q.x) << ',' << fmt(q.y);
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string energy_svg(std::span<const TraceRow> trace, double eta) {
    constexpr double W = 640, H = 400, margin = 40;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
        << "\" height=\"" << H << "\">\n"
        << "  <rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    if (!trace.empty()) {
        auto series = [&](int k, const TraceRow& r) {
            switch (k) {
                case 0: return r.total;
                case 1: return r.e1;
                case 2: return r.e2;
                default: return eta * r.e3;
            }
        };
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const TraceRow& r : trace)
            for (int k = 0; k < 4; ++k) {
                lo = std::min(lo, series(k, r));
                hi = std::max(hi, series(k, r));
            }
        if (hi <= lo) hi = lo + 1.0;
        const double first = trace.front().iter;
        const double span = std::max(1.0, static_cast<double>(trace.back().iter) - first);
        static constexpr const char* colors[] = {"red", "black", "green", "blue"};
        out << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << W - 2 * margin
            << "\" height=\"" << H - 2 * margin << "\" fill=\"none\" stroke=\"gray\"/>\n";
        for (int k = 0; k < 4; ++k) {
            out << "  <polyline fill=\"none\" stroke=\"" << colors[k] << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < trace.size(); ++i) {
                const double x = margin + (trace[i].iter - first) / span * (W - 2 * margin);
                const double y = H - margin - (series(k, trace[i]) - lo) / (hi - lo) * (H - 2 * margin);
                out << (i ? " " : "") << fmt(x) << ',' << fmt(y);
            }
            out << "\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace msseg
