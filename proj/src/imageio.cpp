#include "msseg/imageio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string_view>

#include "msseg/errors.hpp"

namespace msseg {

std::uint64_t Rng::next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(theta);
    has_spare_ = true;
    return radius * std::cos(theta);
}

namespace {

class PnmReader {
public:
    PnmReader(std::string_view bytes, std::size_t pos) : b_(bytes), pos_(pos) {}

    void skip_space_and_comments() {
        while (pos_ < b_.size()) {
            const unsigned char ch = b_[pos_];
            if (ch == '#') {
                while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
            } else if (std::isspace(ch)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long read_uint(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        long v = 0;
        while (pos_ < b_.size() && std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
            v = v * 10 + (b_[pos_] - '0');
            if (v > 1'000'000'000L) throw ParseError(std::string("PNM ") + what + " out of range");
            ++pos_;
        }
        if (pos_ == start) throw ParseError(std::string("PNM: expected ") + what);
        return v;
    }

    // Exactly one whitespace byte separates the header from a binary payload.
    void end_header() {
        if (pos_ >= b_.size() || !std::isspace(static_cast<unsigned char>(b_[pos_])))
            throw ParseError("PNM: missing whitespace after header");
        ++pos_;
    }

    std::size_t remaining() const { return b_.size() - pos_; }
    unsigned char byte() { return static_cast<unsigned char>(b_[pos_++]); }

private:
    std::string_view b_;
    std::size_t pos_;
};

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

Image parse_pnm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P') throw ParseError("not a PNM file");
    const char kind = bytes[1];
    if (kind == '1' || kind == '4' || kind == '7')
        throw UnsupportedFormat(std::string("PNM variant P") + kind + " is not supported");
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6')
        throw ParseError("unknown PNM magic number");
    const bool color = kind == '3' || kind == '6';
    const bool binary = kind == '5' || kind == '6';

    PnmReader rd(bytes, 2);
    const long w = rd.read_uint("width");
    const long h = rd.read_uint("height");
    const long maxval = rd.read_uint("maxval");
    if (w < 1 || h < 1) throw ParseError("PNM: zero image dimension");
    if (maxval < 1 || maxval > 65535) throw ParseError("PNM: maxval must be in 1..65535");
    if (w * h > 200'000'000L) throw ParseError("PNM: image too large");

    Image img(static_cast<int>(w), static_cast<int>(h), color ? 3 : 1,
              color ? Colorspace::Rgb : Colorspace::Gray);
    const double full = static_cast<double>(maxval);
    const std::size_t n = img.data.size();
    if (binary) {
        rd.end_header();
        const std::size_t bps = maxval > 255 ? 2 : 1;
        if (rd.remaining() < n * bps) throw ParseError("PNM: truncated payload");
        for (std::size_t i = 0; i < n; ++i) {
            long v = rd.byte();
            if (bps == 2) v = (v << 8) | rd.byte();
            if (v > maxval) throw ParseError("PNM: sample exceeds maxval");
            img.data[i] = static_cast<double>(v) / full;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            long v = 0;
            try {
                v = rd.read_uint("sample");
            } catch (const ParseError&) {
                throw ParseError("PNM: truncated payload");
            }
            if (v > maxval) throw ParseError("PNM: sample exceeds maxval");
            img.data[i] = static_cast<double>(v) / full;
        }
    }
    return img;
}

Image read_pnm(const std::filesystem::path& path) { return parse_pnm(slurp(path)); }

std::string encode_pnm(const Image& img, bool binary) {
    if (img.space == Colorspace::Lab) throw WrongColorspace("cannot write a LAB image as PNM");
    validate(img);
    const bool color = img.space == Colorspace::Rgb;
    std::ostringstream out;
    out << 'P' << (color ? (binary ? '6' : '3') : (binary ? '5' : '2')) << '\n'
        << img.width << ' ' << img.height << "\n255\n";
    const int per_row = img.width * img.channels;
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        const int q = static_cast<int>(std::lround(std::clamp(img.data[i], 0.0, 1.0) * 255.0));
        if (binary) {
            out.put(static_cast<char>(q));
        } else {
            out << q << (((i + 1) % per_row == 0) ? '\n' : ' ');
        }
    }
    return out.str();
}

void write_pnm(const Image& img, const std::filesystem::path& path, bool binary) {
    const std::string bytes = encode_pnm(img, binary);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

Image to_gray(const Image& img) {
    if (img.space != Colorspace::Rgb) throw WrongColorspace("to_gray expects an RGB image");
    Image g(img.width, img.height, 1, Colorspace::Gray);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const double* px = &img.data[i * 3];
        g.data[i] = 0.2126 * px[0] + 0.7152 * px[1] + 0.0722 * px[2];
    }
    return g;
}

ShapeKind parse_shape_kind(const std::string& name) {
    if (name == "disk") return ShapeKind::Disk;
    if (name == "rectangle" || name == "rect") return ShapeKind::Rectangle;
    if (name == "annulus") return ShapeKind::Annulus;
    if (name == "two_blobs") return ShapeKind::TwoBlobs;
    throw BadParams("unknown shape kind '" + name + "'");
}

namespace {

void require_count(const std::vector<double>& params, std::size_t n, const char* kind) {
    if (params.size() != n)
        throw BadParams(std::string(kind) + " takes " + std::to_string(n) + " parameters");
}

void require_inside(double x0, double y0, double x1, double y1, int w, int h) {
    if (x0 < -0.5 || y0 < -0.5 || x1 > w - 0.5 || y1 > h - 0.5)
        throw BadParams("shape exceeds the image bounds");
}

void require_disk(double cx, double cy, double r, int w, int h) {
    if (!(r > 0.0)) throw BadParams("radius must be positive");
    require_inside(cx - r, cy - r, cx + r, cy + r, w, h);
}

}  // namespace

Image synth_shape(ShapeKind kind, int width, int height, double fg, double bg,
                  const std::vector<double>& params) {
    if (width < 1 || height < 1) throw BadParams("image dimensions must be positive");
    if (!(fg >= 0.0 && fg <= 1.0 && bg >= 0.0 && bg <= 1.0))
        throw BadParams("fg and bg must lie in [0, 1]");
    for (double v : params)
        if (!std::isfinite(v)) throw BadParams("shape parameters must be finite");

    auto in_disk = [](double x, double y, double cx, double cy, double r) {
        return std::hypot(x - cx, y - cy) < r;
    };
    std::function<bool(double, double)> inside;
    const auto& q = params;
    switch (kind) {
        case ShapeKind::Disk:
            require_count(q, 3, "disk");
            require_disk(q[0], q[1], q[2], width, height);
            inside = [=](double x, double y) { return in_disk(x, y, q[0], q[1], q[2]); };
            break;
        case ShapeKind::Rectangle:
            require_count(q, 4, "rectangle");
            if (!(q[2] > q[0] && q[3] > q[1])) throw BadParams("rectangle corners out of order");
            require_inside(q[0], q[1], q[2], q[3], width, height);
            inside = [=](double x, double y) {
                return q[0] <= x && x <= q[2] && q[1] <= y && y <= q[3];
            };
            break;
        case ShapeKind::Annulus:
            require_count(q, 4, "annulus");
            if (!(q[2] >= 0.0 && q[3] > q[2])) throw BadParams("annulus radii out of order");
            require_disk(q[0], q[1], q[3], width, height);
            inside = [=](double x, double y) {
                const double d = std::hypot(x - q[0], y - q[1]);
                return q[2] <= d && d < q[3];
            };
            break;
        case ShapeKind::TwoBlobs:
            require_count(q, 6, "two_blobs");
            require_disk(q[0], q[1], q[2], width, height);
            require_disk(q[3], q[4], q[5], width, height);
            inside = [=](double x, double y) {
                return in_disk(x, y, q[0], q[1], q[2]) || in_disk(x, y, q[3], q[4], q[5]);
            };
            break;
    }

    Image img(width, height, 1, Colorspace::Gray, bg);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (inside(x, y)) img.at(x, y) = fg;
    return img;
}

Image add_gaussian_noise(const Image& img, double sd_255, Rng& rng) {
    if (!(sd_255 >= 0.0)) throw BadParams("noise SD must be non-negative");
    Image out = img;
    if (sd_255 == 0.0) return out;
    const double sd = sd_255 / 255.0;
    for (double& v : out.data) v = std::clamp(v + sd * rng.gaussian(), 0.0, 1.0);
    return out;
}

}  // namespace msseg
