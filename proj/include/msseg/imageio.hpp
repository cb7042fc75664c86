#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "msseg/image.hpp"

namespace msseg {

/// splitmix64 stream; identical seeds give identical sequences on every
/// platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed), seed_(seed) {}

    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via Box-Muller; the second variate of each pair is
    /// cached.
    double gaussian();

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t state_;
    std::uint64_t seed_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Reads P2/P3/P5/P6 with maxval up to 65535; samples are scaled to [0, 1].
Image read_pnm(const std::filesystem::path& path);
Image parse_pnm(const std::string& bytes);

/// Writes P5/P6 (binary) or P2/P3 (ASCII) with maxval 255.
void write_pnm(const Image& img, const std::filesystem::path& path, bool binary = true);
std::string encode_pnm(const Image& img, bool binary = true);

/// Rec. 709 luma on the stored (gamma-encoded) RGB values.
Image to_gray(const Image& img);

enum class ShapeKind { Disk, Rectangle, Annulus, TwoBlobs };

ShapeKind parse_shape_kind(const std::string& name);

/// Indicator image evaluated at pixel centers, fg inside the shape and bg
/// elsewhere. Parameters by kind:
///   disk       cx, cy, r                (inside: distance < r)
///   rectangle  x0, y0, x1, y1           (inside: x0 <= x <= x1, y0 <= y <= y1)
///   annulus    cx, cy, r_inner, r_outer (inside: r_inner <= distance < r_outer)
///   two_blobs  cx1, cy1, r1, cx2, cy2, r2 (union of two disks)
/// Throws BadParams if the shape leaves the pixel area [-0.5, W-0.5] x [-0.5, H-0.5].
Image synth_shape(ShapeKind kind, int width, int height, double fg, double bg,
                  const std::vector<double>& params);

/// value + N(0, sd_255 / 255), clamped to [0, 1].
Image add_gaussian_noise(const Image& img, double sd_255, Rng& rng);

}  // namespace msseg
