#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "msseg/evolve.hpp"
#include "msseg/imageio.hpp"

namespace msseg::cli {

/// Process exit codes.
enum Exit : int { kOk = 0, kUsage = 1, kCollapse = 2, kCheckFailed = 3 };

enum class Mode { Gray, Rgb, Lab };

struct RunConfig {
    std::filesystem::path input;
    Mode mode = Mode::Gray;
    std::optional<std::array<double, 3>> init_circle;
    std::optional<std::filesystem::path> init_poly;
    EvolveConfig evolve;
    std::filesystem::path out_dir = ".";
    /// Write snapshot_<k>.svg every this many iterations; 0 disables.
    int snapshot_every = 0;
    /// Reference the background by this path instead of embedding it.
    std::optional<std::string> overlay_href;
};

struct SynthArgs {
    ShapeKind kind = ShapeKind::Disk;
    int width = 200;
    int height = 200;
    double fg = 0.9;
    double bg = 0.1;
    std::vector<double> params;
    double noise_sd = 0.0;
    std::uint64_t seed = 0;
    bool ascii = false;
    std::filesystem::path out;
};

struct GradcheckArgs {
    std::filesystem::path input;
    Mode mode = Mode::Gray;
    std::optional<std::array<double, 3>> init_circle;
    std::optional<std::filesystem::path> init_poly;
    int vertices = 40;
    double eta = 0.0;
    int factor = 16;
    double h = 0.25;
    double threshold = 0.1;
    double min_magnitude = 1e-4;
    /// Test hook: flips the analytic gradient so the check must fail.
    bool negate = false;
};

int cmd_segment(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err);
int cmd_gradcheck(const GradcheckArgs& args, std::ostream& out, std::ostream& err);

/// Parses argv (program name first) and dispatches to a subcommand.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msseg::cli
