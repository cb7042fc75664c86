#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "msseg/energy.hpp"
#include "msseg/errors.hpp"
#include "msseg/geometry.hpp"
#include "msseg/image.hpp"
#include "msseg/raster.hpp"

namespace msseg {

struct EvolveConfig {
    int n_vertices = 100;
    double eta = 4e-4;
    /// When set, dt_k = min(dt_cap, max_step / max_i |speed_i|); otherwise dt is used as is.
    bool adaptive_dt = true;
    double dt = 1.0;
    /// Upper bound on the adaptive step; zero means none for the semi-implicit
    /// update, and cfl * h_min^2 / eta for the explicit one.
    double dt_cap = 0.0;
    double cfl = 0.25;
    /// Treat the eta-curvature term implicitly (one cyclic tridiagonal solve per
    /// coordinate). The explicit update is stable only below the cfl limit.
    bool implicit_curvature = true;
    /// The adaptive step is also held below stiffness / max_i k_i, where k_i > 0
    /// is the rate at which the region speed at vertex i grows as the vertex
    /// moves outward; this stops the contour from overshooting an edge. Zero
    /// disables the limit.
    double stiffness = 2.0;
    /// Largest vertex displacement of an adaptive step, px.
    double max_step = 0.5;
    int max_iters = 500;
    double e_thr = 1e-4;
    int resample_every = 10;
    int window = 10;
    std::uint64_t seed = 0;
    /// Halve dt (up to max_halvings times) when a step would break simplicity.
    bool safeguard = true;
    int max_halvings = 4;
    /// Fewer inside pixels than this aborts the run as a collapse.
    std::size_t min_inside = 16;

    /// Throws BadParams on an invalid combination.
    void validate() const;
};

struct TraceRow {
    int iter = 0;
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    double total = 0.0;
    double area = 0.0;
    double perimeter = 0.0;
    double max_disp = 0.0;
};

struct SegmentationResult {
    Polygon final_polygon;
    Mask final_mask;
    std::vector<TraceRow> trace;
    bool converged = false;
    int iterations_run = 0;
    /// Simplicity of the final polygon.
    bool simple = true;
    /// Steps accepted although they broke simplicity after all halvings.
    int flagged_steps = 0;
};

/// Raised when the contour shrinks below EvolveConfig::min_inside pixels or a
/// region empties; carries the trace recorded so far.
class ContourCollapsed : public EmptyRegion {
public:
    ContourCollapsed(const std::string& what, std::vector<TraceRow> trace,
                     std::optional<Polygon> last)
        : EmptyRegion(what), trace_(std::move(trace)), last_(std::move(last)) {}

    const std::vector<TraceRow>& trace() const { return trace_; }
    const std::optional<Polygon>& last_polygon() const { return last_; }

private:
    std::vector<TraceRow> trace_;
    std::optional<Polygon> last_;
};

/// Regular n-gon on the circle, counter-clockwise, starting at angle 0.
Polygon init_circle(Point2 center, double radius, int n);

/// v_i - dt * speed_i * n_i, clamped to [0, width-1] x [0, height-1].
Polygon step(const Polygon& p, const GradientField& g, double dt, int width, int height);

/// Moves vertices by dt * region speed explicitly and the eta-curvature term
/// implicitly: (I - dt*eta*L) v' = v - dt * region_i * n_i, with L the
/// arc-length second difference. Clamped like step().
Polygon step_semi_implicit(const Polygon& p, std::span<const double> region_speeds,
                           const NormalField& normals, double dt, double eta, int width, int height);

/// Largest restoring rate max_i k_i of the region speed under normal motion,
/// from the bilinear derivative of f along each normal. Zero on flat images.
double region_stiffness(const Image& img, const RegionMeans& m, const RegionStats& stats,
                        const Polygon& p, const NormalField& normals);

/// Adaptive step length for one iteration (see EvolveConfig). stiffness is the
/// value of region_stiffness for the current polygon.
double choose_dt(const Polygon& p, const GradientField& g, const EvolveConfig& cfg,
                 double stiffness = 0.0);

/// True iff at least 2*window rows exist and the mean total energy of the last
/// window differs from the previous window's by less than e_thr, relatively.
bool converged(std::span<const TraceRow> trace, double e_thr, int window);

/// Called after every iteration with the updated polygon.
using IterationObserver = std::function<void(int iter, const Polygon&)>;

/// Gradient-descent evolution of p0 on a gray or multi-channel image. For
/// multi-channel input the region gradients of all channels are summed.
SegmentationResult run(const Image& img, const Polygon& p0, const EvolveConfig& cfg,
                       const IterationObserver& observer = {});

/// CSV with header iter,e1,e2,e3,total,area,perimeter,max_disp.
void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace);

}  // namespace msseg
