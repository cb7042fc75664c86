#include "msseg/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "msseg/color.hpp"
#include "msseg/errors.hpp"
#include "msseg/svg.hpp"

namespace msseg::cli {

namespace {

const std::map<std::string, Mode> kModes{{"gray", Mode::Gray}, {"rgb", Mode::Rgb}, {"lab", Mode::Lab}};

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

// Returns (image to segment, image to draw under the overlays).
std::pair<Image, Image> load_input(const std::filesystem::path& path, Mode mode) {
    Image raw = read_pnm(path);
    switch (mode) {
        case Mode::Gray:
            return {raw.space == Colorspace::Rgb ? to_gray(raw) : raw, raw};
        case Mode::Rgb:
            if (raw.space != Colorspace::Rgb) throw WrongColorspace("rgb mode needs a color (P3/P6) input");
            return {raw, raw};
        case Mode::Lab:
            if (raw.space != Colorspace::Rgb) throw WrongColorspace("lab mode needs a color (P3/P6) input");
            return {srgb_to_lab(raw), raw};
    }
    return {raw, raw};
}

Polygon initial_polygon(const std::optional<std::array<double, 3>>& circle,
                        const std::optional<std::filesystem::path>& poly, int n) {
    if (circle.has_value() == poly.has_value())
        throw BadParams("give exactly one of --init-circle and --init-poly");
    if (circle) return init_circle({(*circle)[0], (*circle)[1]}, (*circle)[2], n);
    return read_polygon(*poly);
}

Image mask_to_image(const Mask& m) {
    Image img(m.width, m.height, 1, Colorspace::Gray);
    for (std::size_t i = 0; i < m.inside.size(); ++i) img.data[i] = m.inside[i] ? 1.0 : 0.0;
    return img;
}

std::string polygon_text(const Polygon& p) {
    std::ostringstream s;
    write_polygon(s, p);
    return s.str();
}

std::string trace_text(std::span<const TraceRow> trace) {
    std::ostringstream s;
    write_trace_csv(s, trace);
    return s.str();
}

}  // namespace

int cmd_segment(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.snapshot_every < 0) throw BadParams("--snapshot-every must be non-negative");
        const auto loaded = load_input(cfg.input, cfg.mode);
        const Image& img = loaded.first;
        const Image& shown = loaded.second;
        const Polygon p0 = ensure_ccw(initial_polygon(cfg.init_circle, cfg.init_poly, cfg.evolve.n_vertices));
        std::filesystem::create_directories(cfg.out_dir);

        const bool color = cfg.mode != Mode::Gray;
        const std::string c_init = color ? "blue" : "lime";
        const std::string c_final = color ? "red" : "yellow";
        const std::string c_snap = "orange";

        std::vector<std::pair<int, Polygon>> snapshots;
        auto observer = [&](int iter, const Polygon& p) {
            const int k = iter + 1;
            if (cfg.snapshot_every <= 0 || k % cfg.snapshot_every != 0) return;
            snapshots.emplace_back(k, p);
            const StrokedPolygon curves[] = {{&p0, c_init, 1.0}, {&p, c_snap, 1.0}};
            write_text(cfg.out_dir / ("snapshot_" + std::to_string(k) + ".svg"),
                       overlay_svg(shown, curves, cfg.overlay_href));
        };

        SegmentationResult res = [&] {
            try {
                return run(img, p0, cfg.evolve, observer);
            } catch (const ContourCollapsed& e) {
                write_text(cfg.out_dir / "trace.csv", trace_text(e.trace()));
                throw;
            }
        }();

        write_text(cfg.out_dir / "trace.csv", trace_text(res.trace));
        write_text(cfg.out_dir / "final_polygon.txt", polygon_text(res.final_polygon));
        write_pnm(mask_to_image(res.final_mask), cfg.out_dir / "final_mask.pgm", true);

        std::vector<StrokedPolygon> curves{{&p0, c_init, 1.5}};
        for (const auto& s : snapshots) curves.push_back({&s.second, c_snap, 0.5});
        curves.push_back({&res.final_polygon, c_final, 1.5});
        write_text(cfg.out_dir / "overlay.svg", overlay_svg(shown, curves, cfg.overlay_href));
        write_text(cfg.out_dir / "energy.svg", energy_svg(res.trace, cfg.evolve.eta));

        const TraceRow& last = res.trace.back();
        char buf[256];
        std::snprintf(buf, sizeof buf, "iterations %d converged %s simple %s energy %.9g area %.6g\n",
                      res.iterations_run, res.converged ? "yes" : "no", res.simple ? "yes" : "no",
                      last.total, polygon_area(res.final_polygon));
        out << buf;
        return kOk;
    } catch (const EmptyRegion& e) {
        err << "msseg: contour collapsed: " << e.what() << '\n';
        return kCollapse;
    } catch (const Error& e) {
        err << "msseg: " << e.what() << '\n';
        return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "msseg: " << e.what() << '\n';
        return kUsage;
    }
}

int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
    try {
        Image img = synth_shape(args.kind, args.width, args.height, args.fg, args.bg, args.params);
        if (args.noise_sd > 0.0) {
            Rng rng(args.seed);
            img = add_gaussian_noise(img, args.noise_sd, rng);
        }
        write_pnm(img, args.out, !args.ascii);
        out << "wrote " << args.out.string() << '\n';
        return kOk;
    } catch (const Error& e) {
        err << "msseg: " << e.what() << '\n';
        return kUsage;
    }
}

int cmd_gradcheck(const GradcheckArgs& args, std::ostream& out, std::ostream& err) {
    try {
        const Image img = load_input(args.input, args.mode).first;
        const Polygon p = ensure_ccw(initial_polygon(args.init_circle, args.init_poly, args.vertices));
        const GradientCheck chk =
            gradient_check(img, p, args.eta, args.factor, args.h, args.min_magnitude, args.negate);
        char buf[256];
        out << "vertex analytic numeric rel_error\n";
        for (std::size_t i = 0; i < p.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%zu %.9e %.9e %.6f\n", i, chk.analytic[i], chk.numeric[i],
                          chk.rel_error[i]);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, "max_rel_error %.6f over %zu vertices (threshold %.3g)\n",
                      chk.max_rel_error, chk.checked, args.threshold);
        out << buf;
        return chk.max_rel_error < args.threshold ? kOk : kCheckFailed;
    } catch (const EmptyRegion& e) {
        err << "msseg: " << e.what() << '\n';
        return kCollapse;
    } catch (const Error& e) {
        err << "msseg: " << e.what() << '\n';
        return kUsage;
    }
}

namespace {

void add_init_options(CLI::App* sub, std::vector<double>& circle, std::string& poly) {
    sub->add_option("--init-circle", circle, "initial circle CX,CY,R")->delimiter(',')->expected(3);
    sub->add_option("--init-poly", poly, "initial polygon file (x y per line)");
}

std::optional<std::array<double, 3>> to_circle(const std::vector<double>& v) {
    if (v.empty()) return std::nullopt;
    return std::array<double, 3>{v[0], v[1], v[2]};
}

std::optional<std::filesystem::path> to_path(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::filesystem::path(s);
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-region piecewise-constant segmentation by explicit polygon evolution"};
    app.require_subcommand(1);

    RunConfig seg;
    std::string seg_input, seg_poly, seg_out = ".", seg_href;
    std::vector<double> seg_circle;
    double seg_dt = 0.0;
    bool seg_adaptive = false;
    bool seg_explicit = false;
    auto* segment = app.add_subcommand("segment", "evolve a polygon on an image");
    segment->add_option("--input", seg_input, "input PGM/PPM")->required();
    segment->add_option("--mode", seg.mode, "gray, rgb or lab")
        ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
    add_init_options(segment, seg_circle, seg_poly);
    segment->add_option("--eta", seg.evolve.eta, "perimeter weight");
    segment->add_option("--dt", seg_dt, "fixed step; with --dt-adaptive an upper bound on the adaptive step");
    segment->add_flag("--dt-adaptive", seg_adaptive, "adaptive step (default unless --dt is given)");
    segment->add_option("--max-step", seg.evolve.max_step, "largest vertex move of an adaptive step, px");
    segment->add_flag("--explicit-curvature", seg_explicit,
                      "step the curvature term explicitly (stable only below the cfl limit)");
    segment->add_option("--iters", seg.evolve.max_iters, "iteration budget");
    segment->add_option("--e-thr", seg.evolve.e_thr, "relative energy-change threshold");
    segment->add_option("--window", seg.evolve.window, "energy averaging window");
    segment->add_option("--vertices", seg.evolve.n_vertices, "vertex count kept by resampling");
    segment->add_option("--resample-every", seg.evolve.resample_every, "resampling cadence");
    segment->add_option("--snapshot-every", seg.snapshot_every, "snapshot cadence, 0 disables");
    segment->add_option("--out", seg_out, "output directory");
    segment->add_option("--seed", seg.evolve.seed, "seed");
    segment->add_option("--overlay-href", seg_href, "reference the background image by this path");

    SynthArgs syn;
    std::string syn_kind = "disk", syn_out;
    auto* synth = app.add_subcommand("synth", "write a synthetic test image");
    synth->add_option("--kind", syn_kind, "disk, rectangle, annulus or two_blobs");
    synth->add_option("--width", syn.width, "width, px");
    synth->add_option("--height", syn.height, "height, px");
    synth->add_option("--fg", syn.fg, "foreground value in [0,1]");
    synth->add_option("--bg", syn.bg, "background value in [0,1]");
    synth->add_option("--params", syn.params, "shape parameters, comma separated")->delimiter(',');
    synth->add_option("--noise-sd", syn.noise_sd, "Gaussian noise SD on the 0..255 scale");
    synth->add_option("--seed", syn.seed, "noise seed");
    synth->add_flag("--ascii", syn.ascii, "write P2 instead of P5");
    synth->add_option("--out", syn_out, "output file")->required();

    GradcheckArgs gc;
    std::string gc_input, gc_poly;
    std::vector<double> gc_circle;
    auto* gradcheck = app.add_subcommand("gradcheck", "compare the shape gradient with finite differences");
    gradcheck->add_option("--input", gc_input, "input PGM/PPM")->required();
    gradcheck->add_option("--mode", gc.mode, "gray, rgb or lab")
        ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
    add_init_options(gradcheck, gc_circle, gc_poly);
    gradcheck->add_option("--vertices", gc.vertices, "vertex count for --init-circle");
    gradcheck->add_option("--eta", gc.eta, "perimeter weight");
    gradcheck->add_option("--factor", gc.factor, "supersampling factor");
    gradcheck->add_option("--fd-step", gc.h, "finite-difference displacement, px");
    gradcheck->add_option("--threshold", gc.threshold, "largest accepted relative error");
    gradcheck->add_option("--min-magnitude", gc.min_magnitude, "skip vertices with smaller derivatives");
    gradcheck->add_flag("--negate", gc.negate, "flip the analytic gradient (test hook)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    if (segment->parsed()) {
        seg.input = seg_input;
        seg.init_circle = to_circle(seg_circle);
        seg.init_poly = to_path(seg_poly);
        seg.out_dir = seg_out;
        if (!seg_href.empty()) seg.overlay_href = seg_href;
        seg.evolve.implicit_curvature = !seg_explicit;
        if (segment->count("--dt") > 0) {
            if (seg_adaptive) {
                seg.evolve.dt_cap = seg_dt;
            } else {
                seg.evolve.adaptive_dt = false;
                seg.evolve.dt = seg_dt;
            }
        }
        return cmd_segment(seg, out, err);
    }
    if (synth->parsed()) {
        try {
            syn.kind = parse_shape_kind(syn_kind);
        } catch (const Error& e) {
            err << "msseg: " << e.what() << '\n';
            return kUsage;
        }
        syn.out = syn_out;
        return cmd_synth(syn, out, err);
    }
    gc.input = gc_input;
    gc.init_circle = to_circle(gc_circle);
    gc.init_poly = to_path(gc_poly);
    return cmd_gradcheck(gc, out, err);
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    return main(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace msseg::cli
