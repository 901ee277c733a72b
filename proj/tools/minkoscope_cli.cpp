#include <algorithm>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "minkoscope/billiard.hpp"
#include "minkoscope/body_io.hpp"
#include "minkoscope/caustic_duality.hpp"
#include "minkoscope/caustic_invariants.hpp"
#include "minkoscope/convex_body.hpp"
#include "minkoscope/counterexample.hpp"
#include "minkoscope/errors.hpp"
#include "minkoscope/string_construction.hpp"
#include "minkoscope/oriented_line.hpp"
#include "minkoscope/svg.hpp"
#include "minkoscope/tangents.hpp"

using namespace mink;
using nlohmann::json;

namespace {

void emit_error(const std::string& code, const std::string& message) {
    std::cerr << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
}

void write_output(const std::string& out, const std::string& text) {
    if (out.empty())
        std::cout << text;
    else
        write_text_file(out, text);
}

ConvexBody load_body(const std::string& path) { return body_from_json(load_json_file(path)); }

// columns q1, q2 of a trajectory CSV, for overlay rendering
std::vector<Vec2> load_trajectory_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_argument("cannot open input file: " + path);
    std::vector<Vec2> pts;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> cols;
        while (std::getline(row, cell, ',')) cols.push_back(std::stod(cell));
        if (cols.size() < 3) throw invalid_argument("trajectory CSV rows need q1, q2 columns");
        pts.push_back({cols[1], cols[2]});
    }
    return pts;
}

struct StringConstructArgs {
    std::string spec_path, out, svg_path, format = "json";
    double length = 0.0;
    bool length_set = false;
    int resolution = 1024;
};

int cmd_string_construct(const StringConstructArgs& a) {
    StringSpec spec = string_spec_from_json(load_json_file(a.spec_path));
    if (a.length_set) spec.length = a.length;
    const ConvexBody K = string_construct(spec, a.resolution);
    if (a.format == "svg") {
        SvgScene scene;
        scene.add_body(spec.caustic, "#888888");
        scene.add_body(K);
        write_output(a.out, scene.render());
    } else {
        write_output(a.out, body_to_json(K).dump(2) + "\n");
    }
    if (!a.svg_path.empty()) {
        SvgScene scene;
        scene.add_body(spec.caustic, "#888888");
        scene.add_body(K);
        write_text_file(a.svg_path, scene.render());
    }
    return 0;
}

struct SimulateArgs {
    std::string table, metric, out;
    double t0 = 0.0, s0 = 0.5;
    int iterations = 100000, resolution = 1024;
};

int cmd_simulate(const SimulateArgs& a) {
    const ConvexBody K = load_body(a.table);
    const ConvexBody T = a.metric.empty() ? ConvexBody::disk(1.0) : load_body(a.metric);
    const BilliardConfig config(K, T, a.resolution);
    const OrientedLine start = line_of_annulus(config, a.t0, a.s0);
    const TrajectoryRecord rec = iterate_trajectory(config, start, a.iterations);
    write_output(a.out, trajectory_csv(rec));
    return 0;
}

struct DualArgs {
    std::string table, caustic, metric, candidate, out;
    int resolution = 1024, samples = 256, iterations = 100000;
    double tol = 1e-6;
};

int cmd_dual(const DualArgs& a) {
    const ConvexBody K = load_body(a.table);
    const ConvexBody C = load_body(a.caustic);
    const ConvexBody T = a.metric.empty() ? ConvexBody::disk(1.0) : load_body(a.metric);

    ConvexBody dual = ConvexBody::point({0, 0});
    if (!a.candidate.empty()) {
        dual = load_body(a.candidate);
    } else if (C.variant() == Variant::Polygon && !C.degenerate()) {
        dual = dual_caustic_polygon(K, C);
    } else {
        dual = dual_caustic_smooth(K, C, a.resolution);
    }

    json out{{"dual", body_to_json(dual)}};
    bool verdict = false;
    if (K.symmetric() && T.symmetric()) {
        const BilliardConfig config(K, T, a.resolution);
        const DualityReport rep =
            verify_duality(config, C, dual, a.samples, a.tol, a.iterations);
        out["report"] = duality_report_to_json(rep);
        verdict = rep.dual;
    } else {
        // no symmetric billiard configuration: report the static duality
        // evidence only (tangent lines of C map to supporting lines of C')
        double worst = 0.0;
        for (int i = 0; i < a.samples; ++i) {
            const Vec2 q =
                K.support_point(dir_of_angle(2.0 * std::numbers::pi * i / a.samples));
            const TangencyData d = tangency_data(K, C, q);
            const OrientedLine image =
                OrientedLine::through((d.e - q).normalized(), reflection_normal(d));
            worst = std::max(worst, line_tangency_error(image, dual));
        }
        verdict = worst <= a.tol;
        out["report"] = json{{"tangency_error", worst},
                             {"verdict", verdict ? "dual" : "not-dual"}};
    }
    write_output(a.out, out.dump(2) + "\n");
    return verdict ? 0 : 1;
}

struct InvariantsArgs {
    std::string table, metric, caustic, dual, out;
    int iterations = 100000, resolution = 1024;
};

int cmd_invariants(const InvariantsArgs& a) {
    const ConvexBody K = load_body(a.table);
    const ConvexBody T = a.metric.empty() ? ConvexBody::disk(1.0) : load_body(a.metric);
    const ConvexBody C = load_body(a.caustic);
    const BilliardConfig config(K, T, a.resolution);
    json out;
    if (a.dual.empty()) {
        out = invariant_summary_to_json(
            invariant_summary(config, C, a.iterations, a.resolution));
    } else {
        out = parameter_report_to_json(
            parameter_report(config, C, load_body(a.dual), a.iterations, a.resolution));
    }
    write_output(a.out, out.dump(2) + "\n");
    return 0;
}

struct VerifyArgs {
    std::string table, metric, caustic, out;
    int samples = 256, resolution = 1024;
    double tol = -1.0;  // negative selects the relative default
};

int cmd_verify(const VerifyArgs& a) {
    const ConvexBody K = load_body(a.table);
    const ConvexBody T = a.metric.empty() ? ConvexBody::disk(1.0) : load_body(a.metric);
    const ConvexBody C = load_body(a.caustic);
    const BilliardConfig config(K, T, a.resolution);
    const CausticReport rep = verify_caustic(config, C, a.samples, a.tol);
    write_output(a.out, caustic_report_to_json(rep).dump(2) + "\n");
    return rep.is_caustic ? 0 : 1;
}

struct CounterexampleArgs {
    std::vector<int> ns = {2, 4, 8, 16, 32};
    std::string out, summary, format = "csv";
    int resolution = 1024;
};

int cmd_counterexample(const CounterexampleArgs& a) {
    const CounterexampleTable table = counterexample_report(a.ns, a.resolution);
    if (a.format == "json")
        write_output(a.out, counterexample_summary_to_json(table).dump(2) + "\n");
    else
        write_output(a.out, counterexample_csv(table));
    if (!a.summary.empty())
        write_text_file(a.summary, counterexample_summary_to_json(table).dump(2) + "\n");
    return 0;
}

struct RenderArgs {
    std::vector<std::string> bodies, trajectories;
    std::string out;
};

int cmd_render(const RenderArgs& a) {
    if (a.bodies.empty() && a.trajectories.empty())
        throw invalid_argument("render needs at least one --body or --trajectory");
    SvgScene scene;
    for (const std::string& path : a.bodies) scene.add_body(load_body(path));
    for (const std::string& path : a.trajectories)
        scene.add_polyline(load_trajectory_points(path));
    write_output(a.out, scene.render());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar Minkowski billiards laboratory"};
    app.require_subcommand(1);
    long seed = 0;
    app.add_option("--seed", seed, "seed for randomized sweeps");

    StringConstructArgs sc;
    CLI::App* sub_sc = app.add_subcommand("string-construct",
                                          "grow a billiard table around a caustic");
    sub_sc->add_option("spec", sc.spec_path, "string spec JSON file")->required();
    sub_sc->add_option("--length", sc.length, "override the spec string length")
        ->each([&](const std::string&) { sc.length_set = true; });
    sub_sc->add_option("--resolution", sc.resolution)->check(CLI::Range(16, 1 << 20));
    sub_sc->add_option("--out", sc.out, "output path (stdout when omitted)");
    sub_sc->add_option("--svg", sc.svg_path, "also write an SVG figure");
    sub_sc->add_option("--format", sc.format)->check(CLI::IsMember({"json", "svg"}));

    SimulateArgs sim;
    CLI::App* sub_sim = app.add_subcommand("simulate", "iterate the billiard map");
    sub_sim->add_option("--table", sim.table)->required();
    sub_sim->add_option("--metric", sim.metric);
    sub_sim->add_option("--t0", sim.t0, "initial boundary parameter");
    sub_sim->add_option("--s0", sim.s0, "initial annulus ordinate")
        ->check(CLI::Range(-0.999999, 0.999999));
    sub_sim->add_option("--iterations", sim.iterations)->check(CLI::PositiveNumber);
    sub_sim->add_option("--resolution", sim.resolution)->check(CLI::Range(16, 1 << 20));
    sub_sim->add_option("--out", sim.out);

    DualArgs du;
    CLI::App* sub_du = app.add_subcommand("dual", "construct and verify the dual caustic");
    sub_du->add_option("--table", du.table)->required();
    sub_du->add_option("--caustic", du.caustic)->required();
    sub_du->add_option("--metric", du.metric, "metric body (Euclidean disk when omitted)");
    sub_du->add_option("--candidate", du.candidate,
                       "verify this candidate instead of constructing one");
    sub_du->add_option("--resolution", du.resolution)->check(CLI::Range(16, 1 << 20));
    sub_du->add_option("--samples", du.samples)->check(CLI::PositiveNumber);
    sub_du->add_option("--iterations", du.iterations)->check(CLI::PositiveNumber);
    sub_du->add_option("--tol", du.tol)->check(CLI::PositiveNumber);
    sub_du->add_option("--out", du.out);

    InvariantsArgs inv;
    CLI::App* sub_inv = app.add_subcommand("invariants", "caustic invariants report");
    sub_inv->add_option("--table", inv.table)->required();
    sub_inv->add_option("--metric", inv.metric);
    sub_inv->add_option("--caustic", inv.caustic)->required();
    sub_inv->add_option("--dual", inv.dual, "dual caustic for a two-sided report");
    sub_inv->add_option("--iterations", inv.iterations)->check(CLI::PositiveNumber);
    sub_inv->add_option("--resolution", inv.resolution)->check(CLI::Range(16, 1 << 20));
    sub_inv->add_option("--out", inv.out);

    VerifyArgs ver;
    CLI::App* sub_ver = app.add_subcommand("verify", "check the caustic property");
    sub_ver->add_option("--table", ver.table)->required();
    sub_ver->add_option("--metric", ver.metric);
    sub_ver->add_option("--caustic", ver.caustic)->required();
    sub_ver->add_option("--samples", ver.samples)->check(CLI::PositiveNumber);
    sub_ver->add_option("--tol", ver.tol);
    sub_ver->add_option("--resolution", ver.resolution)->check(CLI::Range(16, 1 << 20));
    sub_ver->add_option("--out", ver.out);

    CounterexampleArgs ce;
    CLI::App* sub_ce = app.add_subcommand("counterexample", "smoothed-corner family report");
    sub_ce->add_option("--n", ce.ns, "family indices")->check(CLI::PositiveNumber);
    sub_ce->add_option("--resolution", ce.resolution)->check(CLI::Range(16, 1 << 20));
    sub_ce->add_option("--format", ce.format)->check(CLI::IsMember({"csv", "json"}));
    sub_ce->add_option("--summary", ce.summary, "also write the JSON summary here");
    sub_ce->add_option("--out", ce.out);

    RenderArgs ren;
    CLI::App* sub_ren = app.add_subcommand("render", "SVG figure of bodies and trajectories");
    sub_ren->add_option("--body", ren.bodies, "body JSON file (repeatable)");
    sub_ren->add_option("--trajectory", ren.trajectories, "trajectory CSV file (repeatable)");
    sub_ren->add_option("--out", ren.out);

    // let the global --seed be given after the subcommand name as well
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        emit_error("invalid-argument", e.what());
        return 2;
    }

    try {
        if (sub_sc->parsed()) return cmd_string_construct(sc);
        if (sub_sim->parsed()) return cmd_simulate(sim);
        if (sub_du->parsed()) return cmd_dual(du);
        if (sub_inv->parsed()) return cmd_invariants(inv);
        if (sub_ver->parsed()) return cmd_verify(ver);
        if (sub_ce->parsed()) return cmd_counterexample(ce);
        if (sub_ren->parsed()) return cmd_render(ren);
    } catch (const Error& e) {
        emit_error(e.code(), e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("internal-error", e.what());
        return 2;
    }
    return 0;
}
