#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "json.hpp"
#include "minkoscope/billiard.hpp"
#include "minkoscope/body_io.hpp"
#include "minkoscope/caustic_duality.hpp"
#include "minkoscope/caustic_invariants.hpp"
#include "minkoscope/convex_body.hpp"
#include "minkoscope/counterexample.hpp"
#include "minkoscope/errors.hpp"
#include "minkoscope/hausdorff.hpp"
#include "minkoscope/perimeter.hpp"
#include "minkoscope/string_construction.hpp"

namespace py = pybind11;
using namespace mink;

namespace {

using Pair = std::pair<double, double>;

Vec2 to_vec(const Pair& p) { return {p.first, p.second}; }
Pair to_pair(const Vec2& v) { return {v.x, v.y}; }

std::vector<Vec2> to_vecs(const std::vector<Pair>& pts) {
    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (const Pair& p : pts) out.push_back(to_vec(p));
    return out;
}

py::dict summary_dict(const InvariantSummary& s) {
    py::dict d;
    d["omega"] = s.omega;
    d["beta"] = s.beta;
    d["perimeter"] = s.perimeter;
    d["perimeter_quadrature"] = s.perimeter_quadrature;
    d["lazutkin"] = s.lazutkin;
    d["identity_residual"] = s.identity_residual;
    return d;
}

}  // namespace

PYBIND11_MODULE(_minkoscope, m) {
    m.doc() = "planar Minkowski billiards: convex bodies, caustics and their duals";

    py::register_exception<Error>(m, "MinkoscopeError");

    py::class_<ConvexBody>(m, "ConvexBody")
        .def_static("disk", &ConvexBody::disk, py::arg("radius"))
        .def_static("ellipse", &ConvexBody::ellipse_axes, py::arg("a"), py::arg("b"))
        .def_static(
            "polygon",
            [](const std::vector<Pair>& verts) { return ConvexBody::polygon(to_vecs(verts)); },
            py::arg("vertices"))
        .def_static(
            "segment",
            [](const Pair& a, const Pair& b) { return ConvexBody::segment(to_vec(a), to_vec(b)); },
            py::arg("a"), py::arg("b"))
        .def_static(
            "point", [](const Pair& p) { return ConvexBody::point(to_vec(p)); }, py::arg("p"))
        .def_static("lp_ball", &ConvexBody::lp_ball, py::arg("p"), py::arg("scale") = 1.0)
        .def_static("lp_ball_inf", &ConvexBody::lp_ball_inf, py::arg("scale") = 1.0)
        .def_static("from_json",
                    [](const std::string& text) {
                        return body_from_json(nlohmann::json::parse(text));
                    })
        .def("to_json", [](const ConvexBody& b) { return body_to_json(b).dump(); })
        .def("support", [](const ConvexBody& b, const Pair& u) { return b.support(to_vec(u)); })
        .def("support_point",
             [](const ConvexBody& b, const Pair& u) { return to_pair(b.support_point(to_vec(u))); })
        .def("gauge", [](const ConvexBody& b, const Pair& x) { return b.gauge(to_vec(x)); })
        .def("contains",
             [](const ConvexBody& b, const Pair& x, double tol) {
                 return b.contains(to_vec(x), tol);
             },
             py::arg("x"), py::arg("tol") = 1e-9)
        .def("polar", &ConvexBody::polar)
        .def("scaled", &ConvexBody::scaled)
        .def_property_readonly("smooth", &ConvexBody::smooth)
        .def_property_readonly("symmetric", &ConvexBody::symmetric)
        .def_property_readonly("vertices", [](const ConvexBody& b) {
            std::vector<Pair> out;
            for (const Vec2& v : b.vertices()) out.push_back(to_pair(v));
            return out;
        });

    m.def("hausdorff_distance", &hausdorff_distance, py::arg("a"), py::arg("b"));
    m.def("minkowski_perimeter", &minkowski_perimeter, py::arg("body"), py::arg("metric"));
    m.def(
        "string_length",
        [](const ConvexBody& C, const ConvexBody& T, const Pair& q) {
            return string_length(C, T, to_vec(q));
        },
        py::arg("caustic"), py::arg("metric"), py::arg("q"));
    m.def(
        "string_construct",
        [](const ConvexBody& C, const ConvexBody& T, double L, int resolution) {
            return string_construct({C, T, L}, resolution);
        },
        py::arg("caustic"), py::arg("metric"), py::arg("length"), py::arg("resolution") = 1024);

    py::class_<BilliardConfig>(m, "BilliardConfig")
        .def(py::init<ConvexBody, ConvexBody, int>(), py::arg("table"), py::arg("metric"),
             py::arg("resolution") = 1024)
        .def_property_readonly("table", &BilliardConfig::K)
        .def_property_readonly("metric", &BilliardConfig::T)
        .def_property_readonly("perimeter", &BilliardConfig::P);

    m.def(
        "iterate_trajectory",
        [](const BilliardConfig& config, double t0, double s0, int N) {
            const TrajectoryRecord rec =
                iterate_trajectory(config, line_of_annulus(config, t0, s0), N);
            py::dict d;
            std::vector<Pair> q, p;
            for (const Vec2& v : rec.q) q.push_back(to_pair(v));
            for (const Vec2& v : rec.p) p.push_back(to_pair(v));
            d["q"] = q;
            d["p"] = p;
            d["r"] = rec.r;
            d["s"] = rec.s;
            d["seg"] = rec.seg;
            d["truncated"] = rec.truncated;
            return d;
        },
        py::arg("config"), py::arg("t0"), py::arg("s0"), py::arg("iterations"));

    m.def(
        "verify_caustic",
        [](const BilliardConfig& config, const ConvexBody& C, int samples, double tol) {
            const CausticReport rep = verify_caustic(config, C, samples, tol);
            py::dict d;
            d["is_caustic"] = rep.is_caustic;
            d["max_deviation"] = rep.max_deviation;
            d["dynamic_deviation"] = rep.dynamic_deviation;
            d["mean_length"] = rep.mean_length;
            return d;
        },
        py::arg("config"), py::arg("caustic"), py::arg("samples") = 256, py::arg("tol") = -1.0);

    m.def(
        "invariant_summary",
        [](const BilliardConfig& config, const ConvexBody& C, int N, int resolution) {
            return summary_dict(invariant_summary(config, C, N, resolution));
        },
        py::arg("config"), py::arg("caustic"), py::arg("iterations") = 100000,
        py::arg("resolution") = 1024);

    m.def("dual_caustic_smooth", &dual_caustic_smooth, py::arg("table"), py::arg("caustic"),
          py::arg("resolution") = 1024);
    m.def("dual_caustic_polygon", &dual_caustic_polygon, py::arg("table"), py::arg("caustic"));
    m.def(
        "verify_duality",
        [](const BilliardConfig& config, const ConvexBody& C, const ConvexBody& Cd, int samples,
           double tol, int N) {
            const DualityReport rep = verify_duality(config, C, Cd, samples, tol, N);
            py::dict d;
            d["tangency_error"] = rep.max_tangency_error;
            d["perimeters"] = std::pair(rep.perimeter_C, rep.perimeter_C_dual);
            d["lazutkin"] = std::pair(rep.lazutkin_C, rep.lazutkin_C_dual);
            d["rotation"] = std::pair(rep.rotation_C, rep.rotation_C_dual);
            d["dual"] = rep.dual;
            return d;
        },
        py::arg("config"), py::arg("caustic"), py::arg("dual"), py::arg("samples") = 256,
        py::arg("tol") = 1e-6, py::arg("iterations") = 100000);

    m.def(
        "counterexample_report",
        [](const std::vector<int>& ns, int resolution) {
            const CounterexampleTable table = counterexample_report(ns, resolution);
            py::list rows;
            for (const CounterexampleRow& r : table.rows) {
                py::dict d;
                d["n"] = r.n;
                d["p"] = r.p;
                d["eps"] = r.eps;
                d["gap"] = r.gap;
                d["limit_gap"] = r.limit_gap;
                d["violation"] = r.violation;
                d["flat_fails"] = r.flat_fails;
                rows.append(d);
            }
            py::dict out;
            out["rows"] = rows;
            out["no_dual_caustic"] = table.no_dual_caustic;
            return out;
        },
        py::arg("ns"), py::arg("resolution") = 1024);
}
