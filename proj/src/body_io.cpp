#include "minkoscope/body_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "minkoscope/errors.hpp"

namespace mink {

using nlohmann::json;

namespace {

// fixed short round-trip formatting keeps CSV output byte-stable
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json vec_to_json(const Vec2& v) { return json::array({v.x, v.y}); }

const json& field(const json& j, const char* name) {
    const auto it = j.find(name);
    if (it == j.end())
        throw invalid_argument(std::string("missing field \"") + name + "\"");
    return *it;
}

double number_field(const json& j, const char* name) {
    const json& f = field(j, name);
    if (!f.is_number())
        throw invalid_argument(std::string("field \"") + name + "\" must be a number");
    return f.get<double>();
}

Vec2 vec_field(const json& f, const char* name) {
    if (!f.is_array() || f.size() != 2 || !f[0].is_number() || !f[1].is_number())
        throw invalid_argument(std::string("field \"") + name +
                               "\" must be a pair of numbers");
    return {f[0].get<double>(), f[1].get<double>()};
}

}  // namespace

json body_to_json(const ConvexBody& body) {
    json j;
    switch (body.variant()) {
    case Variant::Disk:
        j["variant"] = "disk";
        j["radius"] = body.disk_radius();
        break;
    case Variant::Ellipse: {
        const SymMat2& m = body.ellipse_matrix();
        j["variant"] = "ellipse";
        j["matrix"] = json::array({m.a, m.b, m.c});
        break;
    }
    case Variant::Polygon: {
        j["variant"] = "polygon";
        json verts = json::array();
        for (const Vec2& v : body.vertices()) verts.push_back(vec_to_json(v));
        j["vertices"] = std::move(verts);
        break;
    }
    case Variant::LpBall:
        j["variant"] = "lp";
        if (std::isinf(body.lp_exponent()))
            j["p"] = "inf";
        else
            j["p"] = body.lp_exponent();
        j["scale"] = body.lp_scale();
        break;
    case Variant::Sampled: {
        j["variant"] = "sampled";
        j["smooth"] = body.smooth();
        j["support"] = body.sample_support();
        json pts = json::array();
        for (const Vec2& g : body.sample_points()) pts.push_back(vec_to_json(g));
        j["points"] = std::move(pts);
        break;
    }
    }
    return j;
}

ConvexBody body_from_json(const json& j) {
    if (!j.is_object()) throw invalid_argument("body must be a JSON object");
    const json& v = field(j, "variant");
    if (!v.is_string())
        throw invalid_argument("field \"variant\" must be a string");
    const std::string variant = v.get<std::string>();

    if (variant == "disk") {
        const double r = number_field(j, "radius");
        if (r <= 0) throw invalid_argument("field \"radius\" must be positive");
        return ConvexBody::disk(r);
    }
    if (variant == "ellipse") {
        if (j.contains("matrix")) {
            const json& m = field(j, "matrix");
            if (!m.is_array() || m.size() != 3)
                throw invalid_argument("field \"matrix\" must be [a, b, c]");
            return ConvexBody::ellipse({m[0].get<double>(), m[1].get<double>(),
                                        m[2].get<double>()});
        }
        const double a = number_field(j, "a");
        const double b = number_field(j, "b");
        if (a <= 0 || b <= 0)
            throw invalid_argument("fields \"a\" and \"b\" must be positive semi-axes");
        return ConvexBody::ellipse_axes(a, b);
    }
    if (variant == "polygon") {
        const json& verts = field(j, "vertices");
        if (!verts.is_array() || verts.empty())
            throw invalid_argument("field \"vertices\" must be a non-empty array");
        std::vector<Vec2> pts;
        pts.reserve(verts.size());
        for (const json& p : verts) pts.push_back(vec_field(p, "vertices"));
        return ConvexBody::polygon(std::move(pts));
    }
    if (variant == "lp") {
        const json& p = field(j, "p");
        const double scale = j.contains("scale") ? number_field(j, "scale") : 1.0;
        if (scale <= 0) throw invalid_argument("field \"scale\" must be positive");
        if (p.is_string()) {
            if (p.get<std::string>() != "inf")
                throw invalid_argument("field \"p\" must be a number or \"inf\"");
            return ConvexBody::lp_ball_inf(scale);
        }
        if (!p.is_number()) throw invalid_argument("field \"p\" must be a number or \"inf\"");
        return ConvexBody::lp_ball(p.get<double>(), scale);
    }
    if (variant == "sampled") {
        const json& h = field(j, "support");
        const json& g = field(j, "points");
        if (!h.is_array() || !g.is_array() || h.size() != g.size())
            throw invalid_argument("fields \"support\" and \"points\" must be arrays of equal length");
        std::vector<double> hv;
        std::vector<Vec2> gv;
        hv.reserve(h.size());
        gv.reserve(g.size());
        for (const json& x : h) {
            if (!x.is_number())
                throw invalid_argument("field \"support\" must contain numbers");
            hv.push_back(x.get<double>());
        }
        for (const json& x : g) gv.push_back(vec_field(x, "points"));
        const bool smooth = j.contains("smooth") ? field(j, "smooth").get<bool>() : true;
        return ConvexBody::sampled(std::move(hv), std::move(gv), smooth);
    }
    throw invalid_argument("field \"variant\" must be one of disk, ellipse, polygon, lp, sampled");
}

StringSpec string_spec_from_json(const json& j) {
    if (!j.is_object()) throw invalid_argument("string spec must be a JSON object");
    StringSpec spec{body_from_json(field(j, "caustic")), body_from_json(field(j, "metric")),
                    number_field(j, "length")};
    return spec;
}

json duality_report_to_json(const DualityReport& rep) {
    return json{{"tangency_error", rep.max_tangency_error},
                {"perimeters", json::array({rep.perimeter_C, rep.perimeter_C_dual})},
                {"lazutkin", json::array({rep.lazutkin_C, rep.lazutkin_C_dual})},
                {"rotation", json::array({rep.rotation_C, rep.rotation_C_dual})},
                {"verdict", rep.dual ? "dual" : "not-dual"}};
}

json invariant_summary_to_json(const InvariantSummary& s) {
    return json{{"omega", s.omega},
                {"beta", s.beta},
                {"perimeter", s.perimeter},
                {"lazutkin", s.lazutkin},
                {"residuals",
                 json{{"identity", s.identity_residual},
                      {"perimeter_quadrature", std::fabs(s.perimeter - s.perimeter_quadrature)}}}};
}

json parameter_report_to_json(const ParameterReport& rep) {
    return json{{"table_side", invariant_summary_to_json(rep.table_side)},
                {"dual_side", invariant_summary_to_json(rep.dual_side)},
                {"perimeter_gap", rep.perimeter_gap},
                {"lazutkin_gap", rep.lazutkin_gap},
                {"rotation_gap", rep.rotation_gap}};
}

json caustic_report_to_json(const CausticReport& rep) {
    return json{{"is_caustic", rep.is_caustic},
                {"max_deviation", rep.max_deviation},
                {"dynamic_deviation", rep.dynamic_deviation},
                {"mean_length", rep.mean_length}};
}

json counterexample_summary_to_json(const CounterexampleTable& table) {
    json rows = json::array();
    for (const CounterexampleRow& r : table.rows)
        rows.push_back(json{{"n", r.n},
                            {"p", r.p},
                            {"eps", r.eps},
                            {"gap", r.gap},
                            {"limit_gap", r.limit_gap},
                            {"violation", r.violation},
                            {"flat_fails", r.flat_fails}});
    return json{{"rows", std::move(rows)}, {"no_dual_caustic", table.no_dual_caustic}};
}

std::string trajectory_csv(const TrajectoryRecord& rec) {
    std::ostringstream out;
    out << "n,q1,q2,p1,p2,r,s,seg_len\n";
    for (size_t n = 0; n < rec.q.size(); ++n) {
        out << n << ',' << num(rec.q[n].x) << ',' << num(rec.q[n].y) << ','
            << num(rec.p[n].x) << ',' << num(rec.p[n].y) << ',' << num(rec.r[n]) << ','
            << num(rec.s[n]) << ',' << num(rec.seg[n]) << '\n';
    }
    return out.str();
}

std::string counterexample_csv(const CounterexampleTable& table) {
    std::ostringstream out;
    out << "n,p,eps,gap,limit_gap,violation,verdict\n";
    for (const CounterexampleRow& r : table.rows) {
        out << r.n << ',' << num(r.p) << ',' << num(r.eps) << ',' << num(r.gap) << ','
            << num(r.limit_gap) << ',' << num(r.violation) << ','
            << (r.flat_fails ? "flat-impossible" : "open") << '\n';
    }
    return out.str();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_argument("cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_argument("cannot open output file: " + path);
    out << text;
}

}  // namespace mink
