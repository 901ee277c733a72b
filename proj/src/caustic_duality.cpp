#include "minkoscope/caustic_duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "minkoscope/boundary_param.hpp"
#include "minkoscope/caustic_invariants.hpp"
#include "minkoscope/errors.hpp"
#include "minkoscope/perimeter.hpp"
#include "minkoscope/string_construction.hpp"
#include "minkoscope/tangents.hpp"
#include "minkoscope/threads.hpp"

namespace mink {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// duality pair-agreement tolerances (perimeter, Lazutkin, rotation number)
constexpr double kPerimeterTol = 1e-4;
constexpr double kLazutkinTol = 1e-3;
constexpr double kRotationTol = 1e-4;

// constancy of the string length over the table boundary is the caustic
// criterion usable for non-symmetric tables as well
void require_constant_string(const StringEvaluator& eval, const BoundaryParam& param) {
    const int samples = 256;
    double fmin = std::numeric_limits<double>::infinity(), fmax = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double f = eval.length(param.point_at(param.total_length() * i / samples));
        fmin = std::min(fmin, f);
        fmax = std::max(fmax, f);
    }
    if (fmax - fmin > 1e-6 * fmax)
        throw not_a_caustic("string length is not constant on the table boundary");
}

}  // namespace

ConvexBody confocal_dual(double a, double b, double lambda) {
    if (!(lambda > 0.0) || !(lambda < b * b))
        throw invalid_confocal_parameter("confocal parameter must lie in (0, b^2)");
    return ConvexBody::ellipse_axes(std::sqrt(a * a - lambda) / a, std::sqrt(b * b - lambda) / b);
}

std::pair<double, double> discriminant_pair(double a, double b, double lambda, const Vec2& q,
                                            const Vec2& p) {
    const double da = a * a - lambda, db = b * b - lambda;
    const double M = q.x * p.x / da + q.y * p.y / db;
    const double A1 = p.x * p.x / da + p.y * p.y / db;
    const double C1 = lambda * (q.x * q.x / (a * a * da) + q.y * q.y / (b * b * db));
    const double A2 = q.x * q.x / (a * a * da) + q.y * q.y / (b * b * db);
    const double C2 = lambda * (p.x * p.x / da + p.y * p.y / db);
    return {4.0 * M * M - 4.0 * A1 * C1, 4.0 * M * M - 4.0 * A2 * C2};
}

Vec2 reflection_normal(const TangencyData& d) {
    // the outer table normal opposes the bisector of the two sight lines
    const Vec2 u = (d.e - d.q).normalized();
    const Vec2 v = (d.b - d.q).normalized();
    return -(u + v).normalized();
}

TangencyData tangency_data(const ConvexBody& K, const ConvexBody& C, const Vec2& q) {
    const TangentPair tp = tangent_points(C, q);
    TangencyData out;
    out.q = q;
    out.e = tp.e;
    out.b = tp.b;
    out.L = (q - tp.e).norm() + (q - tp.b).norm();
    const Vec2 tau = rot90(K.outer_normal(q));
    const double c = std::clamp(dot(tau, (tp.e - q).normalized()), -1.0, 1.0);
    out.theta = std::acos(c);
    out.w = (tp.e - tp.b) / out.L;
    return out;
}

TangencyDerivatives tangency_derivatives(const ConvexBody& K, const ConvexBody& C, const Vec2& q) {
    if (C.degenerate() || C.variant() == Variant::Polygon)
        throw unsupported_caustic("tangency derivatives need a caustic with curvature");
    const TangencyData d = tangency_data(K, C, q);
    const double sin_theta = std::sin(d.theta);
    const double ke = C.curvature_at(d.e);
    const double kb = C.curvature_at(d.b);
    const double E = (d.e - q).norm();
    const double B = (d.b - q).norm();
    TangencyDerivatives out;
    // tangent directions at the touching points align with the sight lines
    out.e_prime = (sin_theta / (ke * E)) * (d.e - q).normalized();
    out.b_prime = (sin_theta / (kb * B)) * (q - d.b).normalized();
    out.L_prime = sin_theta * (1.0 / (ke * E) - 1.0 / (kb * B));
    return out;
}

ConvexBody dual_caustic_smooth(const ConvexBody& K, const ConvexBody& C, int resolution) {
    if (resolution < 16) throw invalid_argument("dual sampling needs at least 16 points");
    const ConvexBody disk = ConvexBody::disk(1.0);
    const BoundaryParam param(K, disk);
    require_constant_string(StringEvaluator(C, disk), param);

    const double P = param.total_length();
    auto w_of = [&](double t) { return tangency_data(K, C, param.point_at(wrap(t, P))).w; };
    std::vector<Vec2> w(resolution);
    parallel_for(resolution, [&](int i) { w[i] = w_of(P * i / resolution); });

    // degenerate caustics produce a flat dual; snap slivers to a segment
    Vec2 lo = w[0], hi = w[0];
    auto lex = [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    };
    for (const Vec2& v : w) {
        if (lex(v, lo)) lo = v;
        if (lex(hi, v)) hi = v;
    }
    if ((hi - lo).norm() < 1e-12) throw not_a_caustic("dual sample collapsed to a point");
    const Vec2 axis = (hi - lo).normalized();
    double width = 0.0;
    for (const Vec2& v : w) width = std::max(width, std::fabs(cross(axis, v - lo)));
    if (width < 1e-9) return ConvexBody::segment(lo, hi);

    // refine the support grid with exact dual evaluations; the convex hull of
    // the raw samples alone would sag below the true boundary between them
    const int grid = ConvexBody::kSampledGrid;
    std::vector<double> hval(grid);
    std::vector<Vec2> hpt(grid);
    parallel_for(grid, [&](int k) {
        const Vec2 u = dir_of_angle(kTwoPi * k / grid);
        int best = 0;
        double bestv = dot(w[0], u);
        for (int i = 1; i < resolution; ++i) {
            const double v = dot(w[i], u);
            if (v > bestv) { bestv = v; best = i; }
        }
        double tlo = P * (best - 1) / resolution, thi = P * (best + 1) / resolution;
        for (int it = 0; it < 40; ++it) {
            const double m1 = tlo + (thi - tlo) / 3.0, m2 = thi - (thi - tlo) / 3.0;
            if (dot(w_of(m1), u) < dot(w_of(m2), u)) tlo = m1; else thi = m2;
        }
        const Vec2 cand = w_of(0.5 * (tlo + thi));
        hval[k] = std::max(bestv, dot(cand, u));
        hpt[k] = dot(cand, u) >= bestv ? cand : w[best];
    });
    // a polygonal caustic yields a polygonal dual whose support has kinks
    const bool smooth = C.smooth() && C.strictly_convex();
    return ConvexBody::sampled(std::move(hval), std::move(hpt), smooth);
}

PolygonDualResult dual_caustic_polygon_detailed(const ConvexBody& K, const ConvexBody& C,
                                                int scan) {
    if (C.variant() != Variant::Polygon)
        throw unsupported_caustic("the arc partition requires a polygonal caustic");
    if (scan < 64) throw invalid_argument("arc scan needs at least 64 samples");
    const ConvexBody disk = ConvexBody::disk(1.0);
    const BoundaryParam param(K, disk);
    require_constant_string(StringEvaluator(C, disk), param);
    const std::vector<Vec2>& verts = C.vertices();
    const int nv = static_cast<int>(verts.size());
    const double P = param.total_length();

    auto vertex_index = [&](const Vec2& x) {
        int best = 0;
        double bestd = (x - verts[0]).norm();
        for (int j = 1; j < nv; ++j) {
            const double d = (x - verts[j]).norm();
            if (d < bestd) { bestd = d; best = j; }
        }
        return best;
    };
    struct Pair { int e, b; };
    auto pair_at = [&](double t) {
        const TangentPair tp = tangent_points(C, param.point_at(t));
        return Pair{vertex_index(tp.e), vertex_index(tp.b)};
    };

    // boundary points straight from the support data; for sampled tables these
    // solve the boundary equation exactly while the arclength interpolation of
    // param.point_at drifts a few 1e-5 off the true curve
    const int m = ConvexBody::kSampledGrid / 8;
    auto exact_point = [&](int k) { return K.support_point(dir_of_angle(kTwoPi * k / m)); };

    if (nv == 2) {
        // the two arcs of a segment caustic meet where the sight line degenerates
        const Vec2 dir = (verts[1] - verts[0]).normalized();
        double above = 0.0, below = 0.0;
        for (int k = 0; k < m; ++k) {
            const double side = cross(dir, exact_point(k) - verts[0]);
            if (side > above) { above = side; }
            if (side < below) { below = side; }
        }
        auto w_of = [&](double target_sign) {
            const double reach = target_sign > 0 ? above : -below;
            for (int k = 0; k < m; ++k) {
                const Vec2 q = exact_point(k);
                const double side = cross(dir, q - verts[0]);
                if (side * target_sign > 0.6 * reach) {
                    const TangencyData d = tangency_data(K, C, q);
                    return d.w;
                }
            }
            throw not_a_caustic("segment caustic has no transversal boundary points");
        };
        PolygonDualResult res;
        const Vec2 w1 = w_of(+1.0), w2 = w_of(-1.0);
        res.dual = ConvexBody::segment(w1, w2);
        res.arcs = {{0, 1, 0.0, 0.0, w1}, {1, 0, 0.0, 0.0, w2}};
        return res;
    }

    // exact string function of a polygonal caustic: tangent lengths plus the
    // far boundary arc, all in closed form
    std::vector<double> cum(nv + 1, 0.0);
    for (int j = 0; j < nv; ++j) cum[j + 1] = cum[j] + (verts[(j + 1) % nv] - verts[j]).norm();
    const double perC = cum[nv];
    auto far_arc = [&](int e, int b) { return wrap(cum[b] - cum[e], perC); };
    auto string_value = [&](const Vec2& q) {
        const TangentPair tp = tangent_points(C, q);
        const int e = vertex_index(tp.e), b = vertex_index(tp.b);
        return (q - verts[e]).norm() + (q - verts[b]).norm() + far_arc(e, b);
    };
    double fbar = 0.0;
    for (int k = 0; k < m; ++k) fbar += string_value(exact_point(k));
    fbar /= m;

    // coarse pass: tangency vertex pair per sample
    std::vector<Pair> pairs(scan);
    parallel_for(scan, [&](int i) { pairs[i] = pair_at(P * i / scan); });

    PolygonDualResult res;
    int start = 0;
    while (start < scan && pairs[(start + scan - 1) % scan].e == pairs[start].e &&
           pairs[(start + scan - 1) % scan].b == pairs[start].b)
        ++start;
    if (start == scan) throw not_a_caustic("tangency pair never changes along the boundary");

    int i = start;
    do {
        const Pair cur = pairs[i];
        int j = i;
        while (pairs[(j + 1) % scan].e == cur.e && pairs[(j + 1) % scan].b == cur.b)
            j = (j + 1) % scan;
        // refine the junction between this arc and the next by bisection
        double lo = P * j / scan, hi = P * (j + 1) / scan;
        if (hi <= lo) hi += P;
        for (int it = 0; it < 48; ++it) {
            const double mid = 0.5 * (lo + hi);
            const Pair pm = pair_at(wrap(mid, P));
            if (pm.e == cur.e && pm.b == cur.b) lo = mid; else hi = mid;
        }
        const Pair next = pair_at(wrap(hi, P));
        if (next.e != cur.e && next.b != cur.b)
            throw degenerate_junction(
                "both tangency points switch at one junction; perturb the string length");

        PolygonDualArc arc;
        arc.e_index = cur.e;
        arc.b_index = cur.b;
        arc.t_begin = P * i / scan;
        arc.t_end = wrap(0.5 * (lo + hi), P);
        // on the whole arc the dual point is (e - b) / L with the constant
        // tangent-length sum L = fbar - far_arc; no boundary point needed
        arc.w = (verts[cur.e] - verts[cur.b]) / (fbar - far_arc(cur.e, cur.b));
        res.arcs.push_back(arc);

        // the junction lies on the line through the switching vertex pair;
        // slide along it until the string closes up at fbar
        const Vec2 va = verts[next.e != cur.e ? cur.e : cur.b];
        const Vec2 vb = verts[next.e != cur.e ? next.e : next.b];
        const Vec2 u = (vb - va).normalized();
        Vec2 qj = param.point_at(arc.t_end);
        qj = va + u * dot(qj - va, u);
        for (int it = 0; it < 50; ++it) {
            const TangentPair tp = tangent_points(C, qj);
            const Vec2 grad = (qj - tp.e).normalized() + (qj - tp.b).normalized();
            const double g = string_value(qj) - fbar;
            const double slope = dot(grad, u);
            if (std::fabs(slope) < 1e-6) break;
            qj = qj - u * (g / slope);
            if (std::fabs(g) < 1e-13 * fbar) break;
        }
        res.junction_points.push_back(qj);
        res.junction_normals.push_back(reflection_normal(tangency_data(K, C, qj)));
        i = (j + 1) % scan;
    } while (i != start && static_cast<int>(res.arcs.size()) <= 4 * nv + 8);
    if (i != start) throw not_a_caustic("arc partition did not close up");

    // junction_points[k] separates arcs[k] and arcs[k+1]
    std::vector<Vec2> poly;
    poly.reserve(res.arcs.size());
    for (const PolygonDualArc& a : res.arcs) poly.push_back(a.w);
    res.dual = ConvexBody::polygon(std::move(poly));
    return res;
}

ConvexBody dual_caustic_polygon(const ConvexBody& K, const ConvexBody& C) {
    return dual_caustic_polygon_detailed(K, C).dual;
}

DualityReport verify_duality(const BilliardConfig& config, const ConvexBody& C,
                             const ConvexBody& C_dual, int samples, double tol, int N) {
    if (samples < 3) throw invalid_argument("duality verification needs at least 3 samples");
    DualityReport rep;
    const double P = config.P();
    for (int i = 0; i < samples; ++i) {
        const Vec2 q = config.paramK().point_at(P * i / samples);
        try {
            const OrientedLine line = tangent_points(C, q).positive_line;
            const OrientedLine image = alpha(config, line, Side::K);
            rep.max_tangency_error =
                std::max(rep.max_tangency_error, line_tangency_error(image, C_dual));
        } catch (const Error&) {
            rep.max_tangency_error = std::max(rep.max_tangency_error, 1.0);
        }
    }

    bool parameters_ok = true;
    try {
        const InvariantSummary side = invariant_summary(config, C, N);
        rep.perimeter_C = side.perimeter;
        rep.lazutkin_C = side.lazutkin;
        rep.rotation_C = side.omega;
        const BilliardConfig swapped(config.T(), config.K());
        const InvariantSummary dual_side = invariant_summary(swapped, C_dual, N);
        rep.perimeter_C_dual = dual_side.perimeter;
        rep.lazutkin_C_dual = dual_side.lazutkin;
        rep.rotation_C_dual = dual_side.omega;
    } catch (const Error&) {
        parameters_ok = false;
    }
    rep.dual = parameters_ok && rep.max_tangency_error <= tol &&
               std::fabs(rep.perimeter_C - rep.perimeter_C_dual) <= kPerimeterTol &&
               std::fabs(rep.lazutkin_C - rep.lazutkin_C_dual) <= kLazutkinTol &&
               std::fabs(rep.rotation_C - rep.rotation_C_dual) <= kRotationTol;
    return rep;
}

}  // namespace mink
