#include "minkoscope/string_construction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "minkoscope/errors.hpp"
#include "minkoscope/oriented_line.hpp"
#include "minkoscope/perimeter.hpp"
#include "minkoscope/tangents.hpp"
#include "minkoscope/threads.hpp"

namespace mink {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// gradient of h_T at w: the maximizer of <x, w> over T
Vec2 grad_support(const ConvexBody& T, const Vec2& w) { return T.support_point(w); }
}  // namespace

StringEvaluator::StringEvaluator(ConvexBody caustic, ConvexBody metric)
    : C_(std::move(caustic)), T_(std::move(metric)) {
    if (!T_.symmetric()) throw unsupported_metric("string lengths require a symmetric metric body");
    per_ = minkowski_perimeter(C_, T_);
    if (C_.variant() == Variant::Polygon && C_.vertices().size() >= 3) {
        // exact arclength table; interpolation error here would bend the table
        const auto& v = C_.vertices();
        cum_.assign(v.size() + 1, 0.0);
        for (size_t j = 0; j < v.size(); ++j)
            cum_[j + 1] = cum_[j] + T_.support(v[(j + 1) % v.size()] - v[j]);
        per_ = cum_.back();
    } else if (!C_.degenerate()) {
        arc_ = std::make_shared<BoundaryParam>(C_, T_, 1 << 16);
    }
}

double StringEvaluator::length(const Vec2& q) const {
    if (C_.variant() == Variant::Polygon && C_.vertices().size() == 1)
        return 2.0 * T_.support(q - C_.vertices()[0]);
    if (C_.variant() == Variant::Polygon && C_.vertices().size() == 2) {
        const Vec2& a = C_.vertices()[0];
        const Vec2& b = C_.vertices()[1];
        // triangle traversal; collapses to the doubled segment when collinear
        return T_.support(q - a) + T_.support(q - b) + T_.support(b - a);
    }
    const TangentPair tp = tangent_points(C_, q);
    double te, tb, total;
    if (!cum_.empty()) {
        const auto& v = C_.vertices();
        auto param_of = [&](const Vec2& x) {
            size_t best = 0;
            double bestd = (x - v[0]).norm();
            for (size_t j = 1; j < v.size(); ++j) {
                const double d = (x - v[j]).norm();
                if (d < bestd) { bestd = d; best = j; }
            }
            return cum_[best];
        };
        te = param_of(tp.e);
        tb = param_of(tp.b);
        total = cum_.back();
    } else {
        te = arc_->param_of(tp.e);
        tb = arc_->param_of(tp.b);
        total = arc_->total_length();
    }
    const double far_arc = wrap(tb - te, total);
    return T_.support(tp.e - q) + T_.support(q - tp.b) + far_arc;
}

Vec2 StringEvaluator::gradient(const Vec2& q) const {
    Vec2 e, b;
    if (C_.degenerate()) {
        const auto& v = C_.vertices();
        e = v[0];
        b = v.back();
    } else {
        const TangentPair tp = tangent_points(C_, q);
        e = tp.e;
        b = tp.b;
    }
    return grad_support(T_, q - e) + grad_support(T_, q - b);
}

double string_length(const ConvexBody& C, const ConvexBody& T, const Vec2& q) {
    return StringEvaluator(C, T).length(q);
}

Vec2 string_gradient(const ConvexBody& C, const ConvexBody& T, const Vec2& q) {
    return StringEvaluator(C, T).gradient(q);
}

namespace {

// largest r with anchor + r * dir still inside the caustic
double radial_exit(const ConvexBody& C, const Vec2& anchor, const Vec2& dir, double span) {
    if (!C.contains(anchor, 1e-9)) return 0.0;
    double lo = 0.0, hi = span;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (C.contains(anchor + dir * mid, 1e-12)) lo = mid; else hi = mid;
    }
    return lo;
}

struct RaySolver {
    const StringEvaluator& eval;
    Vec2 anchor;
    double L;
    double slack;  // L - Per(C)

    // boundary distance along dir, bracketed by the Minkowski-sum perimeter bound
    // f(anchor + r dir) <= Per + 2 (r - rho) h_T(dir) and f >= 2 (r - rho) h_T(dir)
    double solve(const Vec2& dir, double warm = -1.0) const {
        const double ht = eval.metric().support(dir);
        const double rho =
            radial_exit(eval.caustic(), anchor, dir, 2.0 * eval.caustic().outer_radius() + 1.0);
        double lo = rho + slack / (4.0 * ht);
        double hi = rho + L / (2.0 * ht) + slack;
        double r = (warm > lo && warm < hi) ? warm : 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            const Vec2 q = anchor + dir * r;
            const double g = eval.length(q) - L;
            if (std::fabs(g) < 1e-12 * std::max(1.0, L)) return r;
            if (g < 0) lo = r; else hi = r;
            const double slope = dot(eval.gradient(q), dir);
            double next = slope > 1e-12 ? r - g / slope : lo - 1.0;
            if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
            if (std::fabs(next - r) < 1e-15 * std::max(1.0, r)) return next;
            r = next;
        }
        return r;
    }
};

}  // namespace

ConvexBody string_construct(const StringSpec& spec, int resolution) {
    if (resolution < 16) throw invalid_argument("string construction needs at least 16 rays");
    StringEvaluator eval(spec.caustic, spec.metric);
    if (spec.length <= eval.caustic_perimeter() + 1e-9)
        throw invalid_string_length("string length must exceed caustic perimeter");

    const Vec2 anchor = spec.caustic.centroid();
    const RaySolver solver{eval, anchor, spec.length, spec.length - eval.caustic_perimeter()};

    // coarse boundary polyline seeding the support refinement
    const int n = std::max(resolution, 1024);
    std::vector<Vec2> poly(n);
    std::vector<double> rad(n);
    parallel_for(n, [&](int i) {
        rad[i] = solver.solve(dir_of_angle(kTwoPi * i / n));
        poly[i] = anchor + dir_of_angle(kTwoPi * i / n) * rad[i];
    });

    const int grid = ConvexBody::kSampledGrid;
    std::vector<double> hval(grid);
    std::vector<Vec2> hpt(grid);
    parallel_for(grid, [&](int k) {
        const Vec2 u = dir_of_angle(kTwoPi * k / grid);
        int best = 0;
        double bestv = dot(poly[0], u);
        for (int i = 1; i < n; ++i) {
            const double v = dot(poly[i], u);
            if (v > bestv) { bestv = v; best = i; }
        }
        // refine the support maximum with exact boundary solves around the seed
        double lo = kTwoPi * (best - 1) / n, hi = kTwoPi * (best + 1) / n;
        double warm = rad[best];
        auto value = [&](double phi) {
            const double r = solver.solve(dir_of_angle(phi), warm);
            warm = r;
            return std::make_pair(dot(anchor + dir_of_angle(phi) * r, u),
                                  anchor + dir_of_angle(phi) * r);
        };
        auto cur = value(0.5 * (lo + hi));
        for (int it = 0; it < 24; ++it) {
            const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (value(m1).first < value(m2).first) lo = m1; else hi = m2;
        }
        cur = value(0.5 * (lo + hi));
        hval[k] = std::max(bestv, cur.first);
        hpt[k] = cur.first >= bestv ? cur.second : poly[best];
    });

    const bool smooth = spec.metric.smooth() && spec.metric.strictly_convex();
    return ConvexBody::sampled(std::move(hval), std::move(hpt), smooth);
}

CausticReport verify_caustic(const BilliardConfig& config, const ConvexBody& C, int samples,
                             double tol) {
    if (samples < 3) throw invalid_argument("caustic verification needs at least 3 samples");
    for (int i = 0; i < 512; ++i) {
        const Vec2 u = dir_of_angle(kTwoPi * i / 512);
        if (C.support(u) > config.K().support(u) - 1e-12)
            throw caustic_outside_table("caustic must lie strictly inside the table");
    }

    StringEvaluator eval(C, config.T());
    CausticReport rep;
    double fmin = 0.0, fmax = 0.0, fsum = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Vec2 q = config.paramK().point_at(config.P() * i / samples);
        const double f = eval.length(q);
        fsum += f;
        if (i == 0) { fmin = fmax = f; }
        fmin = std::min(fmin, f);
        fmax = std::max(fmax, f);
    }
    rep.mean_length = fsum / samples;
    rep.max_deviation = fmax - fmin;

    // dynamic check: tangency must survive one application of the billiard map
    for (int i = 0; i < samples; ++i) {
        const Vec2 q = config.paramK().point_at(config.P() * (i + 0.5) / samples);
        try {
            const OrientedLine line = tangent_points(C, q).positive_line;
            const OrientedLine next = billiard_map(config, line);
            rep.dynamic_deviation = std::max(rep.dynamic_deviation, line_tangency_error(next, C));
        } catch (const Error&) {
            rep.dynamic_deviation = std::max(rep.dynamic_deviation, 1.0);
        }
    }

    const double limit = tol < 0 ? 1e-6 * rep.mean_length : tol;
    rep.is_caustic = rep.max_deviation <= limit && rep.dynamic_deviation <= limit;
    return rep;
}

double lazutkin_parameter(const StringSpec& spec) {
    const double per = minkowski_perimeter(spec.caustic, spec.metric);
    if (spec.length <= per + 1e-9)
        throw invalid_string_length("string length must exceed caustic perimeter");
    return spec.length - per;
}

double lazutkin_parameter(const BilliardConfig& config, const ConvexBody& C, int samples,
                          double tol) {
    const CausticReport rep = verify_caustic(config, C, samples, tol);
    if (!rep.is_caustic)
        throw not_a_caustic("string length is not constant on the table boundary");
    return rep.mean_length - minkowski_perimeter(C, config.T());
}

}  // namespace mink
