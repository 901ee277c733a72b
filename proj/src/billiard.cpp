#include "minkoscope/billiard.hpp"

#include <cmath>
#include <numbers>

#include "minkoscope/errors.hpp"

namespace mink {

namespace {

constexpr double kTangencyBand = 1e-9;

const ConvexBody& side_body(const BilliardConfig& c, Side side) {
    return side == Side::K ? c.K() : c.T();
}
const ConvexBody& other_body(const BilliardConfig& c, Side side) {
    return side == Side::K ? c.T() : c.K();
}

void check_departure(const ConvexBody& body, const OrientedLine& line) {
    const Vec2 n = body.outer_normal(line.base);
    const double dn = dot(line.dir, n);
    if (std::fabs(dn) <= kTangencyBand) throw tangent_line("line is tangent to the boundary");
    if (dn > 0) throw no_impact("direction points out of the body at its base");
}

}  // namespace

BilliardConfig::BilliardConfig(ConvexBody K, ConvexBody T, int resolution)
    : K_(std::move(K)), T_(std::move(T)) {
    if (!K_.symmetric() || !T_.symmetric())
        throw unsupported_body("billiard configuration requires centrally symmetric bodies");
    if (!K_.smooth() || !K_.strictly_convex() || !T_.smooth() || !T_.strictly_convex())
        throw unsupported_body("billiard configuration requires smooth strictly convex bodies");
    paramK_ = std::make_shared<BoundaryParam>(K_, T_, resolution);
    paramT_ = std::make_shared<BoundaryParam>(T_, K_, resolution);
    P_ = paramK_->total_length();
    // sampled tables with nearly sharp corners carry a few 1e-4 of arclength
    // discretization, so this sanity check cannot be tighter
    const double scale = std::max(1.0, P_);
    if (std::fabs(paramK_->total_length() - paramT_->total_length()) > 1e-3 * scale)
        throw invalid_argument("table and geometry disagree on the common perimeter");
}

Vec2 next_impact(const ConvexBody& K, const OrientedLine& line) {
    const Vec2 b = line.base;
    const Vec2 d = line.dir;
    auto g = [&](double t) { return K.gauge(b + d * t) - 1.0; };
    if (g(0.0) > 1e-7) throw no_impact("line base lies outside the body");
    const double span = 2.0 * K.outer_radius() + 1e-9;
    // the gauge is convex along the ray: locate its minimum, then the far root
    double lo = 0.0, hi = span;
    for (int it = 0; it < 90; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (g(m1) < g(m2)) hi = m2; else lo = m1;
    }
    const double tmin = 0.5 * (lo + hi);
    if (g(tmin) >= -1e-12)
        throw no_impact("ray does not enter the interior of the body");
    double a = tmin, c = span;
    for (int it = 0; it < 90; ++it) {
        const double mid = 0.5 * (a + c);
        if (g(mid) < 0) a = mid; else c = mid;
    }
    return b + d * (0.5 * (a + c));
}

OrientedLine psi(const BilliardConfig& config, const OrientedLine& line, Side side) {
    const ConvexBody& here = side_body(config, side);
    const ConvexBody& there = other_body(config, side);
    check_departure(here, line);
    // K-plane lines carry v = -n_T(p); T-plane lines carry w = +n_K(q)
    const Vec2 base2 =
        side == Side::K ? there.inverse_normal(-line.dir) : there.inverse_normal(line.dir);
    const Vec2 hit = next_impact(here, line);
    const Vec2 dir2 = here.outer_normal(hit);
    return {base2, side == Side::K ? dir2 : -dir2};
}

OrientedLine billiard_map(const BilliardConfig& config, const OrientedLine& line) {
    return psi(config, psi(config, line, Side::K), Side::T);
}

OrientedLine alpha(const BilliardConfig& config, const OrientedLine& line, Side side) {
    const ConvexBody& here = side_body(config, side);
    const ConvexBody& there = other_body(config, side);
    check_departure(here, line);
    const Vec2 p = there.inverse_normal(line.dir);
    const Vec2 w = here.outer_normal(line.base);
    return {p, w};
}

OrientedLine phase_reverse(const BilliardConfig& config, const OrientedLine& line, Side side) {
    const Vec2 hit = next_impact(side_body(config, side), line);
    return {hit, -line.dir};
}

AnnulusPoint annulus_coords(const BilliardConfig& config, const OrientedLine& line) {
    check_departure(config.K(), line);
    const double t = config.paramK().param_of(line.base);
    const Vec2 p = config.T().inverse_normal(line.dir);
    const double s = dot(-p, config.paramK().tangent_at(t));
    if (std::fabs(s) >= 1.0 - kTangencyBand)
        throw tangent_line("line is tangent to the boundary annulus");
    return {t, s, t};
}

OrientedLine line_of_annulus(const BilliardConfig& config, double t, double s) {
    if (std::fabs(s) >= 1.0 - kTangencyBand)
        throw tangent_line("annulus ordinate lies in the tangency band");
    const Vec2 q = config.paramK().point_at(t);
    const Vec2 tau = config.paramK().tangent_at(t);
    const double nu = config.K().outer_normal(q).angle();
    // v(phi) sweeps the inward cone; <-p(v), tau> is monotone across it
    auto ordinate = [&](double phi) {
        const Vec2 v = dir_of_angle(phi);
        return dot(-config.T().inverse_normal(v), tau) - s;
    };
    double lo = nu + std::numbers::pi / 2 + 1e-7;
    double hi = nu + 3 * std::numbers::pi / 2 - 1e-7;
    const bool increasing = ordinate(hi) > ordinate(lo);
    for (int it = 0; it < 64; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((ordinate(mid) < 0) == increasing) lo = mid; else hi = mid;
    }
    return {q, dir_of_angle(0.5 * (lo + hi))};
}

AnnulusPoint twist_map(const BilliardConfig& config, const AnnulusPoint& a) {
    const OrientedLine next = billiard_map(config, line_of_annulus(config, a.t, a.s));
    AnnulusPoint out = annulus_coords(config, next);
    out.lift = a.lift + wrap(out.t - wrap(a.lift, config.P()), config.P());
    return out;
}

double generating_function(const BilliardConfig& config, double r, double rp) {
    return -config.T().support(config.paramK().point_at(r) - config.paramK().point_at(rp));
}

TrajectoryRecord iterate_trajectory(const BilliardConfig& config, const OrientedLine& start, int N) {
    TrajectoryRecord rec;
    if (N < 1) throw invalid_argument("iteration count must be positive");
    OrientedLine line = start;
    double lift = 0.0;
    bool first = true;
    try {
        for (int n = 0; n < N; ++n) {
            const AnnulusPoint a = annulus_coords(config, line);
            if (first) {
                lift = a.t;
                first = false;
            } else {
                lift += wrap(a.t - wrap(lift, config.P()), config.P());
            }
            const OrientedLine mid = psi(config, line, Side::K);
            rec.q.push_back(line.base);
            rec.p.push_back(mid.base);
            rec.r.push_back(lift);
            rec.s.push_back(a.s);
            const OrientedLine next = psi(config, mid, Side::T);
            rec.seg.push_back(config.T().support(next.base - line.base));
            line = next;
        }
    } catch (const Error&) {
        rec.truncated = true;
    }
    return rec;
}

}  // namespace mink
