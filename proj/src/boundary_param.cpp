#include "minkoscope/boundary_param.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "minkoscope/errors.hpp"

namespace mink {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

struct BoundaryParam::Segment {
    int j;
    double tau;  // offset into the cell, in [0, h_j]
};

// Cubic Hermite cells over the cumulative h_T chord-length knots. Node
// derivatives come from the three-point nonuniform finite difference, which
// makes the interpolant approximately h_T-unit speed (error O(h^2)).
BoundaryParam::BoundaryParam(ConvexBody body, ConvexBody metric, int resolution)
    : body_(std::move(body)), metric_(std::move(metric)) {
    if (resolution < 16) throw invalid_argument("boundary resolution must be at least 16");
    if (!metric_.symmetric()) throw unsupported_metric("metric body must be centrally symmetric");
    if (body_.degenerate()) throw unsupported_body("degenerate bodies have no boundary parametrization");
    n_ = std::max(resolution, 1 << 16);
    pts_.resize(n_);
    der_.resize(n_);
    cum_.resize(n_ + 1);
    for (int j = 0; j < n_; ++j) {
        const Vec2 u = dir_of_angle(kTwoPi * j / n_);
        pts_[j] = u / body_.gauge(u);
    }
    cum_[0] = 0.0;
    for (int j = 0; j < n_; ++j)
        cum_[j + 1] = cum_[j] + metric_.support(pts_[(j + 1) % n_] - pts_[j]);
    length_ = cum_[n_];
    for (int j = 0; j < n_; ++j) {
        const int jm = (j + n_ - 1) % n_, jp = (j + 1) % n_;
        const double h0 = j == 0 ? cum_[n_] - cum_[n_ - 1] : cum_[j] - cum_[j - 1];
        const double h1 = cum_[j + 1] - cum_[j];
        const Vec2 d0 = (pts_[j] - pts_[jm]) / h0;
        const Vec2 d1 = (pts_[jp] - pts_[j]) / h1;
        der_[j] = (d0 * h1 + d1 * h0) / (h0 + h1);
    }
}

BoundaryParam::Segment BoundaryParam::locate(double t) const {
    const double tw = wrap(t, length_);
    auto it = std::upper_bound(cum_.begin(), cum_.end(), tw);
    int j = static_cast<int>(it - cum_.begin()) - 1;
    j = std::clamp(j, 0, n_ - 1);
    return {j, tw - cum_[j]};
}

Vec2 BoundaryParam::eval(int j, double tau) const {
    const double h = cum_[j + 1] - cum_[j];
    const double s = tau / h;
    const double s2 = s * s, s3 = s2 * s;
    const Vec2& p0 = pts_[j];
    const Vec2& p1 = pts_[(j + 1) % n_];
    const Vec2& m0 = der_[j];
    const Vec2& m1 = der_[(j + 1) % n_];
    return p0 * (2 * s3 - 3 * s2 + 1) + m0 * (h * (s3 - 2 * s2 + s)) + p1 * (-2 * s3 + 3 * s2) +
           m1 * (h * (s3 - s2));
}

Vec2 BoundaryParam::eval_derivative(int j, double tau) const {
    const double h = cum_[j + 1] - cum_[j];
    const double s = tau / h;
    const double s2 = s * s;
    const Vec2& p0 = pts_[j];
    const Vec2& p1 = pts_[(j + 1) % n_];
    const Vec2& m0 = der_[j];
    const Vec2& m1 = der_[(j + 1) % n_];
    return p0 * ((6 * s2 - 6 * s) / h) + m0 * (3 * s2 - 4 * s + 1) + p1 * ((6 * s - 6 * s2) / h) +
           m1 * (3 * s2 - 2 * s);
}

Vec2 BoundaryParam::point_at(double t) const {
    const Segment s = locate(t);
    return eval(s.j, s.tau);
}

Vec2 BoundaryParam::tangent_at(double t) const {
    const Segment s = locate(t);
    // for smooth bodies the exact normal beats the interpolated derivative
    const Vec2 d = body_.smooth() ? rot90(body_.outer_normal(eval(s.j, s.tau)))
                                  : eval_derivative(s.j, s.tau);
    return d / metric_.support(d);
}

double BoundaryParam::param_of(const Vec2& q) const {
    const double psi = wrap(q.angle(), kTwoPi);
    int j = static_cast<int>(psi / kTwoPi * n_);
    j = std::clamp(j, 0, n_ - 1);
    // within a cell the boundary point angle is monotone; bisect on orientation
    // (cross > 0 means the curve point still trails q counter-clockwise)
    double lo = 0.0, hi = cum_[j + 1] - cum_[j];
    for (int it = 0; it < 52; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cross(eval(j, mid), q) > 0) lo = mid; else hi = mid;
    }
    return cum_[j] + 0.5 * (lo + hi);
}

}  // namespace mink
