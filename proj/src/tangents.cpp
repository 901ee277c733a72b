#include "minkoscope/tangents.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "minkoscope/errors.hpp"

namespace mink {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// signed clearance of the supporting line with outer normal dir(psi) past q:
// zero exactly when that supporting line passes through q
struct Clearance {
    const ConvexBody& C;
    const Vec2& q;
    double operator()(double psi) const {
        const Vec2 m = dir_of_angle(psi);
        return dot(q, m) - C.support(m);
    }
};

double bisect_root(const Clearance& g, double lo, double hi) {
    double flo = g(lo);
    for (int it = 0; it < 64; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid);
        if ((fm > 0) == (flo > 0)) { lo = mid; flo = fm; } else { hi = mid; }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TangentPair tangent_points(const ConvexBody& C, const Vec2& q) {
    if (C.contains(q, 1e-9)) throw point_inside_caustic("tangent point lies inside the body");

    const Clearance g{C, q};
    std::vector<double> roots;
    for (int m : {256, 2048, 16384}) {
        roots.clear();
        const double step = kTwoPi / m;
        double prev = g(0.0);
        for (int j = 1; j <= m; ++j) {
            const double cur = g(step * j);
            if ((prev > 0) != (cur > 0)) roots.push_back(bisect_root(g, step * (j - 1), step * j));
            prev = cur;
        }
        if (roots.size() >= 2) break;
    }

    TangentPair out;
    if (roots.size() < 2) {
        // q collinear with a degenerate body: the tangent line contains C
        out.e = out.b = C.support_point(q - C.centroid());
        const Vec2 d = (out.e - q).normalized();
        out.positive_line = {q, d};
        out.negative_line = {q, d};
        out.collinear = true;
        return out;
    }

    bool have_pos = false, have_neg = false;
    for (size_t i = 0; i < roots.size() && i < 2; ++i) {
        const Vec2 m = dir_of_angle(roots[i]);
        const Vec2 touch = C.support_point(m);
        const Vec2 d = rot90(m);
        if (dot(d, touch - q) > 0) {
            out.e = touch;
            out.positive_line = {q, d};
            have_pos = true;
        } else {
            out.b = touch;
            out.negative_line = {q, -d};
            have_neg = true;
        }
    }
    if (!have_pos || !have_neg) {
        // both roots collapsed onto the same classification: treat as collinear
        out.e = out.b = C.support_point(q - C.centroid());
        const Vec2 d = (out.e - q).normalized();
        out.positive_line = {q, d};
        out.negative_line = {q, d};
        out.collinear = true;
    }
    return out;
}

}  // namespace mink
