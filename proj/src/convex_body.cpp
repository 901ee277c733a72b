#include "minkoscope/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "minkoscope/errors.hpp"

namespace mink {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double lp_norm(const Vec2& x, double p) {
    const double ax = std::fabs(x.x), ay = std::fabs(x.y);
    const double m = std::max(ax, ay);
    if (m == 0.0) return 0.0;
    if (std::isinf(p)) return m;
    if (p == 1.0) return ax + ay;
    return m * std::pow(std::pow(ax / m, p) + std::pow(ay / m, p), 1.0 / p);
}

double conjugate_exponent(double p) {
    if (p == 1.0) return kInf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

// Catmull-Rom interpolation of periodic samples
double catmull_rom(double pm1, double p0, double p1, double p2, double t) {
    return 0.5 * ((2.0 * p0) + (-pm1 + p1) * t + (2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2) * t * t +
                  (-pm1 + 3.0 * p0 - 3.0 * p1 + p2) * t * t * t);
}

double point_segment_distance(const Vec2& x, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = ab.norm2();
    if (len2 == 0.0) return (x - a).norm();
    const double t = std::clamp(dot(x - a, ab) / len2, 0.0, 1.0);
    return (x - (a + t * ab)).norm();
}

}  // namespace

ConvexBody ConvexBody::disk(double radius) {
    if (!(radius > 0)) throw invalid_argument("disk radius must be positive");
    ConvexBody b;
    b.variant_ = Variant::Disk;
    b.radius_ = radius;
    return b;
}

ConvexBody ConvexBody::ellipse(const SymMat2& A) {
    if (!(A.det() > 0) || !(A.a > 0)) throw invalid_argument("ellipse matrix must be positive definite");
    ConvexBody b;
    b.variant_ = Variant::Ellipse;
    b.matrix_ = A;
    b.matrix_inv_ = A.inverse();
    b.matrix_inv2_ = b.matrix_inv_.square();
    b.matrix_sq_ = A.square();
    return b;
}

ConvexBody ConvexBody::ellipse_axes(double a, double b) {
    if (!(a > 0) || !(b > 0)) throw invalid_argument("ellipse semi-axes must be positive");
    return ellipse(SymMat2{1.0 / a, 0.0, 1.0 / b});
}

ConvexBody ConvexBody::polygon(std::vector<Vec2> vertices) {
    if (vertices.empty()) throw invalid_argument("polygon needs at least one vertex");
    ConvexBody b;
    b.variant_ = Variant::Polygon;
    b.verts_ = std::move(vertices);
    b.finalize_polygon();
    return b;
}

ConvexBody ConvexBody::segment(const Vec2& a, const Vec2& b) { return polygon({a, b}); }
ConvexBody ConvexBody::point(const Vec2& p) { return polygon({p}); }

ConvexBody ConvexBody::lp_ball(double p, double scale) {
    if (!(p >= 1.0)) throw invalid_exponent("lp exponent must satisfy p >= 1");
    if (!(scale > 0)) throw invalid_argument("lp scale must be positive");
    ConvexBody b;
    b.variant_ = Variant::LpBall;
    b.lp_p_ = p;
    b.lp_q_ = conjugate_exponent(p);
    b.lp_scale_ = scale;
    b.smooth_ = b.strictly_convex_ = (p > 1.0 && !std::isinf(p));
    return b;
}

ConvexBody ConvexBody::lp_ball_inf(double scale) {
    ConvexBody b = lp_ball(1.0, scale);
    b.lp_p_ = kInf;
    b.lp_q_ = 1.0;
    b.smooth_ = b.strictly_convex_ = false;
    return b;
}

ConvexBody ConvexBody::sampled_from(const std::function<void(double, double&, Vec2&)>& oracle,
                                    int grid_size, bool smooth) {
    std::vector<double> h(grid_size);
    std::vector<Vec2> g(grid_size);
    for (int j = 0; j < grid_size; ++j) {
        oracle(kTwoPi * j / grid_size, h[j], g[j]);
    }
    return sampled(std::move(h), std::move(g), smooth);
}

ConvexBody ConvexBody::sampled(std::vector<double> support_values, std::vector<Vec2> support_points,
                               bool smooth) {
    if (support_values.size() < 16 || support_values.size() != support_points.size())
        throw invalid_argument("sampled body needs matching support/gradient grids of size >= 16");
    ConvexBody b;
    b.variant_ = Variant::Sampled;
    b.sample_h_ = std::move(support_values);
    b.sample_g_ = std::move(support_points);
    b.smooth_ = b.strictly_convex_ = smooth;
    b.finalize_sampled();
    return b;
}

void ConvexBody::finalize_polygon() {
    const size_t n = verts_.size();
    smooth_ = strictly_convex_ = false;
    if (n >= 3) {
        double area2 = 0.0;
        for (size_t i = 0; i < n; ++i) area2 += cross(verts_[i], verts_[(i + 1) % n]);
        if (area2 <= 0) throw invalid_argument("polygon vertices must be counter-clockwise");
        double scale = 0.0;
        for (const Vec2& v : verts_) scale = std::max(scale, v.norm());
        for (size_t i = 0; i < n; ++i) {
            const Vec2 e0 = verts_[(i + 1) % n] - verts_[i];
            const Vec2 e1 = verts_[(i + 2) % n] - verts_[(i + 1) % n];
            if (cross(e0, e1) < -1e-9 * scale * scale)
                throw invalid_argument("polygon vertices must be convex");
        }
        edge_normals_.resize(n);
        edge_offsets_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            const Vec2 e = verts_[(i + 1) % n] - verts_[i];
            edge_normals_[i] = rot270(e).normalized();
            edge_offsets_[i] = dot(edge_normals_[i], verts_[i]);
        }
    }
    // symmetry: vertex list closed under negation
    symmetric_ = true;
    for (const Vec2& v : verts_) {
        bool found = false;
        for (const Vec2& w : verts_) {
            if ((v + w).norm() <= 1e-12 * (1.0 + v.norm())) { found = true; break; }
        }
        if (!found) { symmetric_ = false; break; }
    }
}

void ConvexBody::finalize_sampled() {
    const size_t n = sample_g_.size();
    sample_pt_angle_.resize(n + 1);
    double prev = sample_g_[0].angle();
    sample_pt_angle_[0] = prev;
    for (size_t j = 1; j <= n; ++j) {
        double a = sample_g_[j % n].angle();
        // slack absorbs support-point jitter along flat boundary stretches
        while (a < prev - 1e-6) a += kTwoPi;
        sample_pt_angle_[j] = a;
        prev = a;
    }
    symmetric_ = true;
    const size_t half = n / 2;
    for (size_t j = 0; j < half; ++j) {
        if (std::fabs(sample_h_[j] - sample_h_[j + half]) > 1e-9 * (1.0 + sample_h_[j])) {
            symmetric_ = false;
            break;
        }
    }
}

bool ConvexBody::degenerate() const {
    return variant_ == Variant::Polygon && verts_.size() < 3;
}

double ConvexBody::sampled_support_value(double theta) const {
    const int n = static_cast<int>(sample_h_.size());
    const double u = wrap(theta, kTwoPi) / kTwoPi * n;
    const int j = static_cast<int>(u) % n;
    const double t = u - std::floor(u);
    if (!smooth_) return dot(sampled_support_grad(theta), dir_of_angle(theta));
    auto at = [&](int k) { return sample_h_[((j + k) % n + n) % n]; };
    return catmull_rom(at(-1), at(0), at(1), at(2), t);
}

Vec2 ConvexBody::sampled_support_grad(double theta) const {
    const int n = static_cast<int>(sample_g_.size());
    const double u = wrap(theta, kTwoPi) / kTwoPi * n;
    const int j = static_cast<int>(u) % n;
    const double t = u - std::floor(u);
    auto at = [&](int k) -> const Vec2& { return sample_g_[((j + k) % n + n) % n]; };
    if (!smooth_) {
        // kinks in the support function break interpolation; the stored boundary
        // points are exact, so take the touching point directly
        const Vec2 dir = dir_of_angle(theta);
        Vec2 best = at(0);
        double bestv = dot(best, dir);
        for (int k = -4; k <= 5; ++k) {
            const double v = dot(at(k), dir);
            if (v > bestv) { bestv = v; best = at(k); }
        }
        return best;
    }
    return {catmull_rom(at(-1).x, at(0).x, at(1).x, at(2).x, t),
            catmull_rom(at(-1).y, at(0).y, at(1).y, at(2).y, t)};
}

double ConvexBody::sampled_radial_angle(const Vec2& x) const {
    const int n = static_cast<int>(sample_g_.size());
    double psi = x.angle();
    const double a0 = sample_pt_angle_[0];
    while (psi < a0) psi += kTwoPi;
    while (psi >= a0 + kTwoPi) psi -= kTwoPi;
    // boundary point angle is monotone in the node parameter
    auto it = std::upper_bound(sample_pt_angle_.begin(), sample_pt_angle_.end(), psi);
    int j = static_cast<int>(it - sample_pt_angle_.begin()) - 1;
    j = std::clamp(j, 0, n - 1);
    double lo = kTwoPi * j / n, hi = kTwoPi * (j + 1) / n;
    // cross > 0 means the boundary point still trails x counter-clockwise
    for (int it2 = 0; it2 < 48; ++it2) {
        const double mid = 0.5 * (lo + hi);
        if (cross(sampled_support_grad(mid), x) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double ConvexBody::support(const Vec2& u) const {
    if (u.x == 0.0 && u.y == 0.0) throw invalid_argument("support direction must be nonzero");
    switch (variant_) {
        case Variant::Disk:
            return radius_ * u.norm();
        case Variant::Ellipse:
            return matrix_inv_.apply(u).norm();
        case Variant::Polygon: {
            double best = -kInf;
            for (const Vec2& v : verts_) best = std::max(best, dot(v, u));
            return best;
        }
        case Variant::LpBall:
            return lp_scale_ * lp_norm(u, lp_q_);
        case Variant::Sampled:
            return u.norm() * sampled_support_value(u.angle());
    }
    return 0.0;
}

Vec2 ConvexBody::support_point(const Vec2& u) const {
    if (u.x == 0.0 && u.y == 0.0) throw invalid_argument("support direction must be nonzero");
    switch (variant_) {
        case Variant::Disk:
            return u.normalized() * radius_;
        case Variant::Ellipse: {
            const double h = support(u);
            return matrix_inv2_.apply(u) / h;
        }
        case Variant::Polygon: {
            double best = -kInf;
            Vec2 arg = verts_[0];
            for (const Vec2& v : verts_) {
                const double d = dot(v, u);
                if (d > best) { best = d; arg = v; }
            }
            return arg;
        }
        case Variant::LpBall: {
            const Vec2 w = u.normalized();
            const double q = lp_q_;
            if (std::isinf(q)) {  // p = 1: cross-polytope vertices
                if (std::fabs(w.x) >= std::fabs(w.y)) return {lp_scale_ * (w.x >= 0 ? 1.0 : -1.0), 0.0};
                return {0.0, lp_scale_ * (w.y >= 0 ? 1.0 : -1.0)};
            }
            if (q == 1.0) {  // p = inf: square vertices
                return {lp_scale_ * (w.x >= 0 ? 1.0 : -1.0), lp_scale_ * (w.y >= 0 ? 1.0 : -1.0)};
            }
            const double nq = lp_norm(w, q);
            auto comp = [&](double c) {
                return (c == 0.0) ? 0.0
                                  : (c > 0 ? 1.0 : -1.0) * std::pow(std::fabs(c) / nq, q - 1.0);
            };
            return {lp_scale_ * comp(w.x), lp_scale_ * comp(w.y)};
        }
        case Variant::Sampled:
            return sampled_support_grad(u.angle());
    }
    return {};
}

double ConvexBody::gauge(const Vec2& x) const {
    Vec2 unused;
    return gauge_with_argmax(x, unused);
}

double ConvexBody::gauge_with_argmax(const Vec2& x, Vec2& argmax_dir) const {
    if (x.x == 0.0 && x.y == 0.0) { argmax_dir = {1.0, 0.0}; return 0.0; }
    switch (variant_) {
        case Variant::Disk:
            argmax_dir = x.normalized();
            return x.norm() / radius_;
        case Variant::Ellipse: {
            const double g = matrix_.apply(x).norm();
            argmax_dir = matrix_sq_.apply(x).normalized();
            return g;
        }
        case Variant::Polygon: {
            if (degenerate() || edge_offsets_.empty())
                throw unsupported_body("gauge requires a full-dimensional body with 0 in the interior");
            double best = -kInf;
            size_t arg = 0;
            for (size_t i = 0; i < edge_normals_.size(); ++i) {
                if (edge_offsets_[i] <= 0)
                    throw unsupported_body("gauge requires 0 in the interior of the body");
                const double v = dot(edge_normals_[i], x) / edge_offsets_[i];
                if (v > best) { best = v; arg = i; }
            }
            argmax_dir = edge_normals_[arg];
            return best;
        }
        case Variant::LpBall: {
            const double g = lp_norm(x, lp_p_) / lp_scale_;
            const Vec2 z = x / g;
            const double p = lp_p_;
            if (std::isinf(p)) {
                argmax_dir = (std::fabs(z.x) >= std::fabs(z.y)) ? Vec2{z.x > 0 ? 1.0 : -1.0, 0.0}
                                                               : Vec2{0.0, z.y > 0 ? 1.0 : -1.0};
            } else if (p == 1.0) {
                argmax_dir = Vec2{z.x >= 0 ? 1.0 : -1.0, z.y >= 0 ? 1.0 : -1.0}.normalized();
            } else {
                auto comp = [&](double c) {
                    return (c == 0.0) ? 0.0 : (c > 0 ? 1.0 : -1.0) * std::pow(std::fabs(c), p - 1.0);
                };
                argmax_dir = Vec2{comp(z.x / lp_scale_), comp(z.y / lp_scale_)}.normalized();
            }
            return g;
        }
        case Variant::Sampled: {
            const double theta = sampled_radial_angle(x);
            const Vec2 bd = sampled_support_grad(theta);
            argmax_dir = dir_of_angle(theta);
            return x.norm() / bd.norm();
        }
    }
    return 0.0;
}

ConvexBody ConvexBody::polar() const {
    switch (variant_) {
        case Variant::Disk:
            return disk(1.0 / radius_);
        case Variant::Ellipse:
            return ellipse(matrix_inv_);
        case Variant::LpBall: {
            const double s = 1.0 / lp_scale_;
            if (lp_p_ == 1.0)
                return polygon({{s, s}, {-s, s}, {-s, -s}, {s, -s}});
            if (std::isinf(lp_p_))
                return polygon({{s, 0}, {0, s}, {-s, 0}, {0, -s}});
            return lp_ball(lp_q_, s);
        }
        case Variant::Polygon: {
            if (degenerate())
                throw unsupported_body("polar of a degenerate body is unbounded");
            std::vector<Vec2> pv(edge_normals_.size());
            for (size_t i = 0; i < edge_normals_.size(); ++i) {
                if (edge_offsets_[i] <= 0)
                    throw unsupported_body("polar requires 0 in the interior of the body");
                pv[i] = edge_normals_[i] / edge_offsets_[i];
            }
            return polygon(std::move(pv));
        }
        case Variant::Sampled: {
            return sampled_from([this](double theta, double& h, Vec2& g) {
                Vec2 ustar;
                h = gauge_with_argmax(dir_of_angle(theta), ustar);
                g = ustar / support(ustar);
            });
        }
    }
    throw unsupported_body("polar: unknown variant");
}

Vec2 ConvexBody::outer_normal(const Vec2& q) const {
    switch (variant_) {
        case Variant::Disk:
            return q.normalized();
        case Variant::Ellipse:
            return matrix_sq_.apply(q).normalized();
        case Variant::Polygon: {
            const size_t n = verts_.size();
            if (n < 3) throw ambiguous_normal("degenerate body has no well-defined normal");
            double scale = 1.0;
            for (const Vec2& v : verts_) scale = std::max(scale, v.norm());
            for (size_t i = 0; i < n; ++i) {
                const Vec2& a = verts_[i];
                const Vec2& b = verts_[(i + 1) % n];
                const Vec2 e = b - a;
                const double len = e.norm();
                const double off = std::fabs(cross(e / len, q - a));
                if (off > 1e-8 * scale) continue;
                const double t = dot(q - a, e) / (len * len);
                if (t < 1e-9 || t > 1.0 - 1e-9)
                    throw ambiguous_normal("normal requested at a polygon vertex");
                return edge_normals_[i];
            }
            throw invalid_argument("point is not on the polygon boundary");
        }
        case Variant::LpBall: {
            const double p = lp_p_;
            if (p > 1.0 && !std::isinf(p)) {
                auto comp = [&](double c) {
                    return (c == 0.0) ? 0.0 : (c > 0 ? 1.0 : -1.0) * std::pow(std::fabs(c), p - 1.0);
                };
                return Vec2{comp(q.x), comp(q.y)}.normalized();
            }
            if (p == 1.0) {
                if (q.x == 0.0 || q.y == 0.0)
                    throw ambiguous_normal("normal requested at an l1-ball vertex");
                return Vec2{q.x > 0 ? 1.0 : -1.0, q.y > 0 ? 1.0 : -1.0}.normalized();
            }
            const double ax = std::fabs(q.x), ay = std::fabs(q.y);
            if (std::fabs(ax - ay) < 1e-12 * (ax + ay))
                throw ambiguous_normal("normal requested at an linf-ball vertex");
            return (ax > ay) ? Vec2{q.x > 0 ? 1.0 : -1.0, 0.0} : Vec2{0.0, q.y > 0 ? 1.0 : -1.0};
        }
        case Variant::Sampled:
            return dir_of_angle(sampled_radial_angle(q));
    }
    throw unsupported_body("outer_normal: unknown variant");
}

Vec2 ConvexBody::inverse_normal(const Vec2& v) const {
    if (v.x == 0.0 && v.y == 0.0) throw invalid_argument("direction must be nonzero");
    if (!smooth_ || !strictly_convex_)
        throw non_unique_support("inverse normal requires a smooth strictly convex body");
    return support_point(v);
}

double ConvexBody::curvature_at(const Vec2& q) const {
    switch (variant_) {
        case Variant::Disk:
            return 1.0 / radius_;
        case Variant::Ellipse: {
            const Vec2 g = matrix_sq_.apply(q);
            const double n = g.norm();
            return matrix_sq_.det() / (n * n * n);
        }
        case Variant::Polygon:
            throw unsupported_body("polygons carry no curvature data");
        case Variant::LpBall:
        case Variant::Sampled: {
            const double theta = outer_normal(q).angle();
            const double d = (variant_ == Variant::Sampled) ? 2.0e-3 : 1.0e-4;
            auto H = [&](double t) { return support(dir_of_angle(t)); };
            const double h0 = H(theta);
            const double h2 = (H(theta + d) - 2.0 * h0 + H(theta - d)) / (d * d);
            return 1.0 / (h0 + h2);
        }
    }
    throw unsupported_body("curvature_at: unknown variant");
}

bool ConvexBody::contains(const Vec2& x, double tol) const {
    if (variant_ == Variant::Polygon) {
        const size_t n = verts_.size();
        if (n == 1) return (x - verts_[0]).norm() <= tol;
        if (n == 2) return point_segment_distance(x, verts_[0], verts_[1]) <= tol;
        for (size_t i = 0; i < n; ++i) {
            if (dot(edge_normals_[i], x) > edge_offsets_[i] + tol) return false;
        }
        return true;
    }
    return gauge(x) <= 1.0 + tol;
}

double ConvexBody::distance_to(const Vec2& x) const {
    if (variant_ == Variant::Polygon) {
        if (contains(x, 0.0)) return 0.0;
        double best = kInf;
        const size_t n = verts_.size();
        if (n == 1) return (x - verts_[0]).norm();
        for (size_t i = 0; i < n; ++i)
            best = std::min(best, point_segment_distance(x, verts_[i], verts_[(i + 1) % n]));
        return best;
    }
    const double g = gauge(x);
    if (g <= 1.0) return 0.0;
    // distance = max over unit u of <x,u> - h(u); coarse scan plus local refine
    double best = 0.0, best_t = 0.0;
    for (int j = 0; j < 256; ++j) {
        const double t = kTwoPi * j / 256;
        const double v = dot(x, dir_of_angle(t)) - support(dir_of_angle(t));
        if (v > best) { best = v; best_t = t; }
    }
    double lo = best_t - kTwoPi / 256, hi = best_t + kTwoPi / 256;
    for (int it = 0; it < 60; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        const double f1 = dot(x, dir_of_angle(m1)) - support(dir_of_angle(m1));
        const double f2 = dot(x, dir_of_angle(m2)) - support(dir_of_angle(m2));
        if (f1 < f2) lo = m1; else hi = m2;
    }
    const double t = 0.5 * (lo + hi);
    return std::max(best, dot(x, dir_of_angle(t)) - support(dir_of_angle(t)));
}

ConvexBody ConvexBody::scaled(double factor) const {
    if (!(factor > 0)) throw invalid_argument("scale factor must be positive");
    switch (variant_) {
        case Variant::Disk:
            return disk(radius_ * factor);
        case Variant::Ellipse: {
            SymMat2 A{matrix_.a / factor, matrix_.b / factor, matrix_.c / factor};
            return ellipse(A);
        }
        case Variant::Polygon: {
            std::vector<Vec2> v = verts_;
            for (Vec2& p : v) p = p * factor;
            return polygon(std::move(v));
        }
        case Variant::LpBall:
            return std::isinf(lp_p_) ? lp_ball_inf(lp_scale_ * factor)
                                     : lp_ball(lp_p_, lp_scale_ * factor);
        case Variant::Sampled: {
            std::vector<double> h = sample_h_;
            std::vector<Vec2> g = sample_g_;
            for (double& v : h) v *= factor;
            for (Vec2& p : g) p = p * factor;
            return sampled(std::move(h), std::move(g), smooth_);
        }
    }
    throw unsupported_body("scaled: unknown variant");
}

const std::vector<Vec2>& ConvexBody::vertices() const {
    if (variant_ != Variant::Polygon) throw unsupported_body("vertices: not a polygon");
    return verts_;
}

Vec2 ConvexBody::centroid() const {
    if (variant_ == Variant::Polygon) {
        Vec2 c{0, 0};
        for (const Vec2& v : verts_) c = c + v;
        return c / static_cast<double>(verts_.size());
    }
    return {0, 0};  // other variants are centered at the origin
}

double ConvexBody::outer_radius() const {
    double r = 0.0;
    for (int j = 0; j < 256; ++j) r = std::max(r, support(dir_of_angle(kTwoPi * j / 256)));
    return r * 1.01 + 1e-12;
}

}  // namespace mink
