#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "minkoscope/boundary_param.hpp"
#include "minkoscope/caustic_duality.hpp"
#include "minkoscope/errors.hpp"
#include "minkoscope/hausdorff.hpp"
#include "minkoscope/string_construction.hpp"
#include "minkoscope/tangents.hpp"

using namespace mink;

namespace {
constexpr double kPi = std::numbers::pi;

ConvexBody centered_triangle() {
    // equilateral, side 1, centroid at the origin, counter-clockwise
    const double R = 1.0 / std::sqrt(3.0);
    return ConvexBody::polygon({R * dir_of_angle(kPi / 2), R * dir_of_angle(kPi / 2 + 2 * kPi / 3),
                                R * dir_of_angle(kPi / 2 + 4 * kPi / 3)});
}
}  // namespace

TEST_CASE("confocal companion closed form") {
    const ConvexBody dual = confocal_dual(3.0, 2.0, 1.0);
    const ConvexBody expect = ConvexBody::ellipse_axes(std::sqrt(8.0) / 3.0, std::sqrt(3.0) / 2.0);
    CHECK(hausdorff_distance(dual, expect) <= 1e-12);

    // lambda -> 0: the image of the table itself, the unit disk
    CHECK(hausdorff_distance(confocal_dual(3.0, 2.0, 1e-9), ConvexBody::disk(1.0)) <= 1e-9);

    // lambda -> b^2: collapse onto the focal segment image
    const ConvexBody thin = confocal_dual(3.0, 2.0, 4.0 - 1e-10);
    CHECK(thin.support({1, 0}) == doctest::Approx(std::sqrt(5.0) / 3.0).epsilon(1e-6));
    CHECK(thin.support({0, 1}) <= 1e-5);

    CHECK_THROWS_AS(confocal_dual(3.0, 2.0, 0.0), Error);
    CHECK_THROWS_AS(confocal_dual(3.0, 2.0, 4.0), Error);
    CHECK_THROWS_AS(confocal_dual(3.0, 2.0, -1.0), Error);
}

TEST_CASE("tangency discriminants agree") {
    const double a = 3.0, b = 2.0, lambda = 1.0;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 2 * kPi);
    for (int i = 0; i < 10000; ++i) {
        const double u = uni(rng), v = uni(rng);
        const Vec2 q{a * std::cos(u), b * std::sin(u)};
        const Vec2 p = dir_of_angle(v);
        const auto [d1, d2] = discriminant_pair(a, b, lambda, q, p);
        CHECK(std::fabs(d1 - d2) <= 1e-10);
    }

    // a tangent line of the caustic has vanishing discriminant, and its dual
    // line is tangent to the companion ellipse
    const ConvexBody C = ConvexBody::ellipse_axes(std::sqrt(8.0), std::sqrt(3.0));
    const ConvexBody Cd = confocal_dual(a, b, lambda);
    for (int i = 0; i < 32; ++i) {
        const double u = 2 * kPi * i / 32;
        const Vec2 q{a * std::cos(u), b * std::sin(u)};
        const Vec2 p = tangent_points(C, q).positive_line.dir;
        const auto [d1, d2] = discriminant_pair(a, b, lambda, q, p);
        CHECK(std::fabs(d1) <= 1e-8);
        CHECK(std::fabs(d2) <= 1e-8);
        const Vec2 n{q.x / (a * a), q.y / (b * b)};
        CHECK(line_body_distance(OrientedLine::through(p, n), Cd) <= 1e-8);
    }

    // direction along the normal: a transversal chord on both sides
    const Vec2 q{a, 0};
    const auto [d1, d2] = discriminant_pair(a, b, lambda, q, {1, 0});
    CHECK(d1 > 0);
    CHECK(d2 > 0);
}

TEST_CASE("tangency data closed forms") {
    const ConvexBody K = ConvexBody::disk(2.0);
    const ConvexBody C = ConvexBody::disk(1.0);
    const TangencyData d = tangency_data(K, C, {2, 0});
    CHECK((d.e - Vec2{0.5, std::sqrt(3.0) / 2}).norm() < 1e-9);
    CHECK((d.b - Vec2{0.5, -std::sqrt(3.0) / 2}).norm() < 1e-9);
    CHECK(d.L == doctest::Approx(2 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK((d.w - Vec2{0, 0.5}).norm() < 1e-9);
    CHECK(d.theta == doctest::Approx(kPi / 3).epsilon(1e-9));

    // focal segment in its string ellipse: |w| = c / a
    const ConvexBody E = ConvexBody::ellipse_axes(2.0, std::sqrt(3.0));
    const ConvexBody seg = ConvexBody::segment({-1, 0}, {1, 0});
    const TangencyData s = tangency_data(E, seg, {0, std::sqrt(3.0)});
    CHECK(s.L == doctest::Approx(4.0).epsilon(1e-9));
    CHECK((s.w - Vec2{-0.5, 0}).norm() < 1e-9);
}

TEST_CASE("tangency derivatives") {
    const ConvexBody K = ConvexBody::ellipse_axes(3.0, 2.0);
    const ConvexBody C = ConvexBody::ellipse_axes(std::sqrt(8.0), std::sqrt(3.0));
    const BoundaryParam param(K, ConvexBody::disk(1.0));

    for (int i = 0; i < 9; ++i) {
        const double t = param.total_length() * (i + 0.37) / 9;
        const Vec2 q = param.point_at(t);
        const TangencyDerivatives der = tangency_derivatives(K, C, q);
        const double delta = 1e-5;
        const TangencyData lo = tangency_data(K, C, param.point_at(t - delta));
        const TangencyData hi = tangency_data(K, C, param.point_at(t + delta));
        CHECK((der.e_prime - (hi.e - lo.e) / (2 * delta)).norm() < 1e-4);
        CHECK((der.b_prime - (hi.b - lo.b) / (2 * delta)).norm() < 1e-4);
        CHECK(std::fabs(der.L_prime - (hi.L - lo.L) / (2 * delta)) < 1e-4);

        // the dual curve velocity points against the table normal
        const TangencyData d = tangency_data(K, C, q);
        const Vec2 w_prime = (der.e_prime - der.b_prime) / d.L -
                             (d.e - d.b) * (der.L_prime / (d.L * d.L));
        const Vec2 n = K.outer_normal(q);
        CHECK(std::fabs(cross(w_prime, n)) < 1e-8 * w_prime.norm());
        CHECK(dot(w_prime, n) < 0);
    }

    // concentric circles: equal radii and curvatures kill the length drift
    const TangencyDerivatives sym =
        tangency_derivatives(ConvexBody::disk(2.0), ConvexBody::disk(1.0), {2, 0});
    CHECK(std::fabs(sym.L_prime) < 1e-12);

    CHECK_THROWS_AS(tangency_derivatives(K, centered_triangle(), {3, 0}), Error);
}

TEST_CASE("smooth dual construction") {
    // circle pair: dual radius r / R
    const ConvexBody d1 = dual_caustic_smooth(ConvexBody::disk(2.0), ConvexBody::disk(1.0), 4096);
    CHECK(hausdorff_distance(d1, ConvexBody::disk(0.5)) <= 2e-7);

    // confocal pair reproduces the closed form
    const ConvexBody d2 = dual_caustic_smooth(
        ConvexBody::ellipse_axes(3.0, 2.0), ConvexBody::ellipse_axes(std::sqrt(8.0), std::sqrt(3.0)),
        2048);
    CHECK(hausdorff_distance(d2, confocal_dual(3.0, 2.0, 1.0)) <= 1e-6);

    // segment caustic: flat dual of half the focal ratio
    const ConvexBody d3 = dual_caustic_smooth(ConvexBody::ellipse_axes(2.0, std::sqrt(3.0)),
                                              ConvexBody::segment({-1, 0}, {1, 0}), 2048);
    CHECK(d3.degenerate());
    CHECK(hausdorff_distance(d3, ConvexBody::segment({-0.5, 0}, {0.5, 0})) <= 1e-8);

    // a non-caustic pairing is rejected
    CHECK_THROWS_AS(
        dual_caustic_smooth(ConvexBody::ellipse_axes(3.0, 2.0), ConvexBody::disk(1.0), 256), Error);
}

TEST_CASE("polygonal dual construction") {
    const ConvexBody tri = centered_triangle();
    const ConvexBody K = string_construct({tri, ConvexBody::disk(1.0), 6.0}, 1024);
    const PolygonDualResult res = dual_caustic_polygon_detailed(K, tri);
    const int M = static_cast<int>(res.arcs.size());
    CHECK(M >= 3);
    CHECK(res.dual.vertices().size() == static_cast<size_t>(M));

    // every dual line is tangent to the dual polygon; sample boundary points
    // straight from the support data so they sit exactly on the string curve
    for (int i = 0; i < 64; ++i) {
        const Vec2 q = K.support_point(dir_of_angle(2.0 * std::numbers::pi * i / 64));
        const TangencyData d = tangency_data(K, tri, q);
        const OrientedLine line = tangent_points(tri, q).positive_line;
        const OrientedLine image = OrientedLine::through(line.dir, reflection_normal(d));
        CHECK(line_tangency_error(image, res.dual) <= 1e-8);
    }

    // edge law: each dual edge runs against the table normal at its junction
    double turning = 0.0;
    for (int i = 0; i < M; ++i) {
        const Vec2 edge = res.arcs[(i + 1) % M].w - res.arcs[i].w;
        const Vec2 n = res.junction_normals[i];
        CHECK(std::fabs(cross(edge, n)) < 1e-6 * edge.norm());
        CHECK(dot(edge, n) < 0);
        CHECK(cross(res.arcs[i].w, res.arcs[(i + 1) % M].w) > 0);
        const Vec2 prev = res.arcs[i].w - res.arcs[(i - 1 + M) % M].w;
        const double dturn = std::atan2(cross(prev, edge), dot(prev, edge));
        CHECK(dturn > 0);
        turning += dturn;
    }
    CHECK(turning == doctest::Approx(2 * kPi).epsilon(1e-3));

    // the generic smooth sampler lands on the same polygon
    const ConvexBody via_smooth = dual_caustic_smooth(K, tri, 4096);
    CHECK(hausdorff_distance(via_smooth, res.dual) <= 1e-6);

    // 2-gon caustic agrees with the smooth limit
    const ConvexBody seg = ConvexBody::segment({-1, 0}, {1, 0});
    const ConvexBody dual_seg =
        dual_caustic_polygon(ConvexBody::ellipse_axes(2.0, std::sqrt(3.0)), seg);
    CHECK(hausdorff_distance(dual_seg, ConvexBody::segment({-0.5, 0}, {0.5, 0})) <= 1e-8);

    CHECK_THROWS_AS(dual_caustic_polygon(K, ConvexBody::disk(0.2)), Error);
}

TEST_CASE("duality verification") {
    const BilliardConfig disks(ConvexBody::disk(2.0), ConvexBody::disk(1.0));
    const DualityReport ok =
        verify_duality(disks, ConvexBody::disk(1.0), ConvexBody::disk(0.5), 256, 1e-6, 2000);
    CHECK(ok.dual);
    CHECK(ok.max_tangency_error <= 1e-9);
    CHECK(std::fabs(ok.perimeter_C - 2 * kPi) < 1e-9);
    CHECK(std::fabs(ok.perimeter_C_dual - 2 * kPi) < 1e-9);

    // wrong dual radius: the tangency test fails immediately
    const DualityReport bad =
        verify_duality(disks, ConvexBody::disk(1.0), ConvexBody::disk(0.6), 64, 1e-6, 2000);
    CHECK(!bad.dual);
    CHECK(bad.max_tangency_error > 0.05);

    const BilliardConfig ell(ConvexBody::ellipse_axes(3.0, 2.0), ConvexBody::disk(1.0));
    const DualityReport conf =
        verify_duality(ell, ConvexBody::ellipse_axes(std::sqrt(8.0), std::sqrt(3.0)),
                       confocal_dual(3.0, 2.0, 1.0), 256, 1e-6, 60000);
    CHECK(conf.dual);
    CHECK(conf.max_tangency_error <= 1e-6);
    CHECK(std::fabs(conf.perimeter_C - conf.perimeter_C_dual) <= 1e-4);
    CHECK(std::fabs(conf.lazutkin_C - conf.lazutkin_C_dual) <= 1e-3);
    CHECK(std::fabs(conf.rotation_C - conf.rotation_C_dual) <= 1e-4);
}

TEST_CASE("dual construction is stable under caustic perturbation") {
    const ConvexBody metric = ConvexBody::disk(1.0);
    const double L = 8.0;
    const ConvexBody c0 = ConvexBody::ellipse_axes(1.0, 0.6);
    const ConvexBody k0 = string_construct({c0, metric, L}, 1024);
    const ConvexBody d0 = dual_caustic_smooth(k0, c0, 1024);

    const double delta = 1e-3;
    const ConvexBody c1 = ConvexBody::ellipse_axes(1.0 + delta, 0.6);
    CHECK(hausdorff_distance(c0, c1) == doctest::Approx(delta).epsilon(1e-6));
    const ConvexBody k1 = string_construct({c1, metric, L}, 1024);
    const ConvexBody d1 = dual_caustic_smooth(k1, c1, 1024);
    CHECK(hausdorff_distance(d0, d1) <= 10 * delta);
}

TEST_CASE("rounded polygon duals approach the polygonal dual") {
    const ConvexBody tri = centered_triangle();
    const ConvexBody sharp = dual_caustic_polygon(
        string_construct({tri, ConvexBody::disk(1.0), 6.0}, 1024), tri);

    // soft-max of the vertex support functions: smooth, strictly convex, and
    // within rho * log(3) of the triangle
    auto rounded_dual = [&](double rho) {
        const std::vector<Vec2>& v = tri.vertices();
        const ConvexBody c = ConvexBody::sampled_from(
            [&](double theta, double& h, Vec2& g) {
                const Vec2 u = dir_of_angle(theta);
                double hmax = dot(v[0], u);
                for (const Vec2& vk : v) hmax = std::max(hmax, dot(vk, u));
                double z = 0.0;
                Vec2 xbar{0.0, 0.0};
                for (const Vec2& vk : v) {
                    const double wk = std::exp((dot(vk, u) - hmax) / rho);
                    z += wk;
                    xbar = xbar + vk * wk;
                }
                xbar = xbar / z;
                h = hmax + rho * std::log(z);
                // boundary point h u + h' u-perp with h' = <xbar, u-perp>
                g = xbar + u * (h - dot(xbar, u));
            },
            4096, true);
        const ConvexBody k = string_construct({c, ConvexBody::disk(1.0), 6.0}, 1024);
        return dual_caustic_smooth(k, c, 2048);
    };

    const double err1 = hausdorff_distance(rounded_dual(0.05), sharp);
    const double err2 = hausdorff_distance(rounded_dual(0.025), sharp);
    CHECK(err1 < 0.1);
    CHECK(err2 < 0.7 * err1);
}
