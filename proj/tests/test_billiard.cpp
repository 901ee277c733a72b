#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "minkoscope/billiard.hpp"
#include "minkoscope/convex_body.hpp"
#include "minkoscope/errors.hpp"
#include "minkoscope/oriented_line.hpp"
#include "minkoscope/perimeter.hpp"
#include "minkoscope/tangents.hpp"

using namespace mink;

namespace {
constexpr double kPi = std::numbers::pi;

double vec_err(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

double line_err(const OrientedLine& a, const OrientedLine& b) {
    return vec_err(a.base, b.base) + vec_err(a.dir.normalized(), b.dir.normalized());
}

Vec2 boundary_point(const ConvexBody& body, double theta) {
    const Vec2 u = dir_of_angle(theta);
    return u / body.gauge(u);
}

// a transversal phase line: boundary base, direction well inside the inward cone
OrientedLine random_transversal(const ConvexBody& body, std::mt19937& rng, double margin = 0.35) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const Vec2 q = boundary_point(body, 2 * kPi * uni(rng));
    const double nu = body.outer_normal(q).angle();
    const double phi = nu + kPi / 2 + margin + uni(rng) * (kPi - 2 * margin);
    return {q, dir_of_angle(phi)};
}
}  // namespace

TEST_CASE("next impact along a chord") {
    const ConvexBody disk = ConvexBody::disk(1.0);
    const Vec2 hit = next_impact(disk, {{1, 0}, Vec2{-1, 1}.normalized()});
    CHECK(vec_err(hit, {0, 1}) < 1e-9);

    const ConvexBody E = ConvexBody::ellipse_axes(3, 2);
    CHECK(vec_err(next_impact(E, {{-3, 0}, {1, 0}}), {3, 0}) < 1e-9);

    // octagon: ray from (0,-2) along (1,2) leaves through the edge x + y = 3
    const ConvexBody oct = ConvexBody::polygon(
        {{2, 1}, {1, 2}, {-1, 2}, {-2, 1}, {-2, -1}, {-1, -2}, {1, -2}, {2, -1}});
    const Vec2 oct_hit = next_impact(oct, {{0, -2}, Vec2{1, 2}.normalized()});
    CHECK(oct_hit.x + oct_hit.y == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(vec_err(oct_hit, {5.0 / 3.0, 4.0 / 3.0}) < 1e-8);

    CHECK_THROWS_AS(next_impact(disk, {{3, 0}, {-1, 0}}), Error);          // base outside
    CHECK_THROWS_AS(next_impact(disk, {{1, 0}, {1, 0}}), Error);           // exits immediately
    CHECK_THROWS_AS(next_impact(disk, {{0, 1}, {1, 0}}), Error);           // grazing
}

TEST_CASE("billiard configuration validation") {
    CHECK_THROWS_AS(BilliardConfig(ConvexBody::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}),
                                   ConvexBody::disk(1.0)),
                    Error);
    CHECK_THROWS_AS(BilliardConfig(ConvexBody::disk(1.0), ConvexBody::lp_ball(1.0)), Error);

    const BilliardConfig config(ConvexBody::ellipse_axes(3, 2), ConvexBody::lp_ball(1.5));
    const double per = minkowski_perimeter(config.K(), config.T());
    CHECK(std::fabs(config.P() - per) < 1e-6 * per);
    CHECK(std::fabs(config.paramK().total_length() - config.paramT().total_length()) < 1e-6 * per);
}

TEST_CASE("one-step map between the line spaces") {
    const BilliardConfig config(ConvexBody::disk(1.0), ConvexBody::disk(1.0));
    const OrientedLine ell{{1, 0}, Vec2{-1, 1}.normalized()};
    const OrientedLine out = psi(config, ell, Side::K);
    CHECK(vec_err(out.base, Vec2{1, -1}.normalized()) < 1e-9);
    CHECK(vec_err(out.dir, {0, 1}) < 1e-9);

    // the pairing <n_K(q), n_T(p)> changes sign across one application
    const BilliardConfig mixed(ConvexBody::ellipse_axes(3, 2), ConvexBody::disk(1.0));
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        const OrientedLine line = random_transversal(mixed.K(), rng);
        const Vec2 p_in = mixed.T().inverse_normal(-line.dir);
        const double before = dot(mixed.K().outer_normal(line.base), mixed.T().outer_normal(p_in));
        const OrientedLine image = psi(mixed, line, Side::K);
        const Vec2 q_out = mixed.K().inverse_normal(image.dir);
        const double after = dot(mixed.K().outer_normal(q_out), mixed.T().outer_normal(image.base));
        CHECK(before > 0);
        CHECK(after < 0);
    }
}

TEST_CASE("billiard map rotates disk chords rigidly") {
    const BilliardConfig config(ConvexBody::disk(1.0), ConvexBody::disk(1.0));
    OrientedLine line{{1, 0}, dir_of_angle(3 * kPi / 4)};
    // Euclidean reflection at the first arrival point (0,1)
    const OrientedLine next = billiard_map(config, line);
    CHECK(vec_err(next.base, {0, 1}) < 1e-9);
    CHECK(vec_err(next.dir, dir_of_angle(5 * kPi / 4)) < 1e-9);
    for (int n = 0; n < 16; ++n) {
        CHECK(vec_err(line.base, dir_of_angle(n * kPi / 2)) < 1e-8);
        CHECK(vec_err(line.dir, dir_of_angle(3 * kPi / 4 + n * kPi / 2)) < 1e-8);
        line = billiard_map(config, line);
    }
}

TEST_CASE("two-periodic major axis orbit") {
    const BilliardConfig config(ConvexBody::ellipse_axes(3, 2), ConvexBody::disk(1.0));
    const OrientedLine start{{-3, 0}, {1, 0}};
    const OrientedLine half = billiard_map(config, start);
    CHECK(vec_err(half.base, {3, 0}) < 1e-9);
    CHECK(vec_err(half.dir, {-1, 0}) < 1e-9);
    const OrientedLine full = billiard_map(config, half);
    CHECK(line_err(full, start) < 1e-8);
}

TEST_CASE("confocal tangency persists along the orbit") {
    // a = 3, b = 2, lambda = 1: the confocal ellipse with semi-axes sqrt(8), sqrt(3)
    const BilliardConfig config(ConvexBody::ellipse_axes(3, 2), ConvexBody::disk(1.0));
    const ConvexBody C = ConvexBody::ellipse_axes(std::sqrt(8.0), std::sqrt(3.0));
    OrientedLine line = tangent_points(C, {3, 0}).positive_line;
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        worst = std::max(worst, line_body_distance(line, C));
        line = billiard_map(config, line);
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("duality transform algebra") {
    const std::vector<BilliardConfig> configs = {
        BilliardConfig(ConvexBody::disk(2.0), ConvexBody::disk(1.0)),
        BilliardConfig(ConvexBody::ellipse_axes(3, 2), ConvexBody::disk(1.0)),
        BilliardConfig(ConvexBody::ellipse_axes(2, 1.2), ConvexBody::lp_ball(1.5)),
    };

    // closed form with Euclidean geometry: p is the unit chord direction, w = q/R
    const OrientedLine ell{{2, 0}, Vec2{-1, 1}.normalized()};
    const OrientedLine a0 = alpha(configs[0], ell, Side::K);
    CHECK(vec_err(a0.base, Vec2{-1, 1}.normalized()) < 1e-9);
    CHECK(vec_err(a0.dir, {1, 0}) < 1e-9);

    std::mt19937 rng(11);
    for (const BilliardConfig& config : configs) {
        for (int i = 0; i < 120; ++i) {
            const OrientedLine line = random_transversal(config.K(), rng);
            // involution
            const OrientedLine back = alpha(config, alpha(config, line, Side::K), Side::T);
            CHECK(vec_err(back.base, line.base) < 1e-9);
            CHECK(vec_err(back.dir, line.dir.normalized()) < 1e-9);
            // alpha agrees with psi of the reversed phase line on side K
            const OrientedLine rev = phase_reverse(config, line, Side::K);
            CHECK(line_err(alpha(config, line, Side::K), psi(config, rev, Side::K)) < 1e-9);
            // and with psi of the negated reversal on side T
            const OrientedLine tline = psi(config, line, Side::K);
            const OrientedLine trev = phase_reverse(config, tline, Side::T).negated();
            CHECK(line_err(alpha(config, tline, Side::T), psi(config, trev, Side::T)) < 1e-9);
        }
    }
}

TEST_CASE("annulus coordinates") {
    const BilliardConfig config(ConvexBody::disk(2.0), ConvexBody::disk(1.0));
    const ConvexBody C = ConvexBody::disk(1.0);

    // the counter-clockwise tangent family of the half-radius caustic sits at s = -1/2
    const AnnulusPoint a = annulus_coords(config, tangent_points(C, {2, 0}).positive_line);
    CHECK(a.t == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(a.s == doctest::Approx(-0.5).epsilon(1e-8));

    // grazing limits: forward (counter-clockwise) chords approach s = -1,
    // backward chords approach s = +1 and advance by a full period
    const double eps = 1e-3;
    const OrientedLine fwd{{2, 0}, dir_of_angle(kPi / 2 + eps)};
    const OrientedLine bwd{{2, 0}, dir_of_angle(3 * kPi / 2 - eps)};
    CHECK(annulus_coords(config, fwd).s < -0.999);
    CHECK(annulus_coords(config, bwd).s > 0.999);
    CHECK_THROWS_AS(annulus_coords(config, {{2, 0}, {0, 1}}), Error);

    const AnnulusPoint near_fwd = annulus_coords(config, fwd);
    const AnnulusPoint near_bwd = annulus_coords(config, bwd);
    CHECK(twist_map(config, near_fwd).lift - near_fwd.lift < 0.1 * config.P());
    CHECK(twist_map(config, near_bwd).lift - near_bwd.lift > 0.9 * config.P());

    // s is strictly monotone while the direction sweeps the inward cone
    const BilliardConfig mixed(ConvexBody::ellipse_axes(2, 1.2), ConvexBody::lp_ball(1.5));
    const Vec2 q = boundary_point(mixed.K(), 0.7);
    const double nu = mixed.K().outer_normal(q).angle();
    double prev = -2.0;
    for (int i = 1; i <= 50; ++i) {
        const double phi = nu + kPi / 2 + i * kPi / 51.0;
        const double s = annulus_coords(mixed, {q, dir_of_angle(phi)}).s;
        CHECK(s > prev);
        prev = s;
    }

    // round trip through the inverse
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (const BilliardConfig* c : {&config, &mixed}) {
        for (int i = 0; i < 100; ++i) {
            const double t = uni(rng) * c->P();
            const double s = -0.95 + 1.9 * uni(rng);
            const AnnulusPoint round = annulus_coords(*c, line_of_annulus(*c, t, s));
            CHECK(std::fabs(round.s - s) < 1e-9);
            const double dt = wrap(round.t - t + c->P() / 2, c->P()) - c->P() / 2;
            CHECK(std::fabs(dt) < 1e-9);
        }
    }
}

TEST_CASE("generating function and twist structure") {
    const BilliardConfig disks(ConvexBody::disk(1.0), ConvexBody::disk(1.0));
    CHECK(generating_function(disks, 0.0, kPi) == doctest::Approx(-2.0).epsilon(1e-7));

    const std::vector<BilliardConfig> configs = {
        BilliardConfig(ConvexBody::disk(2.0), ConvexBody::disk(1.0)),
        BilliardConfig(ConvexBody::ellipse_axes(2, 1.2), ConvexBody::ellipse_axes(1, 0.8)),
        BilliardConfig(ConvexBody::ellipse_axes(2, 1.2), ConvexBody::lp_ball(1.5)),
    };
    std::mt19937 rng(42);
    const double delta = 1e-6;
    auto fd_det = [](const BilliardConfig& config, const AnnulusPoint& a, double step,
                     double& twist) {
        auto lifted = [&](double t, double s) {
            AnnulusPoint in{wrap(t, config.P()), s, t};
            return twist_map(config, in);
        };
        const AnnulusPoint tp = lifted(a.t + step, a.s);
        const AnnulusPoint tm = lifted(a.t - step, a.s);
        const AnnulusPoint sp = lifted(a.t, a.s + step);
        const AnnulusPoint sm = lifted(a.t, a.s - step);
        twist = (sp.lift - sm.lift) / (2 * step);
        return ((tp.lift - tm.lift) * (sp.s - sm.s) - (tp.s - tm.s) * (sp.lift - sm.lift)) /
               (4 * step * step);
    };
    for (const BilliardConfig& config : configs) {
        // the 1.5-ball metric is not C^2 (its boundary curvature blows up at the
        // axis points), so the determinant needs a finer step and coarser tolerance
        const bool rough_metric = config.T().variant() == Variant::LpBall;
        for (int i = 0; i < 40; ++i) {
            const OrientedLine line = random_transversal(config.K(), rng, 0.5);
            const AnnulusPoint a = annulus_coords(config, line);
            const OrientedLine out = billiard_map(config, line);
            const AnnulusPoint ap = annulus_coords(config, out);
            const double r = a.t, rp = config.paramK().param_of(out.base);

            // s = -d h(r, r')/dr and s' = d h(r, r')/dr' for the chord r -> r'
            const double d1 = (generating_function(config, r + delta, rp) -
                               generating_function(config, r - delta, rp)) / (2 * delta);
            CHECK(std::fabs(d1 + a.s) < 1e-5);
            const double d2 = (generating_function(config, r, rp + delta) -
                               generating_function(config, r, rp - delta)) / (2 * delta);
            CHECK(std::fabs(d2 - ap.s) < 1e-5);

            // twist map differential: area preserving, positive twist
            double twist = 0.0;
            const double det = fd_det(config, a, rough_metric ? 1e-7 : delta, twist);
            CHECK(std::fabs(det - 1.0) < (rough_metric ? 1e-2 : 1e-5));
            CHECK(twist > 0);
        }
    }
}

TEST_CASE("trajectory iteration") {
    const BilliardConfig disks(ConvexBody::disk(1.0), ConvexBody::disk(1.0));
    const TrajectoryRecord rec =
        iterate_trajectory(disks, {{1, 0}, Vec2{-1, 1}.normalized()}, 100);
    REQUIRE(rec.q.size() == 100);
    CHECK(!rec.truncated);
    for (int n = 0; n < 100; ++n) {
        CHECK(rec.seg[n] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
        CHECK(rec.r[n] == doctest::Approx(n * kPi / 2).epsilon(1e-6));
        CHECK(rec.p[n].norm() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(rec.s[n] == doctest::Approx(rec.s[0]).epsilon(1e-9));
    }

    const BilliardConfig epair(ConvexBody::ellipse_axes(3, 2), ConvexBody::disk(1.0));
    const TrajectoryRecord two = iterate_trajectory(epair, {{-3, 0}, {1, 0}}, 9);
    for (int n = 0; n < 9; ++n) CHECK(two.seg[n] == doctest::Approx(6.0).epsilon(1e-8));
    for (int n = 0; n + 1 < 9; ++n)
        CHECK(two.r[n + 1] - two.r[n] == doctest::Approx(epair.P() / 2).epsilon(1e-6));

    // dual periodic trajectories have equal lengths (4-periodic square, 2-periodic axis)
    const BilliardConfig rdisks(ConvexBody::disk(2.0), ConvexBody::disk(1.0));
    const TrajectoryRecord sq =
        iterate_trajectory(rdisks, {{2, 0}, Vec2{-1, 1}.normalized()}, 4);
    double len_q = 0.0, len_p = 0.0;
    for (int n = 0; n < 4; ++n) {
        len_q += sq.seg[n];
        len_p += rdisks.K().support(sq.p[n] - sq.p[(n + 1) % 4]);
    }
    CHECK(std::fabs(len_q - len_p) < 1e-8);
    CHECK(len_q == doctest::Approx(8 * std::sqrt(2.0)).epsilon(1e-9));

    const TrajectoryRecord axis = iterate_trajectory(epair, {{-3, 0}, {1, 0}}, 2);
    double alen_q = 0.0, alen_p = 0.0;
    for (int n = 0; n < 2; ++n) {
        alen_q += axis.seg[n];
        alen_p += epair.K().support(axis.p[n] - axis.p[(n + 1) % 2]);
    }
    CHECK(std::fabs(alen_q - alen_p) < 1e-8);

    // a tangent start truncates immediately
    const TrajectoryRecord cut = iterate_trajectory(rdisks, {{2, 0}, {0, 1}}, 5);
    CHECK(cut.truncated);
    CHECK(cut.q.empty());

    CHECK_THROWS_AS(iterate_trajectory(rdisks, {{2, 0}, {-1, 0}}, 0), Error);
}

TEST_CASE("phase reversal conjugates the dynamics") {
    const BilliardConfig config(ConvexBody::ellipse_axes(2, 1.2), ConvexBody::lp_ball(1.5));
    std::mt19937 rng(5);
    for (int i = 0; i < 60; ++i) {
        const OrientedLine line = random_transversal(config.K(), rng);
        const OrientedLine twice =
            phase_reverse(config, phase_reverse(config, line, Side::K), Side::K);
        CHECK(line_err(twice, line) < 1e-9);
        // reverse, step, reverse undoes one forward step
        const OrientedLine forward = billiard_map(config, line);
        const OrientedLine back = phase_reverse(
            config, billiard_map(config, phase_reverse(config, forward, Side::K)), Side::K);
        CHECK(line_err(back, line) < 1e-8);
    }
}

TEST_CASE("continuity of the one-step map") {
    const BilliardConfig config(ConvexBody::ellipse_axes(3, 2), ConvexBody::disk(1.0));
    std::mt19937 rng(13);
    for (int i = 0; i < 20; ++i) {
        const OrientedLine line = random_transversal(config.K(), rng, 0.5);
        const OrientedLine image = psi(config, line, Side::K);
        double err[2];
        int k = 0;
        for (double delta : {1e-3, 1e-4}) {
            const Vec2 q = boundary_point(config.K(), line.base.angle() + delta);
            const OrientedLine moved{q, dir_of_angle(line.dir.angle() + delta)};
            err[k++] = line_err(psi(config, moved, Side::K), image);
        }
        CHECK(err[0] < 0.2);                    // O(delta) response
        const double ratio = err[0] / err[1];
        CHECK(ratio > 3.0);
        CHECK(ratio < 35.0);
    }

    // perturbing the bodies moves the image by a comparable amount
    const BilliardConfig bigger(ConvexBody::ellipse_axes(3 * 1.001, 2 * 1.001),
                                ConvexBody::disk(1.0));
    const OrientedLine probe{{-3, 0}, dir_of_angle(0.4)};
    CHECK(line_err(psi(bigger, probe, Side::K), psi(config, probe, Side::K)) < 0.1);
}
