#include "minkoscope/caustic_invariants.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "minkoscope/errors.hpp"
#include "minkoscope/perimeter.hpp"
#include "minkoscope/string_construction.hpp"
#include "minkoscope/tangents.hpp"
#include "minkoscope/threads.hpp"

namespace mink {

namespace {

double cubic(double m1, double p0, double p1, double p2, double u) {
    // Catmull-Rom on a uniform grid
    const double a = 2.0 * p0;
    const double b = p1 - m1;
    const double c = 2.0 * m1 - 5.0 * p0 + 4.0 * p1 - p2;
    const double d = -m1 + 3.0 * p0 - 3.0 * p1 + p2;
    return 0.5 * (a + u * (b + u * (c + u * d)));
}

}  // namespace

InvariantCircle::InvariantCircle(ConvexBody caustic, double period, std::vector<double> t,
                                 std::vector<double> s)
    : caustic_(std::move(caustic)), period_(period), t_(std::move(t)), s_(std::move(s)) {
    if (t_.size() != s_.size() || t_.size() < 16)
        throw invalid_argument("invariant circle needs matching t/s grids of size >= 16");
    for (size_t i = 1; i < t_.size(); ++i)
        if (t_[i] <= t_[i - 1])
            throw invalid_argument("invariant circle samples must have increasing t");
}

double InvariantCircle::s_of(double t) const {
    const int n = static_cast<int>(t_.size());
    // the grid is uniform by construction
    const double u = wrap(t, period_) / period_ * n;
    const int j = static_cast<int>(u) % n;
    const double frac = u - std::floor(u);
    auto at = [&](int k) { return s_[((j + k) % n + n) % n]; };
    return cubic(at(-1), at(0), at(1), at(2), frac);
}

double InvariantCircle::lipschitz_bound() const {
    const int n = static_cast<int>(t_.size());
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dt = (i + 1 < n) ? t_[i + 1] - t_[i] : period_ - t_[n - 1] + t_[0];
        const double ds = s_[(i + 1) % n] - s_[i];
        worst = std::max(worst, std::fabs(ds / dt));
    }
    return worst;
}

OrientedLine InvariantCircle::line_at(const BilliardConfig& config, double t) const {
    const Vec2 q = config.paramK().point_at(t);
    return tangent_points(caustic_, q).positive_line;
}

InvariantCircle invariant_circle(const BilliardConfig& config, const ConvexBody& C,
                                 int resolution) {
    if (resolution < 16) throw invalid_argument("invariant circle needs at least 16 samples");
    const CausticReport rep = verify_caustic(config, C);
    if (!rep.is_caustic)
        throw not_a_caustic("the invariant circle requires a verified caustic");

    const double P = config.P();
    std::vector<double> t(resolution), s(resolution);
    parallel_for(resolution, [&](int i) {
        t[i] = P * i / resolution;
        const Vec2 q = config.paramK().point_at(t[i]);
        const OrientedLine line = tangent_points(C, q).positive_line;
        s[i] = annulus_coords(config, line).s;
    });
    return InvariantCircle(C, P, std::move(t), std::move(s));
}

double rotation_number(const BilliardConfig& config, const InvariantCircle& circle, int N) {
    if (N < 2) throw invalid_argument("rotation number needs at least 2 iterations");
    const TrajectoryRecord rec =
        iterate_trajectory(config, circle.line_at(config, 0.0), N + 1);
    const size_t m = rec.r.size();
    if (m < 2) throw tangent_line("orbit left the transversal annulus immediately");
    return (rec.r[m - 1] - rec.r[0]) / ((m - 1) * config.P());
}

double minimal_action(const BilliardConfig& config, const InvariantCircle& circle, int N) {
    if (N < 1) throw invalid_argument("minimal action needs at least 1 iteration");
    // rewind N steps: the reversal conjugates the billiard map to its inverse
    OrientedLine line = phase_reverse(config, circle.line_at(config, 0.0));
    for (int n = 0; n < N; ++n) line = billiard_map(config, line);
    line = phase_reverse(config, line);

    // h(r_n, r_{n+1}) = -h_T(q_{n+1} - q_n) is minus the recorded chord length
    const TrajectoryRecord rec = iterate_trajectory(config, line, 2 * N);
    if (rec.seg.empty()) throw tangent_line("orbit left the transversal annulus immediately");
    double sum = 0.0;
    for (double len : rec.seg) sum += len;
    return -sum / static_cast<double>(rec.seg.size());
}

double perimeter_via_circle(const BilliardConfig& config, const InvariantCircle& circle) {
    (void)config;
    const std::vector<double>& t = circle.t();
    const std::vector<double>& s = circle.s();
    const int n = static_cast<int>(t.size());
    double integral = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dt =
            (i + 1 < n) ? t[i + 1] - t[i] : circle.period() - t[n - 1] + t[0];
        integral += 0.5 * (s[i] + s[(i + 1) % n]) * dt;
    }
    return -integral;
}

InvariantSummary invariant_summary(const BilliardConfig& config, const ConvexBody& C, int N,
                                   int resolution) {
    const InvariantCircle circle = invariant_circle(config, C, resolution);
    InvariantSummary out;
    out.omega = rotation_number(config, circle, N);
    out.beta = minimal_action(config, circle, N);
    out.perimeter = minkowski_perimeter(C, config.T());
    out.perimeter_quadrature = perimeter_via_circle(config, circle);
    out.lazutkin = lazutkin_parameter(config, C);
    out.identity_residual = std::fabs(out.lazutkin + out.beta + out.omega * out.perimeter);
    return out;
}

ParameterReport parameter_report(const BilliardConfig& config, const ConvexBody& C,
                                 const ConvexBody& C_dual, int N, int resolution) {
    ParameterReport rep;
    rep.table_side = invariant_summary(config, C, N, resolution);
    const BilliardConfig swapped(config.T(), config.K());
    rep.dual_side = invariant_summary(swapped, C_dual, N, resolution);
    rep.perimeter_gap = std::fabs(rep.table_side.perimeter - rep.dual_side.perimeter);
    rep.lazutkin_gap = std::fabs(rep.table_side.lazutkin - rep.dual_side.lazutkin);
    rep.rotation_gap = std::fabs(rep.table_side.omega - rep.dual_side.omega);
    return rep;
}

}  // namespace mink
