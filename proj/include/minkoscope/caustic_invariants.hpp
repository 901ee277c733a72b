#pragma once

#include <vector>

#include "minkoscope/billiard.hpp"
#include "minkoscope/convex_body.hpp"

namespace mink {

/// The invariant circle of the billiard map induced by a convex caustic:
/// the annulus graph s(t) traced by the positive tangent lines to the caustic,
/// sampled on a uniform t-grid over one period.
class InvariantCircle {
public:
    InvariantCircle(ConvexBody caustic, double period, std::vector<double> t,
                    std::vector<double> s);

    const ConvexBody& caustic() const { return caustic_; }
    double period() const { return period_; }
    const std::vector<double>& t() const { return t_; }
    const std::vector<double>& s() const { return s_; }

    /// periodic cubic interpolation of the graph
    double s_of(double t) const;
    /// largest sampled slope |Δs/Δt| (finite for caustic circles)
    double lipschitz_bound() const;
    /// phase-form positive tangent line at the boundary point gamma_K(t)
    OrientedLine line_at(const BilliardConfig& config, double t) const;

private:
    ConvexBody caustic_;
    double period_ = 0.0;
    std::vector<double> t_, s_;
};

/// Samples the positive tangent lines to a verified caustic at `resolution`
/// boundary points and records their annulus coordinates.
InvariantCircle invariant_circle(const BilliardConfig& config, const ConvexBody& C,
                                 int resolution = 1024);

/// Average lift advance per iterate, as a fraction of the period, over N steps
/// started on the circle. A tangency mid-run shortens the average window.
double rotation_number(const BilliardConfig& config, const InvariantCircle& circle,
                       int N = 100000);

/// Birkhoff average of the generating function over the symmetric orbit window
/// n = -N .. N-1, realized by rewinding N steps through map reversal.
double minimal_action(const BilliardConfig& config, const InvariantCircle& circle, int N = 100000);

/// The annulus integral -oint s dt by trapezoidal quadrature on the sample grid.
double perimeter_via_circle(const BilliardConfig& config, const InvariantCircle& circle);

/// Scalar invariants of one caustic together with the residual of the identity
/// lazutkin = -beta - omega * perimeter.
struct InvariantSummary {
    double omega = 0.0;
    double beta = 0.0;
    double perimeter = 0.0;             // direct boundary-length computation
    double perimeter_quadrature = 0.0;  // -oint s dt on the invariant circle
    double lazutkin = 0.0;              // constant string length minus perimeter
    double identity_residual = 0.0;     // |lazutkin + beta + omega * perimeter|
};

/// Both sides of a dual candidate pair: C as a caustic of the table billiard
/// and C' as a caustic of the swapped billiard in the geometry body.
struct ParameterReport {
    InvariantSummary table_side;
    InvariantSummary dual_side;
    double perimeter_gap = 0.0;
    double lazutkin_gap = 0.0;
    double rotation_gap = 0.0;
};

InvariantSummary invariant_summary(const BilliardConfig& config, const ConvexBody& C,
                                   int N = 100000, int resolution = 1024);

ParameterReport parameter_report(const BilliardConfig& config, const ConvexBody& C,
                                 const ConvexBody& C_dual, int N = 100000, int resolution = 1024);

}  // namespace mink
