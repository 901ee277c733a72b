#pragma once

#include <utility>
#include <vector>

#include "minkoscope/billiard.hpp"
#include "minkoscope/convex_body.hpp"

namespace mink {

/// Tangency geometry of a boundary point q of the table with respect to an
/// interior caustic, in the Euclidean metric: e and b are the positive and
/// negative tangency points, L the two tangent lengths combined, theta the
/// reflection half-angle, and w = (e - b) / L the dual boundary point.
struct TangencyData {
    Vec2 q, e, b;
    double L = 0.0;
    double theta = 0.0;
    Vec2 w;
};

/// Arclength derivatives of the tangency data along the table boundary.
struct TangencyDerivatives {
    Vec2 e_prime, b_prime;
    double L_prime = 0.0;
};

/// The confocal companion {a^2 p1^2/(a^2-l) + b^2 p2^2/(b^2-l) <= 1} of the
/// caustic {q1^2/(a^2-l) + q2^2/(b^2-l) <= 1} inside the ellipse (a, b).
ConvexBody confocal_dual(double a, double b, double lambda);

/// Discriminants of the two tangency quadratics: the chord of the confocal
/// caustic cut by the line q + R p, and the chord of the companion cut by the
/// dual line p + R n(q). They agree identically.
std::pair<double, double> discriminant_pair(double a, double b, double lambda, const Vec2& q,
                                            const Vec2& p);

TangencyData tangency_data(const ConvexBody& K, const ConvexBody& C, const Vec2& q);

/// Outer table normal recovered from the tangency data alone via the
/// reflection law; exact even when the table is a sampled body.
Vec2 reflection_normal(const TangencyData& data);

/// Derivative formulas for strictly convex C with available curvature;
/// degenerate and polygonal caustics are rejected.
TangencyDerivatives tangency_derivatives(const ConvexBody& K, const ConvexBody& C, const Vec2& q);

/// The dual caustic as the convex hull of w(q) sampled over the table
/// boundary. Requires the string length of C in K to be constant (the
/// caustic property); throws not-a-caustic otherwise.
ConvexBody dual_caustic_smooth(const ConvexBody& K, const ConvexBody& C, int resolution = 1024);

/// One maximal boundary arc of the table on which the tangency vertex pair
/// of a polygonal caustic is constant.
struct PolygonDualArc {
    int e_index = 0, b_index = 0;   // vertex indices into the caustic polygon
    double t_begin = 0.0, t_end = 0.0;  // boundary parameters of the arc
    Vec2 w;                          // dual vertex contributed by the arc
};

struct PolygonDualResult {
    ConvexBody dual = ConvexBody::point({0, 0});
    std::vector<PolygonDualArc> arcs;        // counter-clockwise order
    std::vector<Vec2> junction_points;       // q_i between arc i and arc i+1
    std::vector<Vec2> junction_normals;      // table normal at q_i (reflection law)
};

/// Dual polygon of a polygonal caustic: partitions the table boundary into
/// elliptic arcs with constant tangency vertices and collects one dual vertex
/// per arc. A simultaneous switch of both tangency points at one junction
/// (non-generic string length) raises degenerate-junction.
PolygonDualResult dual_caustic_polygon_detailed(const ConvexBody& K, const ConvexBody& C,
                                                int scan = 8192);
ConvexBody dual_caustic_polygon(const ConvexBody& K, const ConvexBody& C);

struct DualityReport {
    double max_tangency_error = 0.0;
    double perimeter_C = 0.0, perimeter_C_dual = 0.0;
    double lazutkin_C = 0.0, lazutkin_C_dual = 0.0;
    double rotation_C = 0.0, rotation_C_dual = 0.0;
    bool dual = false;
};

/// Checks that the duality transform carries tangent lines of C to lines
/// tangent to C_dual and that the three parameters (perimeter, Lazutkin,
/// rotation number) agree across the pair. Always returns a report; any
/// failed sub-computation simply yields verdict not-dual.
DualityReport verify_duality(const BilliardConfig& config, const ConvexBody& C,
                             const ConvexBody& C_dual, int samples = 256, double tol = 1e-6,
                             int N = 100000);

}  // namespace mink
