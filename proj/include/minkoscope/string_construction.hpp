#pragma once

#include <memory>

#include "minkoscope/billiard.hpp"
#include "minkoscope/boundary_param.hpp"
#include "minkoscope/convex_body.hpp"

namespace mink {

/// Input of the string construction: grow a table around the caustic C so that
/// every taut string of h_T-length L over C traces the same boundary.
struct StringSpec {
    ConvexBody caustic;
    ConvexBody metric;
    double length = 0.0;
};

/// Evaluates the string-length function f(q) = Per_{h_T}(Conv(q, C)) and its
/// gradient. Degenerate caustics (points, segments) use the two-sided traversal
/// convention; smooth caustics must contain the origin in their interior (the
/// cumulative arc table is radial).
class StringEvaluator {
public:
    StringEvaluator(ConvexBody caustic, ConvexBody metric);

    double length(const Vec2& q) const;
    Vec2 gradient(const Vec2& q) const;
    double caustic_perimeter() const { return per_; }
    const ConvexBody& caustic() const { return C_; }
    const ConvexBody& metric() const { return T_; }

private:
    ConvexBody C_, T_;
    std::shared_ptr<const BoundaryParam> arc_;  // smooth caustics only
    std::vector<double> cum_;                   // polygon caustics: vertex arclengths
    double per_ = 0.0;
};

double string_length(const ConvexBody& C, const ConvexBody& T, const Vec2& q);
Vec2 string_gradient(const ConvexBody& C, const ConvexBody& T, const Vec2& q);

/// The table {q : f(q) <= L} as a sampled convex body. Each boundary ray from
/// the caustic centroid is solved to 1e-12; the support grid is refined with
/// exact boundary solves, so accuracy does not degrade with `resolution`.
ConvexBody string_construct(const StringSpec& spec, int resolution = 1024);

struct CausticReport {
    bool is_caustic = false;
    double max_deviation = 0.0;      // spread of f over the table boundary
    double dynamic_deviation = 0.0;  // worst tangency loss after one billiard step
    double mean_length = 0.0;        // average string length on the boundary
};

/// Checks that f is constant on the table boundary and that tangency to C
/// survives the billiard map. tol < 0 selects 1e-6 * mean string length.
CausticReport verify_caustic(const BilliardConfig& config, const ConvexBody& C,
                             int samples = 256, double tol = -1.0);

double lazutkin_parameter(const StringSpec& spec);
/// Mean string length on the table boundary minus the caustic perimeter;
/// throws when the string length is not constant within tol.
double lazutkin_parameter(const BilliardConfig& config, const ConvexBody& C,
                          int samples = 256, double tol = -1.0);

}  // namespace mink
