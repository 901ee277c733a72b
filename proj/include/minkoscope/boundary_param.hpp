#pragma once

#include <vector>

#include "minkoscope/convex_body.hpp"

namespace mink {

/// Counter-clockwise parametrization of the boundary of `body` with (numerically)
/// unit speed in the norm h_T of `metric`. gamma(0) is anchored at the boundary
/// point on the positive q1-axis. Built once from a dense radial table; point,
/// tangent and inverse lookups interpolate that table.
class BoundaryParam {
public:
    BoundaryParam(ConvexBody body, ConvexBody metric, int resolution = 1024);

    double total_length() const { return length_; }         // P
    Vec2 point_at(double t) const;                          // gamma(t)
    Vec2 tangent_at(double t) const;                        // h_T-unit tangent
    double param_of(const Vec2& q) const;                   // inverse of point_at
    const ConvexBody& body() const { return body_; }
    const ConvexBody& metric() const { return metric_; }

private:
    struct Segment;  // interpolation state for one table cell
    Segment locate(double t) const;
    Vec2 eval(int j, double u) const;
    Vec2 eval_derivative(int j, double u) const;

    ConvexBody body_;
    ConvexBody metric_;
    int n_ = 0;
    double length_ = 0.0;
    std::vector<Vec2> pts_;     // boundary points at uniform radial angles
    std::vector<Vec2> der_;     // node derivatives wrt the chord-length knots
    std::vector<double> cum_;   // cumulative h_T chord length, size n_+1
};

}  // namespace mink
