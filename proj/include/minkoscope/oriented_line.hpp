#pragma once

#include "minkoscope/vec.hpp"

namespace mink {

class ConvexBody;

/// An oriented line: base point plus Euclidean-unit direction. The base is
/// meaningful to the billiard maps (it is the current impact point); the
/// canonical form (foot of the perpendicular from the origin) identifies
/// lines regardless of base.
struct OrientedLine {
    Vec2 base;
    Vec2 dir;  // unit

    static OrientedLine through(const Vec2& base, const Vec2& direction);

    /// same geometric line, opposite orientation
    OrientedLine reversed() const { return {base, -dir}; }
    /// central reflection x -> -x of the whole line
    OrientedLine negated() const { return {-base, -dir}; }
    /// base moved to the foot of the perpendicular from the origin
    OrientedLine canonical() const;
    /// true when both canonical forms agree within tol
    bool same_line(const OrientedLine& o, double tol = 1e-9) const;
};

/// Euclidean distance from the line (as an unbounded line) to the body; 0 when
/// the line meets the body.
double line_body_distance(const OrientedLine& line, const ConvexBody& body);

/// How far the line is from supporting the body: 0 iff it touches the boundary
/// without crossing the interior. Secant lines score their penetration depth.
double line_tangency_error(const OrientedLine& line, const ConvexBody& body);

}  // namespace mink
