#pragma once

#include "minkoscope/convex_body.hpp"
#include "minkoscope/oriented_line.hpp"

namespace mink {

/// Tangent lines from an exterior point q to a convex body C.
/// positive_line runs from q towards e and keeps C in its closed left
/// half-plane; negative_line runs from q towards b and keeps C on its right.
/// When q is collinear with a degenerate C (so the tangent line is the line
/// through C itself) e == b is the boundary point nearest q and `collinear`
/// is set.
struct TangentPair {
    Vec2 e, b;
    OrientedLine positive_line, negative_line;
    bool collinear = false;
};

TangentPair tangent_points(const ConvexBody& C, const Vec2& q);

}  // namespace mink
