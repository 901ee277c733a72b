#include "minkoscope/oriented_line.hpp"

#include <algorithm>
#include <cmath>

#include "minkoscope/convex_body.hpp"
#include "minkoscope/errors.hpp"

namespace mink {

OrientedLine OrientedLine::through(const Vec2& base, const Vec2& direction) {
    if (direction.x == 0.0 && direction.y == 0.0)
        throw invalid_argument("line direction must be nonzero");
    return {base, direction.normalized()};
}

OrientedLine OrientedLine::canonical() const {
    return {base - dir * dot(base, dir), dir};
}

bool OrientedLine::same_line(const OrientedLine& o, double tol) const {
    const OrientedLine a = canonical(), b = o.canonical();
    return (a.base - b.base).norm() <= tol && (a.dir - b.dir).norm() <= tol;
}

double line_body_distance(const OrientedLine& line, const ConvexBody& body) {
    const Vec2 n = rot90(line.dir);
    const double c = dot(line.base, n);
    const double above = c - body.support(n);
    const double below = -c - body.support(-n);
    return std::max({0.0, above, below});
}

double line_tangency_error(const OrientedLine& line, const ConvexBody& body) {
    const Vec2 n = rot90(line.dir);
    const double c = dot(line.base, n);
    // deviation from being a supporting line on either side; a secant scores
    // its penetration depth, not zero
    return std::min(std::fabs(body.support(n) - c), std::fabs(body.support(-n) + c));
}

}  // namespace mink
