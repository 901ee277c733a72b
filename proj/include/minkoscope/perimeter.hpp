#pragma once

#include "minkoscope/convex_body.hpp"

namespace mink {

/// Perimeter of D measured by the support function of T (T must be symmetric).
/// Polygons sum h_T over edge vectors exactly; degenerate segments count both
/// traversals; smooth bodies use chord sums with Richardson extrapolation.
double minkowski_perimeter(const ConvexBody& D, const ConvexBody& T);

}  // namespace mink
