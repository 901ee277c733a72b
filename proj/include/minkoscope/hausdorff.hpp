#pragma once

#include "minkoscope/convex_body.hpp"

namespace mink {

/// Hausdorff distance between convex bodies: sup over unit directions of
/// |h_A(u) - h_B(u)|, located by a dense scan plus local ternary refinement.
double hausdorff_distance(const ConvexBody& A, const ConvexBody& B);

}  // namespace mink
