#pragma once

#include <vector>

#include "minkoscope/convex_body.hpp"

namespace mink {

/// One member of the smoothed-corner family: the lp metric with exponent
/// 1 + 1/n over the interval caustic [-1,1] x {0} with string length 6,
/// together with the quantities that force a flat dual candidate.
struct CounterexampleInstance {
    int n = 0;
    double p = 2.0;                           // smoothing exponent 1 + 1/n
    ConvexBody T = ConvexBody::disk(1.0);     // metric body (lp ball)
    ConvexBody K = ConvexBody::disk(1.0);     // string table over the interval
    Vec2 q;         // lowest table point on the negative q2-axis
    Vec2 v;         // tangent direction from q through (1, 0), gauge-normalized
    double eps = 0.0;  // first coordinate of the dual contact point
    double gap = 0.0;  // d_H(K, 2 T-polar), bounded away from 0 along the family
    double limit_gap = 0.0;  // d_H(K, square of side 4), the limiting obstruction
};

CounterexampleInstance build_instance(int n, int resolution = 1024);

/// Consequences of assuming the flat dual candidate [-eps, eps] x {0}: the
/// implied string length and the failure of the polar sandwich
/// (2 - 2 eps) K-polar <= T <= (2 + 2 eps) K-polar.
struct FlatCandidateReport {
    double eps = 0.0;
    double implied_length = 0.0;  // 4 (1 + eps)
    double max_violation = 0.0;   // worst support-function breach over directions
    bool containment_ok = false;
};

FlatCandidateReport flat_candidate_check(const CounterexampleInstance& inst, int directions = 512);

struct CounterexampleRow {
    int n = 0;
    double p = 2.0;
    double eps = 0.0;
    double gap = 0.0;
    double limit_gap = 0.0;
    double violation = 0.0;
    bool flat_fails = false;  // the forced flat candidate is geometrically impossible
};

struct CounterexampleTable {
    std::vector<CounterexampleRow> rows;
    /// eps decreasing toward 0 while the gap stays >= 0.5 and every flat
    /// candidate fails: no dual convex caustic along the family
    bool no_dual_caustic = false;
};

CounterexampleTable counterexample_report(const std::vector<int>& ns, int resolution = 1024);

}  // namespace mink
