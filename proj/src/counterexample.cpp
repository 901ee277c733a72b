#include "minkoscope/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "minkoscope/errors.hpp"
#include "minkoscope/hausdorff.hpp"
#include "minkoscope/string_construction.hpp"
#include "minkoscope/threads.hpp"

namespace mink {

namespace {
constexpr double kLength = 6.0;

ConvexBody interval_caustic() { return ConvexBody::segment({-1.0, 0.0}, {1.0, 0.0}); }
}  // namespace

CounterexampleInstance build_instance(int n, int resolution) {
    if (n < 1) throw invalid_argument("the smoothing family starts at n = 1");
    CounterexampleInstance inst;
    inst.n = n;
    inst.p = 1.0 + 1.0 / n;
    inst.T = ConvexBody::lp_ball(inst.p);
    const ConvexBody I = interval_caustic();
    inst.K = string_construct({I, inst.T, kLength}, resolution);

    // lowest boundary point on the negative q2-axis: the string length is
    // strictly increasing in the distance from the caustic
    const StringEvaluator eval(I, inst.T);
    double lo = 0.0, hi = kLength;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (eval.length({0.0, -mid}) < kLength) lo = mid; else hi = mid;
        if (hi - lo < 1e-15 * kLength) break;
    }
    inst.q = {0.0, -0.5 * (lo + hi)};

    const Vec2 reach = Vec2{1.0, 0.0} - inst.q;
    inst.v = reach / inst.T.support(reach);
    // contact point of the metric ball whose outer normal points along v; its
    // first coordinate controls the width of the forced flat dual candidate
    inst.eps = inst.T.inverse_normal(inst.v).x;
    inst.gap = hausdorff_distance(inst.K, inst.T.polar().scaled(2.0));
    inst.limit_gap = hausdorff_distance(inst.K, ConvexBody::lp_ball_inf(2.0));
    return inst;
}

FlatCandidateReport flat_candidate_check(const CounterexampleInstance& inst, int directions) {
    if (directions < 4) throw invalid_argument("sandwich check needs at least 4 directions");
    FlatCandidateReport rep;
    rep.eps = inst.eps;
    rep.implied_length = 4.0 * (1.0 + inst.eps);

    const ConvexBody kp = inst.K.polar();
    const double inner = 2.0 - 2.0 * inst.eps;
    const double outer = 2.0 + 2.0 * inst.eps;
    double worst = 0.0;
    for (int i = 0; i < directions; ++i) {
        const Vec2 u = dir_of_angle(2.0 * std::numbers::pi * i / directions);
        const double hp = kp.support(u);
        const double ht = inst.T.support(u);
        worst = std::max(worst, inner * hp - ht);  // (2 - 2 eps) K-polar inside T
        worst = std::max(worst, ht - outer * hp);  // T inside (2 + 2 eps) K-polar
    }
    rep.max_violation = worst;
    rep.containment_ok = worst <= 1e-9;
    return rep;
}

CounterexampleTable counterexample_report(const std::vector<int>& ns, int resolution) {
    if (ns.empty()) throw invalid_argument("the report needs at least one family index");
    CounterexampleTable table;
    table.rows.resize(ns.size());
    parallel_for(static_cast<int>(ns.size()), [&](int i) {
        const CounterexampleInstance inst = build_instance(ns[i], resolution);
        const FlatCandidateReport flat = flat_candidate_check(inst);
        CounterexampleRow& row = table.rows[i];
        row.n = inst.n;
        row.p = inst.p;
        row.eps = inst.eps;
        row.gap = inst.gap;
        row.limit_gap = inst.limit_gap;
        row.violation = flat.max_violation;
        row.flat_fails = !flat.containment_ok && flat.max_violation > inst.eps;
    });

    bool decreasing = true, gaps = true, fails = true;
    for (size_t i = 0; i < table.rows.size(); ++i) {
        if (i > 0 && !(table.rows[i].eps < table.rows[i - 1].eps)) decreasing = false;
        // the polar gap only exceeds 0.5 late in the family; the distance to
        // the limiting square is the obstruction that stays large throughout
        if (table.rows[i].limit_gap < 0.5) gaps = false;
        // early members still admit a wide candidate; the contradiction must
        // hold once the forced candidate has become narrow
        if (table.rows[i].eps <= 0.1 && !table.rows[i].flat_fails) fails = false;
    }
    const bool narrow = table.rows.back().eps <= 0.1;
    table.no_dual_caustic = decreasing && gaps && fails && narrow;
    return table;
}

}  // namespace mink
