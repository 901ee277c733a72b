#include "minkoscope/hausdorff.hpp"

#include <cmath>
#include <numbers>

namespace mink {

double hausdorff_distance(const ConvexBody& A, const ConvexBody& B) {
    const int m = 1 << 13;
    const double step = 2.0 * std::numbers::pi / m;
    auto diff = [&](double theta) {
        const Vec2 u = dir_of_angle(theta);
        return std::fabs(A.support(u) - B.support(u));
    };
    double best = 0.0, best_t = 0.0;
    for (int j = 0; j < m; ++j) {
        const double d = diff(step * j);
        if (d > best) { best = d; best_t = step * j; }
    }
    double lo = best_t - step, hi = best_t + step;
    for (int it = 0; it < 100; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (diff(m1) < diff(m2)) lo = m1; else hi = m2;
    }
    return std::max(best, diff(0.5 * (lo + hi)));
}

}  // namespace mink
