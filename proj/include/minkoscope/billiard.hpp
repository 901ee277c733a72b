#pragma once

#include <memory>
#include <vector>

#include "minkoscope/boundary_param.hpp"
#include "minkoscope/convex_body.hpp"
#include "minkoscope/oriented_line.hpp"

namespace mink {

enum class Side { K, T };

/// A symmetric billiard configuration: table K (q-plane) and geometry T
/// (p-plane), both smooth, centrally symmetric and strictly convex.
/// Lines handed to the maps are in "phase form": the base point is the
/// departure impact on the boundary of the current side and the direction
/// points inward there.
class BilliardConfig {
public:
    BilliardConfig(ConvexBody K, ConvexBody T, int resolution = 1024);

    const ConvexBody& K() const { return K_; }
    const ConvexBody& T() const { return T_; }
    const BoundaryParam& paramK() const { return *paramK_; }
    const BoundaryParam& paramT() const { return *paramT_; }
    double P() const { return P_; }

private:
    ConvexBody K_, T_;
    std::shared_ptr<const BoundaryParam> paramK_, paramT_;
    double P_ = 0.0;
};

struct AnnulusPoint {
    double t = 0.0;   // mod P
    double s = 0.0;   // in (-1, 1)
    double lift = 0.0;  // unwrapped t
};

struct TrajectoryRecord {
    std::vector<Vec2> q;        // impacts on the table boundary
    std::vector<Vec2> p;        // dual points on the geometry boundary
    std::vector<double> r;      // lifted boundary parameters of the impacts
    std::vector<double> s;      // annulus ordinates
    std::vector<double> seg;    // h_T lengths of the chords q_n -> q_{n+1}
    bool truncated = false;     // a tangency cut the run short
};

/// First boundary intersection strictly ahead of the base point.
Vec2 next_impact(const ConvexBody& K, const OrientedLine& line);

/// One reflection step, alternating between the two line spaces.
OrientedLine psi(const BilliardConfig& config, const OrientedLine& line, Side side);

/// psi applied twice: the next oriented chord of the T-billiard in K.
OrientedLine billiard_map(const BilliardConfig& config, const OrientedLine& line);

/// The duality transform: (q, v) -> (p, w) with v = n_T(p) and w = n_K(q).
OrientedLine alpha(const BilliardConfig& config, const OrientedLine& line, Side side);

/// Phase form of the same geometric line with reversed orientation (the base
/// moves to the other boundary intersection). Involution; conjugates the
/// billiard map to its inverse.
OrientedLine phase_reverse(const BilliardConfig& config, const OrientedLine& line, Side side = Side::K);

AnnulusPoint annulus_coords(const BilliardConfig& config, const OrientedLine& line);
OrientedLine line_of_annulus(const BilliardConfig& config, double t, double s);

/// Twist map in annulus coordinates, with the lift advanced to the nearest
/// representative above the input lift.
AnnulusPoint twist_map(const BilliardConfig& config, const AnnulusPoint& a);

/// Generating function h(r, r') = -h_T(gamma(r) - gamma(r')).
double generating_function(const BilliardConfig& config, double r, double rp);

/// N applications of the billiard map recording impacts, dual points, lifted
/// parameters and segment lengths. A tangency mid-run truncates the record.
TrajectoryRecord iterate_trajectory(const BilliardConfig& config, const OrientedLine& start, int N);

}  // namespace mink
