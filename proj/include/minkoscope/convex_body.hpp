#pragma once

#include <functional>
#include <vector>

#include "minkoscope/vec.hpp"

namespace mink {

enum class Variant { Disk, Ellipse, Polygon, LpBall, Sampled };

/// A planar convex body, queried through its support function h(u) = sup <x,u>
/// and gauge g(x) = inf{r >= 0 : x in rK}. Closed-form variants answer exactly;
/// the Sampled variant interpolates h and its gradient (the support point) on a
/// uniform angle grid with periodic cubic interpolation.
///
/// Immutable after construction; all queries are pure.
class ConvexBody {
public:
    static ConvexBody disk(double radius);
    /// {x : |A x| <= 1}, A symmetric positive definite (A maps the body to the unit disk)
    static ConvexBody ellipse(const SymMat2& A);
    /// axis-aligned ellipse with semi-axes a (along x) and b (along y)
    static ConvexBody ellipse_axes(double a, double b);
    /// counter-clockwise convex vertex list; 1-gon points and 2-gon segments allowed
    static ConvexBody polygon(std::vector<Vec2> vertices);
    static ConvexBody segment(const Vec2& a, const Vec2& b);
    static ConvexBody point(const Vec2& p);
    /// unit ball of the lp norm, scaled; p in [1, inf) (use lp_ball_inf for p = inf)
    static ConvexBody lp_ball(double p, double scale = 1.0);
    static ConvexBody lp_ball_inf(double scale = 1.0);
    /// oracle(theta) -> (support value, support point) for direction (cos theta, sin theta)
    static ConvexBody sampled_from(const std::function<void(double, double&, Vec2&)>& oracle,
                                   int grid_size = kSampledGrid, bool smooth = true);
    static ConvexBody sampled(std::vector<double> support_values, std::vector<Vec2> support_points,
                              bool smooth = true);

    static constexpr int kSampledGrid = 4096;

    Variant variant() const { return variant_; }
    bool symmetric() const { return symmetric_; }
    bool smooth() const { return smooth_; }
    bool strictly_convex() const { return strictly_convex_; }
    /// polygon with fewer than 3 vertices (segment or point)
    bool degenerate() const;

    double support(const Vec2& u) const;
    /// boundary point maximizing <x,u>; for polygons an arbitrary maximizing vertex
    Vec2 support_point(const Vec2& u) const;
    double gauge(const Vec2& x) const;
    /// gauge together with the maximizing unit direction u* of <x,u>/h(u)
    double gauge_with_argmax(const Vec2& x, Vec2& argmax_dir) const;
    ConvexBody polar() const;
    /// Euclidean-unit outer normal at a boundary point; polygon vertices are rejected
    Vec2 outer_normal(const Vec2& q) const;
    /// unique boundary point whose outer normal is parallel to v (support point)
    Vec2 inverse_normal(const Vec2& v) const;
    /// boundary curvature at a boundary point (smooth variants only)
    double curvature_at(const Vec2& q) const;
    bool contains(const Vec2& x, double tol = 1e-9) const;
    /// Euclidean distance from x to the body (0 inside)
    double distance_to(const Vec2& x) const;
    ConvexBody scaled(double factor) const;

    const std::vector<Vec2>& vertices() const;
    double disk_radius() const { return radius_; }
    const SymMat2& ellipse_matrix() const { return matrix_; }
    double lp_exponent() const { return lp_p_; }
    double lp_scale() const { return lp_scale_; }
    int sample_count() const { return static_cast<int>(sample_h_.size()); }
    const std::vector<double>& sample_support() const { return sample_h_; }
    const std::vector<Vec2>& sample_points() const { return sample_g_; }

    Vec2 centroid() const;
    /// upper bound on max |x| over the body
    double outer_radius() const;

private:
    ConvexBody() = default;
    void finalize_polygon();
    void finalize_sampled();
    double sampled_support_value(double theta) const;
    Vec2 sampled_support_grad(double theta) const;
    /// node parameter theta such that the sampled boundary point at theta is parallel to x
    double sampled_radial_angle(const Vec2& x) const;

    Variant variant_ = Variant::Disk;
    bool symmetric_ = true;
    bool smooth_ = true;
    bool strictly_convex_ = true;

    double radius_ = 1.0;                    // Disk
    SymMat2 matrix_;                         // Ellipse: {|Ax| <= 1}
    SymMat2 matrix_inv_, matrix_inv2_, matrix_sq_;
    std::vector<Vec2> verts_;                // Polygon (CCW)
    std::vector<Vec2> edge_normals_;         // unit outward, per edge
    std::vector<double> edge_offsets_;       // h along edge normal
    double lp_p_ = 2.0, lp_q_ = 2.0, lp_scale_ = 1.0;  // LpBall (lp_p_ = inf allowed)
    std::vector<double> sample_h_;           // Sampled: h at theta_j = 2 pi j / N
    std::vector<Vec2> sample_g_;             // Sampled: support point at theta_j
    std::vector<double> sample_pt_angle_;    // unwrapped angle of sample_g_[j]
};

}  // namespace mink
