#pragma once

#include <cmath>

namespace mink {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }

    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
    Vec2 normalized() const { const double n = norm(); return {x / n, y / n}; }
    double angle() const { return std::atan2(y, x); }
};

inline constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// counter-clockwise rotation by 90 degrees
inline constexpr Vec2 rot90(const Vec2& v) { return {-v.y, v.x}; }
// clockwise rotation by 90 degrees
inline constexpr Vec2 rot270(const Vec2& v) { return {v.y, -v.x}; }

inline Vec2 dir_of_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

// symmetric 2x2 matrix, stored as (a b; b c)
struct SymMat2 {
    double a = 1.0, b = 0.0, c = 1.0;

    Vec2 apply(const Vec2& v) const { return {a * v.x + b * v.y, b * v.x + c * v.y}; }
    double det() const { return a * c - b * b; }
    SymMat2 inverse() const {
        const double d = det();
        return {c / d, -b / d, a / d};
    }
    SymMat2 square() const {
        return {a * a + b * b, b * (a + c), b * b + c * c};
    }
};

inline double wrap(double t, double period) {
    double r = std::fmod(t, period);
    if (r < 0) r += period;
    return r;
}

}  // namespace mink
