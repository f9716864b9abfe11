#pragma once
//
// Minimal planar vector type shared by all modules.
//

#include <cmath>

namespace stsamp {

struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double xx, double yy) : x(xx), y(yy) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }
    double norm_inf() const { return std::max(std::fabs(x), std::fabs(y)); }
};

/// Reflection (x1, x2) -> (-x1, x2).
constexpr Vec2 tilde(const Vec2& v) { return {-v.x, v.y}; }

inline double dist(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

} // namespace stsamp
