#pragma once

#include <cmath>

namespace confine {

/// A point of the plane standing for the complex number x + iy.
///
/// Plain value type: arithmetic never checks finiteness. Validation happens
/// at the instance level, so values loaded from files can be inspected and
/// reported instead of rejected at construction.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }

    Vec2& operator+=(Vec2 r) {
        x += r.x;
        y += r.y;
        return *this;
    }
    Vec2& operator-=(Vec2 r) {
        x -= r.x;
        y -= r.y;
        return *this;
    }
    Vec2& operator*=(double s) {
        x *= s;
        y *= s;
        return *this;
    }

    constexpr bool operator==(const Vec2&) const = default;

    /// Euclidean inner product (equals Re(z * conj(w)) for complex z, w).
    constexpr double dot(Vec2 r) const { return x * r.x + y * r.y; }

    constexpr double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm_sq()); }

    /// Argument in (-pi, pi].
    double arg() const { return std::atan2(y, x); }

    constexpr bool is_zero() const { return x == 0.0 && y == 0.0; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

inline constexpr double dot(Vec2 a, Vec2 b) { return a.dot(b); }

/// Vector of the given modulus at the given angle.
inline Vec2 polar(double modulus, double angle) {
    return {modulus * std::cos(angle), modulus * std::sin(angle)};
}

} // namespace confine
