#pragma once

#include <cmath>
#include <numbers>

namespace pprc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Point or displacement in the plane, in cm.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 &operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2 &operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2 &operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return a -= b; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// z-component of the planar cross product.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Counterclockwise rotation by 90 degrees.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Unit vector (cos a, sin a).
inline Vec2 direction(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Unit vector (-sin a, cos a), i.e. direction(angle) rotated counterclockwise.
inline Vec2 normal(double angle) { return {-std::sin(angle), std::cos(angle)}; }

/// Lifts the angle of `angle` into the branch [theta0, theta0 + 2 pi).
inline double lift_angle(double angle, double theta0) {
  double d = std::fmod(angle - theta0, kTwoPi);
  if (d < 0.0)
    d += kTwoPi;
  if (d >= kTwoPi)
    d -= kTwoPi;
  const double lifted = theta0 + d;
  return lifted < theta0 + kTwoPi ? lifted : theta0;
}

/// Closed interval on the real line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr double width() const { return hi - lo; }
  constexpr double mid() const { return 0.5 * (lo + hi); }
  constexpr bool contains(double v) const { return v >= lo && v <= hi; }
};

} // namespace pprc
