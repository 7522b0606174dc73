#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <ostream>

namespace qmlp {

/// q = a + b·ι + c·J + d·κ with ι² = J² = κ² = ιJκ = −1.
template <std::floating_point T = double>
struct Quaternion {
  T a{};
  T b{};
  T c{};
  T d{};

  constexpr Quaternion() = default;
  constexpr Quaternion(T a_, T b_, T c_, T d_) : a(a_), b(b_), c(c_), d(d_) {}
  constexpr explicit Quaternion(T real) : a(real) {}

  static constexpr Quaternion zero() { return {}; }
  static constexpr Quaternion one() { return Quaternion(T(1)); }
  static constexpr Quaternion i() { return {T(0), T(1), T(0), T(0)}; }
  static constexpr Quaternion j() { return {T(0), T(0), T(1), T(0)}; }
  static constexpr Quaternion k() { return {T(0), T(0), T(0), T(1)}; }

  /// Every component set to `s`.
  static constexpr Quaternion splat(T s) { return {s, s, s, s}; }

  constexpr T operator[](std::size_t idx) const {
    switch (idx) {
      case 0: return a;
      case 1: return b;
      case 2: return c;
      default: return d;
    }
  }
  constexpr T& operator[](std::size_t idx) {
    switch (idx) {
      case 0: return a;
      case 1: return b;
      case 2: return c;
      default: return d;
    }
  }

  constexpr std::array<T, 4> components() const { return {a, b, c, d}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    a += o.a; b += o.b; c += o.c; d += o.d;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    a -= o.a; b -= o.b; c -= o.c; d -= o.d;
    return *this;
  }
  constexpr Quaternion& operator*=(T s) {
    a *= s; b *= s; c *= s; d *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

using Quat = Quaternion<double>;

template <typename T>
constexpr Quaternion<T> operator+(Quaternion<T> x, const Quaternion<T>& y) { return x += y; }
template <typename T>
constexpr Quaternion<T> operator-(Quaternion<T> x, const Quaternion<T>& y) { return x -= y; }
template <typename T>
constexpr Quaternion<T> operator-(const Quaternion<T>& x) { return {-x.a, -x.b, -x.c, -x.d}; }
template <typename T>
constexpr Quaternion<T> operator*(Quaternion<T> x, T s) { return x *= s; }
template <typename T>
constexpr Quaternion<T> operator*(T s, Quaternion<T> x) { return x *= s; }

/// Hamilton product, expanded with ιJ = κ, Jκ = ι, κι = J.
template <typename T>
constexpr Quaternion<T> hamilton_mul(const Quaternion<T>& x, const Quaternion<T>& y) {
  return {x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
          x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
          x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
          x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
}

template <typename T>
constexpr Quaternion<T> operator*(const Quaternion<T>& x, const Quaternion<T>& y) {
  return hamilton_mul(x, y);
}

enum class Axis { i, j, k };

/// q^μ = −μqμ: keeps the real part and the μ component, negates the other two.
template <typename T>
constexpr Quaternion<T> involution(const Quaternion<T>& q, Axis axis) {
  switch (axis) {
    case Axis::i: return {q.a, q.b, -q.c, -q.d};
    case Axis::j: return {q.a, -q.b, q.c, -q.d};
    case Axis::k: return {q.a, -q.b, -q.c, q.d};
  }
  return q;
}

template <typename T>
constexpr Quaternion<T> conj(const Quaternion<T>& q) {
  return {q.a, -q.b, -q.c, -q.d};
}

template <typename T>
constexpr T norm_sq(const Quaternion<T>& q) {
  return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d;
}

/// Componentwise product x ⊙ y = xa·ya + ι xb·yb + J xc·yc + κ xd·yd. Commutative,
/// and (x ⊙ y)* = x ⊙ y* = x* ⊙ y.
template <typename T>
constexpr Quaternion<T> split_product(const Quaternion<T>& x, const Quaternion<T>& y) {
  return {x.a * y.a, x.b * y.b, x.c * y.c, x.d * y.d};
}

template <typename T>
bool is_finite(const Quaternion<T>& q) {
  return std::isfinite(q.a) && std::isfinite(q.b) && std::isfinite(q.c) && std::isfinite(q.d);
}

template <typename T>
std::ostream& operator<<(std::ostream& os, const Quaternion<T>& q) {
  return os << '(' << q.a << ", " << q.b << ", " << q.c << ", " << q.d << ')';
}

}  // namespace qmlp
