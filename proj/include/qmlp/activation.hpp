#pragma once

#include <cmath>

#include "qmlp/qlinalg.hpp"
#include "qmlp/quaternion.hpp"

namespace qmlp {

template <std::floating_point T>
T phi(T a) {
  return std::tanh(a);
}

/// sech²(a), as 1 − tanh²(a) so it stays well-behaved for large |a|.
template <std::floating_point T>
T phi_prime(T a) {
  const T t = std::tanh(a);
  return T(1) - t * t;
}

/// Φ(x): tanh applied to each component independently.
template <typename T>
Quaternion<T> split_phi(const Quaternion<T>& x) {
  return {phi(x.a), phi(x.b), phi(x.c), phi(x.d)};
}

/// 4·∂Φ/∂x* = sech²(xa) + sech²(xb)ι + sech²(xc)J + sech²(xd)κ.
///
/// The factor 4 is kept: every update rule consumes this scaled form and the
/// remaining constant lives in the step size.
template <typename T>
Quaternion<T> split_phi_grad(const Quaternion<T>& x) {
  return {phi_prime(x.a), phi_prime(x.b), phi_prime(x.c), phi_prime(x.d)};
}

template <typename T>
QVector<T> split_psi(const QVector<T>& y) {
  QVector<T> out(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) out[k] = split_phi(y[k]);
  return out;
}

template <typename T>
QVector<T> split_psi_grad(const QVector<T>& y) {
  QVector<T> out(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) out[k] = split_phi_grad(y[k]);
  return out;
}

}  // namespace qmlp
