#pragma once

#include "qmlp/activation.hpp"
#include "qmlp/errors.hpp"
#include "qmlp/qlinalg.hpp"

namespace qmlp {

/// Quaternion nonlinear filter Φ(w^H u) trained by quaternion LMS.
template <std::floating_point T = double>
struct SLPState {
  QVector<T> w;
  T eta{};

  SLPState() = default;
  SLPState(QVector<T> weights, T step) : w(std::move(weights)), eta(step) {
    if (!(eta > T(0))) throw ParameterError("SLPState: eta must be > 0");
    if (!is_finite(w)) throw ParameterError("SLPState: non-finite weight");
  }
};

template <typename T>
Quaternion<T> slp_forward(const SLPState<T>& state, const QVector<T>& u) {
  detail::require_dims(u.size() == state.w.size(), "slp_forward: u.len != w.len");
  return split_phi(hermitian_dot(state.w, u));
}

template <typename T>
Quaternion<T> slp_error(const Quaternion<T>& d, const SLPState<T>& state, const QVector<T>& u) {
  return d - slp_forward(state, u);
}

/// w ← w + η·u·[∂Φ/∂x* ⊙ e*]; the bracket is a right Hamilton factor on each u_k.
template <typename T>
SLPState<T> slp_update(const SLPState<T>& state, const QVector<T>& u, const Quaternion<T>& d) {
  detail::require_dims(u.size() == state.w.size(), "slp_update: u.len != w.len");
  const auto x = hermitian_dot(state.w, u);
  const auto e = d - split_phi(x);
  const auto factor = split_product(split_phi_grad(x), conj(e));
  SLPState<T> next = state;
  for (std::size_t k = 0; k < u.size(); ++k) next.w[k] += state.eta * hamilton_mul(u[k], factor);
  return next;
}

/// Same update written out component by component:
/// w ← w + η·u·[sech²(xa)ea − sech²(xb)eb ι − sech²(xc)ec J − sech²(xd)ed κ].
template <typename T>
SLPState<T> slp_update_expanded(const SLPState<T>& state, const QVector<T>& u,
                                const Quaternion<T>& d) {
  detail::require_dims(u.size() == state.w.size(), "slp_update_expanded: u.len != w.len");
  const auto x = hermitian_dot(state.w, u);
  const auto e = d - split_phi(x);
  const Quaternion<T> factor{phi_prime(x.a) * e.a, -phi_prime(x.b) * e.b,
                             -phi_prime(x.c) * e.c, -phi_prime(x.d) * e.d};
  SLPState<T> next = state;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const auto& uk = u[k];
    // u_k · factor, expanded by hand.
    next.w[k] += state.eta * Quaternion<T>{
        uk.a * factor.a - uk.b * factor.b - uk.c * factor.c - uk.d * factor.d,
        uk.a * factor.b + uk.b * factor.a + uk.c * factor.d - uk.d * factor.c,
        uk.a * factor.c - uk.b * factor.d + uk.c * factor.a + uk.d * factor.b,
        uk.a * factor.d + uk.b * factor.c - uk.c * factor.b + uk.d * factor.a};
  }
  return next;
}

}  // namespace qmlp
