#pragma once

#include <random>

#include "qmlp/activation.hpp"
#include "qmlp/errors.hpp"
#include "qmlp/qlinalg.hpp"

namespace qmlp {

/// One-hidden-layer quaternion MLP, h(x) = Φ[v^H Ψ(W^H x + p) + q].
///
/// W is m×n (input to hidden), p and v have length n, q is the output bias.
template <std::floating_point T = double>
struct MLPParams {
  QMatrix<T> W;
  QVector<T> p;
  QVector<T> v;
  Quaternion<T> q{};

  MLPParams() = default;
  MLPParams(std::size_t input_dim, std::size_t hidden_dim)
      : W(input_dim, hidden_dim), p(hidden_dim), v(hidden_dim) {
    if (input_dim == 0 || hidden_dim == 0) throw DimensionError("MLPParams: m and n must be >= 1");
  }

  std::size_t input_dim() const noexcept { return W.rows(); }
  std::size_t hidden_dim() const noexcept { return W.cols(); }

  void validate() const {
    detail::require_dims(W.rows() > 0 && W.cols() > 0, "MLPParams: degenerate W");
    detail::require_dims(p.size() == W.cols() && v.size() == W.cols(),
                         "MLPParams: p/v length must equal W.cols");
  }

  friend bool operator==(const MLPParams&, const MLPParams&) = default;
};

using MLP = MLPParams<double>;

/// i.i.d. uniform components in [−scale, scale] for every parameter.
template <std::floating_point T = double, typename Rng>
MLPParams<T> random_params(std::size_t input_dim, std::size_t hidden_dim, Rng& rng,
                           T scale = T(0.5)) {
  std::uniform_real_distribution<T> dist(-scale, scale);
  auto draw = [&] { return Quaternion<T>{dist(rng), dist(rng), dist(rng), dist(rng)}; };
  MLPParams<T> params(input_dim, hidden_dim);
  for (auto& w : params.W) w = draw();
  for (auto& x : params.p) x = draw();
  for (auto& x : params.v) x = draw();
  params.q = draw();
  return params;
}

/// Cached intermediates of one forward pass.
template <std::floating_point T = double>
struct ForwardTrace {
  QVector<T> y;           // W^H x + p
  QVector<T> psi_y;       // Ψ(y)
  QVector<T> psi_y_grad;  // 4·∂Ψ/∂y*
  Quaternion<T> z{};      // v^H Ψ(y) + q
  Quaternion<T> phi_z{};
  Quaternion<T> phi_z_grad{};
  Quaternion<T> e{};      // d − Φ(z)

  friend bool operator==(const ForwardTrace&, const ForwardTrace&) = default;
};

/// Ascent directions −4·∂J/∂(·)* with the common factor 2 dropped; the update
/// rules add these, scaled by their step sizes.
template <std::floating_point T = double>
struct MLPGradients {
  Quaternion<T> g_q{};
  QVector<T> g_v;
  QVector<T> g_p;
  QMatrix<T> g_W;

  friend bool operator==(const MLPGradients&, const MLPGradients&) = default;
};

template <typename T>
ForwardTrace<T> mlp_forward(const MLPParams<T>& params, const QVector<T>& x,
                            const Quaternion<T>& d) {
  params.validate();
  detail::require_dims(x.size() == params.input_dim(), "mlp_forward: x.len != m");
  ForwardTrace<T> tr;
  tr.y = matrix_hermitian_apply(params.W, x) + params.p;
  tr.psi_y = split_psi(tr.y);
  tr.psi_y_grad = split_psi_grad(tr.y);
  tr.z = hermitian_dot(params.v, tr.psi_y) + params.q;
  tr.phi_z = split_phi(tr.z);
  tr.phi_z_grad = split_phi_grad(tr.z);
  tr.e = d - tr.phi_z;
  return tr;
}

/// ∂Φ(z)/∂z* ⊙ e
template <typename T>
Quaternion<T> grad_q(const ForwardTrace<T>& tr) {
  return split_product(tr.phi_z_grad, tr.e);
}

/// Ψ(y)[∂Φ(z)/∂z* ⊙ e*]
template <typename T>
QVector<T> grad_v(const ForwardTrace<T>& tr) {
  const auto factor = split_product(tr.phi_z_grad, conj(tr.e));
  QVector<T> out(tr.psi_y.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = hamilton_mul(tr.psi_y[k], factor);
  return out;
}

/// Hidden-bias gradient, written as the explicit component expansion.
///
/// With r = ∂Φ(z)/∂z* ⊙ e, each bracket below is one component of the Hamilton
/// product v_k·r, so the compact form is (v[∂Φ(z)/∂z* ⊙ e]) ⊙ ∂Ψ(y)/∂y*. The
/// ordering r·v does not match the expansion and fails the finite-difference check.
template <typename T>
QVector<T> grad_p(const ForwardTrace<T>& tr, const QVector<T>& v) {
  detail::require_dims(v.size() == tr.y.size(), "grad_p: v.len != n");
  const auto r = split_product(tr.phi_z_grad, tr.e);
  QVector<T> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto& vk = v[k];
    const auto& s = tr.psi_y_grad[k];
    out[k] = {(r.a * vk.a - r.b * vk.b - r.c * vk.c - r.d * vk.d) * s.a,
              (r.a * vk.b + r.b * vk.a - r.c * vk.d + r.d * vk.c) * s.b,
              (r.a * vk.c + r.b * vk.d + r.c * vk.a - r.d * vk.b) * s.c,
              (r.a * vk.d - r.b * vk.c + r.c * vk.b + r.d * vk.a) * s.d};
  }
  return out;
}

/// x((v[∂Φ(z)/∂z* ⊙ e]) ⊙ ∂Ψ(y)/∂y*)^H, i.e. entry (j, k) = x_j · conj(g_p[k]).
template <typename T>
QMatrix<T> grad_W(const ForwardTrace<T>& tr, const MLPParams<T>& params, const QVector<T>& x) {
  detail::require_dims(x.size() == params.input_dim(), "grad_W: x.len != m");
  const auto hidden = grad_p(tr, params.v);
  QMatrix<T> out(params.input_dim(), params.hidden_dim());
  for (std::size_t j = 0; j < out.rows(); ++j)
    for (std::size_t k = 0; k < out.cols(); ++k) out(j, k) = hamilton_mul(x[j], conj(hidden[k]));
  return out;
}

template <typename T>
struct TracedGradients {
  ForwardTrace<T> trace;
  MLPGradients<T> grads;
};

/// One forward pass, all four gradients from the shared trace.
template <typename T>
TracedGradients<T> mlp_gradients(const MLPParams<T>& params, const QVector<T>& x,
                                 const Quaternion<T>& d) {
  TracedGradients<T> out;
  out.trace = mlp_forward(params, x, d);
  out.grads.g_q = grad_q(out.trace);
  out.grads.g_v = grad_v(out.trace);
  out.grads.g_p = grad_p(out.trace, params.v);
  QMatrix<T> gw(params.input_dim(), params.hidden_dim());
  for (std::size_t j = 0; j < gw.rows(); ++j)
    for (std::size_t k = 0; k < gw.cols(); ++k) gw(j, k) = hamilton_mul(x[j], conj(out.grads.g_p[k]));
  out.grads.g_W = std::move(gw);
  return out;
}

}  // namespace qmlp
