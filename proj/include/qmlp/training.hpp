#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qmlp/errors.hpp"
#include "qmlp/mlp.hpp"

namespace qmlp {

struct TrainConfig {
  double eta_q = 5e-3;
  double eta_v = 5e-3;
  double eta_p = 5e-3;
  double eta_w = 5e-3;
  double sigma = 1.0;  // MCC kernel width
  std::size_t iterations = 3000;
  std::uint64_t seed = 1;

  void validate() const {
    for (double eta : {eta_q, eta_v, eta_p, eta_w})
      if (!(eta >= 0 && std::isfinite(eta)))
        throw ParameterError("TrainConfig: step sizes must be finite and non-negative");
    if (!(sigma > 0 && std::isfinite(sigma))) throw ParameterError("TrainConfig: sigma must be finite and > 0");
  }
};

enum class Rule { mse, mcc };

inline std::string_view to_string(Rule r) { return r == Rule::mse ? "mse" : "mcc"; }

struct StepReport {
  std::size_t index = 0;
  Quat err{};
  double cost_mse = 0;  // e·e*
  double cost_mcc = 1;  // exp(−e·e*/2σ²)

  friend bool operator==(const StepReport&, const StepReport&) = default;
};

template <std::floating_point T = double>
struct Sample {
  QVector<T> x;
  Quaternion<T> d{};

  friend bool operator==(const Sample&, const Sample&) = default;
};

template <typename T>
struct StepResult {
  MLPParams<T> params;
  StepReport report;
};

/// Correntropy objective exp(−e·e*/(2σ²)), in (0, 1].
template <typename T>
T mcc_cost(const Quaternion<T>& e, T sigma) {
  if (!(sigma > T(0))) throw ParameterError("mcc_cost: sigma must be > 0");
  return std::exp(-norm_sq(e) / (T(2) * sigma * sigma));
}

/// Adds `scale`·η·g to every parameter block. All four blocks move from the same
/// pre-update gradients.
template <typename T>
MLPParams<T> apply_gradients(const MLPParams<T>& params, const MLPGradients<T>& g,
                             const TrainConfig& cfg, T scale = T(1)) {
  MLPParams<T> next = params;
  next.q += (scale * T(cfg.eta_q)) * g.g_q;
  axpy(scale * T(cfg.eta_v), g.g_v, next.v);
  axpy(scale * T(cfg.eta_p), g.g_p, next.p);
  axpy(scale * T(cfg.eta_w), g.g_W, next.W);
  return next;
}

namespace detail {

template <typename T>
void check_finite(const MLPParams<T>& p, std::size_t index) {
  if (!is_finite(p.q) || !is_finite(p.v) || !is_finite(p.p) || !is_finite(p.W))
    throw DivergenceError(index);
}

template <typename T>
StepReport make_report(const ForwardTrace<T>& tr, double sigma, std::size_t index) {
  StepReport r;
  r.index = index;
  r.err = Quat{double(tr.e.a), double(tr.e.b), double(tr.e.c), double(tr.e.d)};
  r.cost_mse = norm_sq(r.err);
  r.cost_mcc = mcc_cost(r.err, sigma);
  return r;
}

}  // namespace detail

/// Gradient descent on e·e*.
template <typename T>
StepResult<T> mse_step(const MLPParams<T>& params, const QVector<T>& x, const Quaternion<T>& d,
                       const TrainConfig& cfg, std::size_t index = 0) {
  cfg.validate();
  const auto [trace, grads] = mlp_gradients(params, x, d);
  StepResult<T> out{apply_gradients(params, grads, cfg), detail::make_report(trace, cfg.sigma, index)};
  detail::check_finite(out.params, index);
  return out;
}

/// Gradient ascent on the correntropy objective: the MSE increment scaled by
/// J_MCC evaluated on the pre-update error.
template <typename T>
StepResult<T> mcc_step(const MLPParams<T>& params, const QVector<T>& x, const Quaternion<T>& d,
                       const TrainConfig& cfg, std::size_t index = 0) {
  cfg.validate();
  const auto [trace, grads] = mlp_gradients(params, x, d);
  const T gate = mcc_cost(trace.e, T(cfg.sigma));
  StepResult<T> out{apply_gradients(params, grads, cfg, gate),
                    detail::make_report(trace, cfg.sigma, index)};
  detail::check_finite(out.params, index);
  return out;
}

template <typename T>
struct TrainResult {
  MLPParams<T> params;
  std::vector<StepReport> curve;
};

/// Online training: one step per sample, in stream order.
template <typename T>
TrainResult<T> train(MLPParams<T> params, std::span<const Sample<T>> stream, const TrainConfig& cfg,
                     Rule rule) {
  cfg.validate();
  TrainResult<T> out;
  out.curve.reserve(stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i) {
    auto step = rule == Rule::mse ? mse_step(params, stream[i].x, stream[i].d, cfg, i)
                                  : mcc_step(params, stream[i].x, stream[i].d, cfg, i);
    params = std::move(step.params);
    out.curve.push_back(step.report);
  }
  out.params = std::move(params);
  return out;
}

}  // namespace qmlp
