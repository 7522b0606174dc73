#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qmlp/mlp.hpp"

namespace qmlp {

/// Scalar cost e·e* of the network on one sample.
inline double mlp_cost(const MLP& params, const QVec& x, const Quat& d) {
  return norm_sq(d - mlp_forward(params, x, d).phi_z);
}

/// ∂J/∂θa + ∂J/∂θb ι + ∂J/∂θc J + ∂J/∂θd κ for one quaternion parameter θ,
/// from central differences of the scalar cost. `slot` must point into `params`.
inline Quat hr_fd_gradient(MLP& params, Quat& slot, const QVec& x, const Quat& d, double step) {
  Quat g;
  for (std::size_t c = 0; c < 4; ++c) {
    const double saved = slot[c];
    slot[c] = saved + step;
    const double plus = mlp_cost(params, x, d);
    slot[c] = saved - step;
    const double minus = mlp_cost(params, x, d);
    slot[c] = saved;
    g[c] = (plus - minus) / (2 * step);
  }
  return g;
}

/// −4·∂J/∂θ* (halved, to match the stored convention) for every parameter,
/// assembled from finite differences only; independent of the analytic path.
inline MLPGradients<double> fd_gradients(MLP params, const QVec& x, const Quat& d, double step = 1e-5) {
  MLPGradients<double> g;
  auto ascent = [&](Quat& slot) { return -0.5 * hr_fd_gradient(params, slot, x, d, step); };
  g.g_q = ascent(params.q);
  g.g_v = QVec(params.v.size());
  for (std::size_t k = 0; k < params.v.size(); ++k) g.g_v[k] = ascent(params.v[k]);
  g.g_p = QVec(params.p.size());
  for (std::size_t k = 0; k < params.p.size(); ++k) g.g_p[k] = ascent(params.p[k]);
  g.g_W = QMat(params.W.rows(), params.W.cols());
  for (std::size_t r = 0; r < params.W.rows(); ++r)
    for (std::size_t c = 0; c < params.W.cols(); ++c) g.g_W(r, c) = ascent(params.W(r, c));
  return g;
}

inline constexpr std::array<const char*, 4> kGradBlocks = {"q", "v", "p", "W"};

struct GradCheckReport {
  std::size_t instances = 0;
  std::array<double, 4> max_rel_err{};  // indexed like kGradBlocks
  double tolerance = 1e-5;

  bool passed() const {
    return std::all_of(max_rel_err.begin(), max_rel_err.end(),
                       [&](double e) { return e < tolerance; });
  }
  std::vector<std::string> failing_blocks() const {
    std::vector<std::string> out;
    for (std::size_t b = 0; b < 4; ++b)
      if (!(max_rel_err[b] < tolerance)) out.emplace_back(kGradBlocks[b]);
    return out;
  }
};

namespace detail {

template <typename Range>
void collect(const Range& r, std::vector<double>& out) {
  for (const auto& q : r)
    for (std::size_t c = 0; c < 4; ++c) out.push_back(q[c]);
}

/// max|a − b| / max(max|a|, max|b|, floor) over one block.
inline double block_rel_err(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0, scale = 1e-12;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) || std::isnan(b[i])) return std::numeric_limits<double>::infinity();
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  }
  return diff / scale;
}

}  // namespace detail

using GradientFn = std::function<MLPGradients<double>(const MLP&, const QVec&, const Quat&)>;

inline MLPGradients<double> analytic_gradients(const MLP& params, const QVec& x, const Quat& d) {
  return mlp_gradients(params, x, d).grads;
}

/// Compares analytic gradients to the finite-difference assembly on random
/// instances with every component drawn from [−1, 1].
inline GradCheckReport run_gradient_check(std::size_t m, std::size_t n, std::size_t instances,
                                          std::uint64_t seed, const GradientFn& analytic = analytic_gradients,
                                          double fd_step = 1e-5, double tolerance = 1e-5) {
  if (m == 0 || n == 0) throw DimensionError("run_gradient_check: m and n must be >= 1");
  if (instances == 0) throw ParameterError("run_gradient_check: instances must be >= 1");
  GradCheckReport report;
  report.instances = instances;
  report.tolerance = tolerance;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto draw = [&] { return Quat{unit(rng), unit(rng), unit(rng), unit(rng)}; };

  for (std::size_t inst = 0; inst < instances; ++inst) {
    const MLP params = random_params<double>(m, n, rng, 1.0);
    QVec x(m);
    for (auto& q : x) q = draw();
    const Quat d = draw();

    const auto ana = analytic(params, x, d);
    const auto fd = fd_gradients(params, x, d, fd_step);

    std::array<std::vector<double>, 4> a, f;
    detail::collect(std::array{ana.g_q}, a[0]);
    detail::collect(std::array{fd.g_q}, f[0]);
    detail::collect(ana.g_v, a[1]);
    detail::collect(fd.g_v, f[1]);
    detail::collect(ana.g_p, a[2]);
    detail::collect(fd.g_p, f[2]);
    detail::collect(ana.g_W, a[3]);
    detail::collect(fd.g_W, f[3]);
    for (std::size_t b = 0; b < 4; ++b) {
      double err = a[b].size() == f[b].size() ? detail::block_rel_err(a[b], f[b])
                                              : std::numeric_limits<double>::infinity();
      if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
      report.max_rel_err[b] = std::max(report.max_rel_err[b], err);
    }
  }
  return report;
}

}  // namespace qmlp
