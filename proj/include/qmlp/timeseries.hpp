#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "qmlp/errors.hpp"
#include "qmlp/training.hpp"

namespace qmlp {

/// dx/dt = 0.2·x(t−τ)/(1 + x(t−τ)^10) − 0.1·x(t), x(0) = x0, x(t) = 0 for t < 0.
struct MackeyGlassConfig {
  double tau = 17.0;
  double x0 = 0.12;
  double dt = 0.1;
  std::size_t n_samples = 3005;
  std::size_t sample_stride = 10;  // integration steps per emitted sample
  std::size_t transient = 1000;    // emitted samples discarded before output starts

  double sample_spacing() const { return dt * double(sample_stride); }

  void validate() const {
    if (!(tau > 0)) throw ParameterError("MackeyGlassConfig: tau must be > 0");
    if (!(dt > 0)) throw ParameterError("MackeyGlassConfig: dt must be > 0");
    if (sample_stride == 0) throw ParameterError("MackeyGlassConfig: sample_stride must be >= 1");
    const double steps = tau / dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * steps)
      throw ParameterError("MackeyGlassConfig: tau must be an integer multiple of dt");
  }
};

inline double mackey_glass_rhs(double x, double delayed) {
  const double d10 = std::pow(delayed, 10);
  return 0.2 * delayed / (1.0 + d10) - 0.1 * x;
}

/// Fixed-step RK4. The delayed state inside a step is read from a ring buffer of
/// past steps, with cubic Hermite interpolation (values plus one-sided end
/// derivatives) at the half step. Steps whose delayed window lies before t = 0
/// see an identically zero history; τ must be a whole number of steps so the
/// jump at t = 0 falls on a grid point.
inline std::vector<double> mackey_glass(const MackeyGlassConfig& cfg) {
  cfg.validate();
  const auto delay_steps = static_cast<std::size_t>(std::llround(cfg.tau / cfg.dt));
  const std::size_t ring = delay_steps + 1;
  const double h = cfg.dt;

  // Per step j: state at the step start, derivative just after the start, and
  // derivative just before the end.
  std::vector<double> x_hist(ring), m_start(ring), m_end(ring);
  double x_next_hist = 0;  // x at the end of the oldest buffered step

  std::vector<double> out;
  out.reserve(cfg.n_samples);
  const std::size_t total = (cfg.transient + cfg.n_samples) * cfg.sample_stride;

  double x = cfg.x0;
  for (std::size_t i = 0; i < total; ++i) {
    double lag0 = 0, lag_mid = 0, lag1 = 0;
    if (i >= delay_steps) {
      const std::size_t j = (i - delay_steps) % ring;
      lag0 = x_hist[j];
      lag1 = (i - delay_steps + 1 < i) ? x_hist[(j + 1) % ring] : x_next_hist;
      lag_mid = 0.5 * (lag0 + lag1) + h / 8.0 * (m_start[j] - m_end[j]);
    }
    const double k1 = mackey_glass_rhs(x, lag0);
    const double k2 = mackey_glass_rhs(x + 0.5 * h * k1, lag_mid);
    const double k3 = mackey_glass_rhs(x + 0.5 * h * k2, lag_mid);
    const double k4 = mackey_glass_rhs(x + h * k3, lag1);
    const double x_new = x + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);

    const std::size_t slot = i % ring;
    x_hist[slot] = x;
    m_start[slot] = k1;
    m_end[slot] = mackey_glass_rhs(x_new, lag1);
    x_next_hist = x_new;
    x = x_new;

    const std::size_t done = i + 1;
    if (done % cfg.sample_stride == 0 && done / cfg.sample_stride > cfg.transient) out.push_back(x);
  }
  return out;
}

/// Affine map of the series so its minimum lands on `lo` and its maximum on `hi`.
inline std::vector<double> rescale(std::vector<double> series, double lo, double hi) {
  if (!(hi > lo)) throw ParameterError("rescale: hi must exceed lo");
  if (series.empty()) return series;
  const auto [mn, mx] = std::minmax_element(series.begin(), series.end());
  const double min = *mn, span = *mx - *mn;
  if (!(span > 0)) throw ParameterError("rescale: constant series");
  for (auto& s : series) s = lo + (s - min) / span * (hi - lo);
  return series;
}

/// Scalar s becomes the quaternion (s, s, s, s).
inline Quat quaternionize(double s) { return Quat::splat(s); }

/// Sliding window: inputs s(t−window)…s(t−1), target s(t).
inline std::vector<Sample<double>> embed(std::span<const double> series, std::size_t window = 5) {
  if (window == 0) throw ParameterError("embed: window must be >= 1");
  if (series.size() <= window) throw DimensionError("embed: series shorter than window + 1");
  std::vector<Sample<double>> pairs;
  pairs.reserve(series.size() - window);
  for (std::size_t t = window; t < series.size(); ++t) {
    QVec x(window);
    for (std::size_t k = 0; k < window; ++k) x[k] = quaternionize(series[t - window + k]);
    pairs.push_back({std::move(x), quaternionize(series[t])});
  }
  return pairs;
}

struct NoNoise {};
struct GaussianNoise {
  double std = 0.1;
};
/// Contaminated Gaussian: background N(0, bg_std²), replaced with probability
/// `prob` per sample by N(0, impulse_std²).
struct ImpulsiveNoise {
  double prob = 0.05;
  double bg_std = 0.1;
  double impulse_std = 3.0;
};

struct NoiseModel {
  std::variant<NoNoise, GaussianNoise, ImpulsiveNoise> kind;
  std::uint64_t seed = 0;

  void validate() const {
    if (const auto* g = std::get_if<GaussianNoise>(&kind); g && !(g->std >= 0))
      throw ParameterError("GaussianNoise: std must be >= 0");
    if (const auto* m = std::get_if<ImpulsiveNoise>(&kind)) {
      if (!(m->prob >= 0 && m->prob <= 1)) throw ParameterError("ImpulsiveNoise: prob must be in [0,1]");
      if (!(m->bg_std >= 0)) throw ParameterError("ImpulsiveNoise: bg_std must be >= 0");
      if (!(m->impulse_std > m->bg_std))
        throw ParameterError("ImpulsiveNoise: impulse_std must exceed bg_std");
    }
  }
};

/// Adds noise to all four components of each target; inputs stay clean.
///
/// Background draws and impulse draws come from separate engines, so an
/// impulsive model with prob = 0 reproduces the Gaussian stream for the same seed.
inline std::vector<Sample<double>> add_noise(std::vector<Sample<double>> pairs,
                                             const NoiseModel& model) {
  model.validate();
  if (std::holds_alternative<NoNoise>(model.kind)) return pairs;

  std::seed_seq bg_seq{model.seed, std::uint64_t{0x6267}};
  std::seed_seq imp_seq{model.seed, std::uint64_t{0x696d70}};
  std::mt19937_64 bg_rng(bg_seq);
  std::mt19937_64 imp_rng(imp_seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::normal_distribution<double> imp_normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  auto draw = [](auto& dist, auto& rng, double scale) {
    return Quat{scale * dist(rng), scale * dist(rng), scale * dist(rng), scale * dist(rng)};
  };

  for (auto& pair : pairs) {
    Quat noise;
    if (const auto* g = std::get_if<GaussianNoise>(&model.kind)) {
      noise = draw(normal, bg_rng, g->std);
    } else {
      const auto& m = std::get<ImpulsiveNoise>(model.kind);
      noise = draw(normal, bg_rng, m.bg_std);
      if (uniform(imp_rng) < m.prob) noise = draw(imp_normal, imp_rng, m.impulse_std);
    }
    pair.d += noise;
  }
  return pairs;
}

/// CSV with header `t,value`; t is the sample time measured from the end of the transient.
inline void write_series_csv(std::span<const double> series, double spacing,
                             const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError(path.string(), "cannot open for writing");
  os << "t,value\n" << std::setprecision(17);
  for (std::size_t k = 0; k < series.size(); ++k) os << double(k + 1) * spacing << ',' << series[k] << '\n';
  if (!os) throw IoError(path.string(), "write failed");
}

}  // namespace qmlp
