#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "qmcar/rejection.hpp"
#include "qmcar/stream.hpp"

namespace qmcar {

/// Setup constants for the Atkinson-Whittaker switching beta sampler.
struct BetaAwConstants {
  double t;  // switch point splitting (0,1)
  double p;  // probability of proposing below t
};

BetaAwConstants beta_aw_constants(double alpha, double beta);

/// Setup constants for Cheng's (1977) log-logistic gamma sampler.
struct GammaChConstants {
  double a, b, c;
};

GammaChConstants gamma_ch_constants(double alpha);

/// Setup constant b = (alpha + e)/e for the Ahrens-Dieter GS gamma sampler.
double gamma_gs_b(double alpha);

/// Stream dimensions consumed per candidate when sampling Gamma(alpha):
/// 2 for alpha > 1 (Cheng), 3 for alpha < 1 (Ahrens-Dieter), 1 for alpha = 1
/// (exponential inversion).
unsigned gamma_stream_dims(double alpha);

namespace detail {

struct StopRule {
  std::size_t accepted_target = 0;     // 0 = no target
  std::uint64_t candidate_budget = 0;  // 0 = no budget

  bool done(const AcceptanceRecord& r) const {
    if (accepted_target > 0 && r.accepted.size() >= accepted_target) return true;
    if (candidate_budget > 0 && r.candidates_consumed >= candidate_budget) return true;
    return false;
  }
};

// Atkinson-Whittaker switching sampler for Beta(alpha, beta), max(alpha,
// beta) < 1. Each candidate consumes one (u, v) point: Y = -log u is the
// exponential test variate, v both selects the branch and provides the
// proposal uniform. Each branch tries a linear squeeze before the log test.
template <PointSource S>
AcceptanceRecord beta_aw_run(double alpha, double beta, S& stream, StopRule stop) {
  if (stream.dims() != 2)
    throw std::invalid_argument("beta_aw: stream must have 2 dims");
  const auto [t, p] = beta_aw_constants(alpha, beta);
  AcceptanceRecord record;
  if (stop.accepted_target > 0) record.accepted.reserve(stop.accepted_target);
  double pt[2];
  while (!stop.done(record)) {
    stream.next(std::span<double>(pt, 2));
    ++record.candidates_consumed;
    const double y = -std::log(pt[0]);
    const double v = pt[1];
    if (v <= p) {
      const double x = t * std::pow(v / p, 1.0 / alpha);
      if (y >= (1.0 - beta) * (t - x) / (1.0 - t) ||
          y >= (1.0 - beta) * std::log((1.0 - x) / (1.0 - t)))
        record.accepted.push_back(x);
    } else {
      const double x = 1.0 - (1.0 - t) * std::pow((1.0 - v) / (1.0 - p), 1.0 / beta);
      if (y >= (1.0 - alpha) * (x / t - 1.0) ||
          y >= (1.0 - alpha) * std::log(x / t))
        record.accepted.push_back(x);
    }
  }
  return record;
}

// Cheng's log-logistic rejection for Gamma(alpha, 1), alpha > 1, with the
// standard 4.5z - (1 + log 4.5) squeeze.
template <PointSource S>
AcceptanceRecord gamma_ch_run(double alpha, S& stream, StopRule stop) {
  if (stream.dims() != 2)
    throw std::invalid_argument("gamma_ch: stream must have 2 dims");
  const auto [a, b, c] = gamma_ch_constants(alpha);
  AcceptanceRecord record;
  if (stop.accepted_target > 0) record.accepted.reserve(stop.accepted_target);
  double pt[2];
  while (!stop.done(record)) {
    stream.next(std::span<double>(pt, 2));
    ++record.candidates_consumed;
    const double u = pt[0];
    const double v = pt[1];
    const double y = a * std::log(u / (1.0 - u));
    const double x = alpha * std::exp(y);
    const double z = u * u * v;
    const double r = b + c * y - x;
    if (r + 2.5040774 - 4.5 * z >= 0.0 || r >= std::log(z))
      record.accepted.push_back(x);
  }
  return record;
}

// Ahrens-Dieter GS rejection for Gamma(alpha, 1), alpha < 1. Each candidate
// consumes one (u, v, w) point; both branches accept iff the test variate W
// dominates the proposal X.
template <PointSource S>
AcceptanceRecord gamma_gs_run(double alpha, S& stream, StopRule stop) {
  if (stream.dims() != 3)
    throw std::invalid_argument("gamma_gs: stream must have 3 dims");
  const double b = gamma_gs_b(alpha);
  AcceptanceRecord record;
  if (stop.accepted_target > 0) record.accepted.reserve(stop.accepted_target);
  double pt[3];
  while (!stop.done(record)) {
    stream.next(std::span<double>(pt, 3));
    ++record.candidates_consumed;
    const double y = b * pt[0];
    if (y <= 1.0) {
      const double x = std::pow(y, 1.0 / alpha);
      const double w = -std::log(pt[1]);
      if (w >= x) record.accepted.push_back(x);
    } else {
      const double x = -std::log((b - y) / alpha);
      const double w = std::pow(pt[2], 1.0 / (alpha - 1.0));
      if (w >= x) record.accepted.push_back(x);
    }
  }
  return record;
}

}  // namespace detail

/// Beta(alpha, beta) via Atkinson-Whittaker, valid for max(alpha, beta) < 1.
/// Runs until `count` accepted.
template <PointSource S>
AcceptanceRecord beta_aw(double alpha, double beta, S& stream, std::size_t count) {
  return detail::beta_aw_run(alpha, beta, stream, {count, 0});
}

/// As beta_aw, but stops after a fixed candidate budget.
template <PointSource S>
AcceptanceRecord beta_aw_candidates(double alpha, double beta, S& stream,
                                    std::uint64_t candidates) {
  return detail::beta_aw_run(alpha, beta, stream, {0, candidates});
}

/// Gamma(alpha, 1) via Cheng's rejection, valid for alpha > 1.
template <PointSource S>
AcceptanceRecord gamma_ch(double alpha, S& stream, std::size_t count) {
  if (!(alpha > 1.0)) throw std::invalid_argument("gamma_ch: requires alpha > 1");
  return detail::gamma_ch_run(alpha, stream, {count, 0});
}

/// Gamma(alpha, 1) via Ahrens-Dieter GS, valid for alpha < 1.
template <PointSource S>
AcceptanceRecord gamma_gs(double alpha, S& stream, std::size_t count) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("gamma_gs: requires 0 < alpha < 1");
  return detail::gamma_gs_run(alpha, stream, {count, 0});
}

/// Gamma(alpha, scale) dispatch: Cheng for alpha > 1, Ahrens-Dieter for
/// alpha < 1, exponential inversion for alpha = 1. The stream must have
/// gamma_stream_dims(alpha) dimensions.
template <PointSource S>
AcceptanceRecord gamma_sample(double alpha, double scale, S& stream,
                              std::size_t count) {
  if (!(alpha > 0.0)) throw std::invalid_argument("gamma_sample: alpha must be positive");
  if (!(scale > 0.0)) throw std::invalid_argument("gamma_sample: scale must be positive");
  AcceptanceRecord record;
  if (alpha == 1.0) {
    if (stream.dims() != 1)
      throw std::invalid_argument("gamma_sample: stream must have 1 dim for alpha = 1");
    record.accepted.reserve(count);
    double u;
    for (std::size_t i = 0; i < count; ++i) {
      stream.next(std::span<double>(&u, 1));
      ++record.candidates_consumed;
      record.accepted.push_back(-std::log1p(-u));
    }
  } else if (alpha > 1.0) {
    record = gamma_ch(alpha, stream, count);
  } else {
    record = gamma_gs(alpha, stream, count);
  }
  if (scale != 1.0)
    for (double& x : record.accepted) x *= scale;
  return record;
}

}  // namespace qmcar
