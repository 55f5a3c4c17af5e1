#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qmcar/distribution.hpp"
#include "qmcar/stream.hpp"

namespace qmcar {

/// Target density f, proposal density g with quantile G^-1, and a majorant
/// C with f(x) <= C g(x) on the support.
struct RejectionTarget {
  std::function<double(double)> target_pdf;
  std::function<double(double)> proposal_pdf;
  std::function<double(double)> proposal_inverse_cdf;
  double majorant = 0.0;
  bool majorant_estimated = false;

  /// h(x) = f(x) / (C g(x)), the per-candidate acceptance probability.
  double acceptance_probability(double x) const;

  /// Builds a target from two distributions. If no majorant is given, it is
  /// estimated as 1.01 * max f/g over a 10^4-point support grid and flagged.
  static RejectionTarget from_distributions(const Distribution& target,
                                            const Distribution& proposal,
                                            std::optional<double> majorant = {});
};

struct AcceptanceRecord {
  std::vector<double> accepted;
  std::uint64_t candidates_consumed = 0;

  double acceptance_ratio() const {
    return candidates_consumed == 0
               ? 0.0
               : static_cast<double>(accepted.size()) /
                     static_cast<double>(candidates_consumed);
  }
};

struct ArOptions {
  /// After this many candidates, a ratio below min_acceptance_ratio aborts
  /// (catches mis-specified majorants).
  std::uint64_t ratio_check_after = 100000;
  double min_acceptance_ratio = 1e-3;
};

namespace detail {

inline void check_ar_health(std::uint64_t candidates, std::uint64_t accepted,
                            const ArOptions& options) {
  if (candidates == options.ratio_check_after &&
      static_cast<double>(accepted) <
          options.min_acceptance_ratio * static_cast<double>(candidates))
    throw std::runtime_error(
        "ar_generate: acceptance ratio below minimum; majorant is likely wrong");
}

}  // namespace detail

/// Univariate acceptance-rejection: each candidate consumes one (u, v) point,
/// proposes X = G^-1(u), accepts iff v <= h(X). Runs until `count` points are
/// accepted.
template <PointSource S>
AcceptanceRecord ar_generate(const RejectionTarget& target, S& stream,
                             std::size_t count, const ArOptions& options = {}) {
  if (stream.dims() != 2)
    throw std::invalid_argument("ar_generate: stream must have 2 dims");
  AcceptanceRecord record;
  record.accepted.reserve(count);
  double point[2];
  while (record.accepted.size() < count) {
    stream.next(std::span<double>(point, 2));
    ++record.candidates_consumed;
    const double x = target.proposal_inverse_cdf(point[0]);
    if (point[1] <= target.acceptance_probability(x))
      record.accepted.push_back(x);
    detail::check_ar_health(record.candidates_consumed, record.accepted.size(),
                            options);
  }
  return record;
}

/// As ar_generate, but stops after a fixed candidate budget.
template <PointSource S>
AcceptanceRecord ar_generate_candidates(const RejectionTarget& target, S& stream,
                                        std::uint64_t candidates) {
  if (stream.dims() != 2)
    throw std::invalid_argument("ar_generate_candidates: stream must have 2 dims");
  AcceptanceRecord record;
  double point[2];
  for (std::uint64_t i = 0; i < candidates; ++i) {
    stream.next(std::span<double>(point, 2));
    ++record.candidates_consumed;
    const double x = target.proposal_inverse_cdf(point[0]);
    if (point[1] <= target.acceptance_probability(x))
      record.accepted.push_back(x);
  }
  return record;
}

/// Linear-ramp smoothing weight: 1 below the ramp, 0 above it, and
/// (1/sigma)(p_ratio + sigma/2 - y) across [p_ratio - sigma/2,
/// p_ratio + sigma/2]. Integrates to p_ratio over y in [0,1] whenever the
/// ramp lies inside the unit interval (sigma/2 <= p_ratio <= 1 - sigma/2);
/// outside that range the ramp is truncated by the y-domain.
double sar1_weight(double p_ratio, double y, double sigma);

/// Two-sided envelope smoothing weight. Requires pointwise envelopes
/// 0 <= lo < p < hi <= majorant; integrates to p / majorant over y in [0,1].
double sar2_weight(double p, double lo, double hi, double majorant, double y);

/// Multivariate candidate with smoothing weight (weight 1 for plain AR).
struct WeightedPoint {
  std::vector<double> x;
  double weight = 1.0;
};

struct WeightedSample {
  std::vector<WeightedPoint> points;
  std::uint64_t candidates_consumed = 0;
  double total_weight = 0.0;
};

/// Acceptance-rejection from a density p on (0,1)^s with uniform proposals:
/// each candidate consumes one (s+1)-dim point (x, y), accepting x iff
/// y < p(x) / majorant. Runs until `count` accepted.
template <PointSource S, typename Density>
WeightedSample ar_accept_density(Density&& p, double majorant, S& stream,
                                 std::size_t count) {
  const unsigned s = stream.dims() - 1;
  WeightedSample sample;
  sample.points.reserve(count);
  std::vector<double> point(stream.dims());
  while (sample.points.size() < count) {
    stream.next(point);
    ++sample.candidates_consumed;
    const std::span<const double> x(point.data(), s);
    if (point[s] < p(x) / majorant) {
      sample.points.push_back({std::vector<double>(point.begin(), point.begin() + s), 1.0});
      sample.total_weight += 1.0;
    }
  }
  return sample;
}

/// Smoothed acceptance-rejection from a density p on (0,1)^s: candidates are
/// weighted by `weight(p(x), y)` and accumulated until the cumulative weight
/// first reaches or exceeds `target_weight`. Zero-weight candidates are
/// counted but not stored.
template <PointSource S, typename Density, typename Weight>
WeightedSample sar_accept_density(Density&& p, S& stream, double target_weight,
                                  Weight&& weight) {
  const unsigned s = stream.dims() - 1;
  WeightedSample sample;
  std::vector<double> point(stream.dims());
  while (sample.total_weight < target_weight) {
    stream.next(point);
    ++sample.candidates_consumed;
    const std::span<const double> x(point.data(), s);
    const double w = weight(p(x), point[s]);
    if (w > 0.0) {
      sample.points.push_back({std::vector<double>(point.begin(), point.begin() + s), w});
      sample.total_weight += w;
    }
  }
  return sample;
}

/// Importance-sampling estimate (1/divisor) * sum of w_i f(x_i) / p(x_i).
template <typename F, typename Density>
double importance_estimate(F&& f, Density&& p, const WeightedSample& sample,
                           double divisor) {
  if (!(divisor > 0.0))
    throw std::invalid_argument("importance_estimate: divisor must be positive");
  double sum = 0.0;
  for (const auto& wp : sample.points) {
    const std::span<const double> x(wp.x);
    const double density = p(x);
    if (!(density > 0.0))
      throw std::domain_error("importance_estimate: density vanished at a sample point");
    sum += wp.weight * f(x) / density;
  }
  return sum / divisor;
}

/// Equal-weight sample mean of f over `count` stream points.
template <PointSource S, typename F>
double crude_estimate(F&& f, S& stream, std::size_t count) {
  if (count == 0) throw std::invalid_argument("crude_estimate: count must be positive");
  std::vector<double> point(stream.dims());
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    stream.next(point);
    sum += f(std::span<const double>(point));
  }
  return sum / static_cast<double>(count);
}

}  // namespace qmcar
