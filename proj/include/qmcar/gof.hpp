#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qmcar/distribution.hpp"

namespace qmcar {

/// Anderson-Darling reference points: the 5% and 10% upper-tail critical
/// values of the all-parameters-known A^2 distribution.
inline constexpr double kA2FivePercent = 2.49;
inline constexpr double kA2TenPercent = 1.93;

struct GofReport {
  std::string statistic;
  double value = 0.0;
  std::size_t sample_size = 0;
  double five_percent_point = kA2FivePercent;
  double ten_percent_point = kA2TenPercent;
};

/// Anderson-Darling A^2 of the sample against `dist`. CDF values are clamped
/// into [1e-300, 1 - 1e-16] before the logs.
double anderson_darling(std::span<const double> sample, const Distribution& dist);

/// Exact one-dimensional star discrepancy of the sample mapped through the
/// CDF of `dist` (the Kolmogorov-Smirnov sup over anchored intervals).
double f_star_discrepancy(std::span<const double> sample, const Distribution& dist);

/// Exact star discrepancy of a 2-d point set in (0,1)^2 via the critical
/// corner grid with closed and open box counts. Guarded to n <= 4096.
double star_discrepancy_2d(std::span<const std::array<double, 2>> points);

/// Interval partition of a 1-d domain: edges[j], edges[j+1] bound cell j,
/// whose target measure is measures[j]. Measures must sum to 1 (+-1e-12).
struct Partition1D {
  std::vector<double> edges;
  std::vector<double> measures;
};

/// Upper bound on |A(S; P)/N - mu(S)| for the anchored interval
/// S = [edges.front(), s_upper): the sum over cells of mu(M_j) times the
/// indicator oscillation (1 exactly on cells straddling the S boundary)
/// plus the per-cell empirical discrepancies |A(M_j; P)/N - mu(M_j)|.
double partition_error_bound(std::span<const double> points,
                             const Partition1D& partition, double s_upper);

/// Work-normalized variance ratio (sigma_ref^2 t_ref) / (sigma_alg^2 t_alg).
double efficiency(double sigma_ref, double t_ref, double sigma_alg, double t_alg);

}  // namespace qmcar
