#include "qmcar/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmcar {

namespace {

std::vector<double> sorted_cdf_values(std::span<const double> sample,
                                      const Distribution& dist) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  std::vector<double> f(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) f[i] = dist.cdf(sample[i]);
  std::sort(f.begin(), f.end());
  return f;
}

}  // namespace

double anderson_darling(std::span<const double> sample, const Distribution& dist) {
  auto f = sorted_cdf_values(sample, dist);
  const std::size_t n = f.size();
  for (double& v : f) v = std::clamp(v, 1e-300, 1.0 - 1e-16);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    sum += (2.0 * i + 1.0) * (std::log(f[i]) + std::log1p(-f[n - 1 - i]));
  const double nn = static_cast<double>(n);
  return -nn - sum / nn;
}

double f_star_discrepancy(std::span<const double> sample, const Distribution& dist) {
  const auto f = sorted_cdf_values(sample, dist);
  const double n = static_cast<double>(f.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double above = (i + 1.0) / n - f[i];
    const double below = f[i] - static_cast<double>(i) / n;
    sup = std::max({sup, std::fabs(above), std::fabs(below)});
  }
  return sup;
}

double star_discrepancy_2d(std::span<const std::array<double, 2>> points) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("star_discrepancy_2d: empty point set");
  if (n > 4096)
    throw std::invalid_argument("star_discrepancy_2d: exact algorithm guarded to n <= 4096");
  for (const auto& p : points)
    if (!(p[0] > 0.0 && p[0] < 1.0 && p[1] > 0.0 && p[1] < 1.0))
      throw std::domain_error("star_discrepancy_2d: points must lie in (0,1)^2");

  // Corner grids: distinct coordinate values plus 1 in each dimension. The
  // supremum over boxes [0,a1) x [0,a2) is approached at grid corners, from
  // below with the open count and from above with the closed count.
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = points[i][0];
    ys[i] = points[i][1];
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  xs.push_back(1.0);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  ys.push_back(1.0);

  std::vector<std::array<double, 2>> by_x(points.begin(), points.end());
  std::sort(by_x.begin(), by_x.end());

  const double nn = static_cast<double>(n);
  std::vector<double> active;  // y-values of points with x <= current corner
  active.reserve(n);
  std::size_t consumed = 0;
  double disc = 0.0;

  auto scan = [&](bool closed, double a1) {
    // One merge pass: for each grid value a2, count active y-values < a2
    // (open) or <= a2 (closed), then fold the local discrepancy.
    std::size_t j = 0;
    for (double a2 : ys) {
      if (closed)
        while (j < active.size() && active[j] <= a2) ++j;
      else
        while (j < active.size() && active[j] < a2) ++j;
      const double volume = a1 * a2;
      const double count = static_cast<double>(j) / nn;
      disc = std::max(disc, closed ? count - volume : volume - count);
    }
  };

  for (double a1 : xs) {
    scan(false, a1);  // active holds points with x < a1
    const std::size_t first_new = active.size();
    while (consumed < n && by_x[consumed][0] <= a1)
      active.push_back(by_x[consumed++][1]);
    std::inplace_merge(active.begin(), active.begin() + first_new, active.end());
    scan(true, a1);
  }
  return disc;
}

double partition_error_bound(std::span<const double> points,
                             const Partition1D& partition, double s_upper) {
  const auto& edges = partition.edges;
  const auto& measures = partition.measures;
  if (edges.size() < 2 || measures.size() + 1 != edges.size())
    throw std::invalid_argument("partition_error_bound: inconsistent partition");
  for (std::size_t j = 0; j + 1 < edges.size(); ++j)
    if (!(edges[j] < edges[j + 1]))
      throw std::invalid_argument("partition_error_bound: edges must increase");
  double total = 0.0;
  for (double m : measures) {
    if (m < 0.0) throw std::invalid_argument("partition_error_bound: negative measure");
    total += m;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw std::invalid_argument("partition_error_bound: measures must sum to 1");
  if (!(s_upper >= edges.front() && s_upper <= edges.back()))
    throw std::invalid_argument("partition_error_bound: S must lie within the domain");
  if (points.empty()) throw std::invalid_argument("partition_error_bound: empty point set");
  for (double x : points)
    if (!(x >= edges.front() && x <= edges.back()))
      throw std::domain_error("partition_error_bound: point outside the domain");

  const double n = static_cast<double>(points.size());
  double bound = 0.0;
  for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
    const double lo = edges[j];
    const double hi = edges[j + 1];
    // Indicator oscillation of S = [front, s_upper) over this cell.
    if (lo < s_upper && s_upper < hi) bound += measures[j];
    std::size_t count = 0;
    const bool last = (j + 2 == edges.size());
    for (double x : points)
      if (x >= lo && (x < hi || (last && x == hi))) ++count;
    bound += std::fabs(static_cast<double>(count) / n - measures[j]);
  }
  return bound;
}

double efficiency(double sigma_ref, double t_ref, double sigma_alg, double t_alg) {
  if (!(sigma_ref > 0.0 && t_ref > 0.0 && sigma_alg > 0.0 && t_alg > 0.0))
    throw std::invalid_argument("efficiency: all inputs must be positive");
  return (sigma_ref * sigma_ref * t_ref) / (sigma_alg * sigma_alg * t_alg);
}

}  // namespace qmcar
