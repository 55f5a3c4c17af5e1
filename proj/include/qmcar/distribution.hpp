#pragma once

#include <functional>
#include <string>

namespace qmcar {

enum class Family { normal, beta, gamma, exponential, custom };

/// Univariate distribution with pdf/cdf/quantile evaluation.
///
/// beta and gamma quantiles are solved numerically: bisection brackets the
/// root to width 1e-3, then bracket-safeguarded Newton iterates until
/// |cdf(x) - u| <= tolerance (default 1e-12) or the bracket collapses to
/// adjacent doubles (the representable limit near steep quantiles).
class Distribution {
 public:
  static constexpr double kDefaultTolerance = 1e-12;

  static Distribution normal();
  static Distribution beta(double alpha, double beta);
  /// Gamma with shape alpha >= 0.1 (smaller shapes are rejected: the
  /// quantile loses its accuracy guarantee there) and scale > 0.
  static Distribution gamma(double shape, double scale = 1.0);
  static Distribution exponential(double rate);
  static Distribution custom(std::string name,
                             std::function<double(double)> pdf,
                             std::function<double(double)> cdf,
                             std::function<double(double)> inverse_cdf,
                             double support_lower, double support_upper);

  /// Parses "normal", "beta:a,b", "gamma:shape[,scale]", "exponential:rate".
  static Distribution parse(const std::string& text);

  double pdf(double x) const;
  double cdf(double x) const;
  double inverse_cdf(double u) const { return inverse_cdf(u, kDefaultTolerance); }
  /// Reference-tolerance mode: iterate until |cdf(x) - u| <= tolerance.
  double inverse_cdf(double u, double tolerance) const;

  Family family() const { return family_; }
  const std::string& name() const { return name_; }
  double support_lower() const { return lower_; }
  double support_upper() const { return upper_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }

 private:
  Distribution() = default;

  Family family_ = Family::custom;
  double p1_ = 0.0;
  double p2_ = 0.0;
  double log_norm_ = 0.0;  // cached log normalization constant
  double lower_ = 0.0;
  double upper_ = 0.0;
  std::string name_;
  std::function<double(double)> custom_pdf_;
  std::function<double(double)> custom_cdf_;
  std::function<double(double)> custom_inv_;
};

}  // namespace qmcar
