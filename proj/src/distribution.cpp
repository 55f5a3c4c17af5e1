#include "qmcar/distribution.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qmcar/special_functions.hpp"

namespace qmcar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_params(const std::string& stem, double p1) {
  std::ostringstream os;
  os << stem << ':' << p1;
  return os.str();
}

std::string format_params(const std::string& stem, double p1, double p2) {
  std::ostringstream os;
  os << stem << ':' << p1 << ',' << p2;
  return os.str();
}

}  // namespace

Distribution Distribution::normal() {
  Distribution d;
  d.family_ = Family::normal;
  d.lower_ = -kInf;
  d.upper_ = kInf;
  d.name_ = "normal";
  return d;
}

Distribution Distribution::beta(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("beta: shape parameters must be positive");
  Distribution d;
  d.family_ = Family::beta;
  d.p1_ = alpha;
  d.p2_ = beta;
  d.log_norm_ = log_beta(alpha, beta);
  d.lower_ = 0.0;
  d.upper_ = 1.0;
  d.name_ = format_params("beta", alpha, beta);
  return d;
}

Distribution Distribution::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw std::invalid_argument("gamma: shape and scale must be positive");
  if (shape < 0.1)
    throw std::invalid_argument("gamma: shape < 0.1 is unsupported");
  Distribution d;
  d.family_ = Family::gamma;
  d.p1_ = shape;
  d.p2_ = scale;
  d.log_norm_ = log_gamma(shape) + shape * std::log(scale);
  d.lower_ = 0.0;
  d.upper_ = kInf;
  d.name_ = format_params("gamma", shape, scale);
  return d;
}

Distribution Distribution::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
  Distribution d;
  d.family_ = Family::exponential;
  d.p1_ = rate;
  d.lower_ = 0.0;
  d.upper_ = kInf;
  d.name_ = format_params("exponential", rate);
  return d;
}

Distribution Distribution::custom(std::string name,
                                  std::function<double(double)> pdf,
                                  std::function<double(double)> cdf,
                                  std::function<double(double)> inverse_cdf,
                                  double support_lower, double support_upper) {
  Distribution d;
  d.family_ = Family::custom;
  d.lower_ = support_lower;
  d.upper_ = support_upper;
  d.name_ = std::move(name);
  d.custom_pdf_ = std::move(pdf);
  d.custom_cdf_ = std::move(cdf);
  d.custom_inv_ = std::move(inverse_cdf);
  return d;
}

Distribution Distribution::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string stem = text.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::istringstream is(text.substr(colon + 1));
    std::string field;
    while (std::getline(is, field, ',')) params.push_back(std::stod(field));
  }
  if (stem == "normal") {
    if (!params.empty()) throw std::invalid_argument("normal takes no parameters");
    return normal();
  }
  if (stem == "beta") {
    if (params.size() != 2) throw std::invalid_argument("beta needs alpha,beta");
    return beta(params[0], params[1]);
  }
  if (stem == "gamma") {
    if (params.size() == 1) return gamma(params[0]);
    if (params.size() == 2) return gamma(params[0], params[1]);
    throw std::invalid_argument("gamma needs shape[,scale]");
  }
  if (stem == "exponential" || stem == "exp") {
    if (params.size() != 1) throw std::invalid_argument("exponential needs rate");
    return exponential(params[0]);
  }
  throw std::invalid_argument("unknown distribution: " + text);
}

double Distribution::pdf(double x) const {
  switch (family_) {
    case Family::normal:
      return normal_pdf(x);
    case Family::beta: {
      if (x < 0.0 || x > 1.0) return 0.0;
      if (x == 0.0 || x == 1.0) {
        const double shape = (x == 0.0) ? p1_ : p2_;
        if (shape > 1.0) return 0.0;
        if (shape == 1.0) return std::exp(-log_norm_);
        return kInf;
      }
      return std::exp((p1_ - 1.0) * std::log(x) + (p2_ - 1.0) * std::log1p(-x) -
                      log_norm_);
    }
    case Family::gamma: {
      if (x < 0.0) return 0.0;
      if (x == 0.0) {
        if (p1_ > 1.0) return 0.0;
        if (p1_ == 1.0) return 1.0 / p2_;
        return kInf;
      }
      return std::exp((p1_ - 1.0) * std::log(x) - x / p2_ - log_norm_);
    }
    case Family::exponential:
      if (x < 0.0) return 0.0;
      return p1_ * std::exp(-p1_ * x);
    case Family::custom:
      if (!custom_pdf_) throw std::logic_error("custom distribution has no pdf");
      return custom_pdf_(x);
  }
  throw std::logic_error("unknown family");
}

double Distribution::cdf(double x) const {
  switch (family_) {
    case Family::normal:
      return normal_cdf(x);
    case Family::beta:
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return regularized_beta(p1_, p2_, x);
    case Family::gamma:
      if (x <= 0.0) return 0.0;
      return regularized_gamma_p(p1_, x / p2_);
    case Family::exponential:
      if (x <= 0.0) return 0.0;
      return -std::expm1(-p1_ * x);
    case Family::custom:
      if (!custom_cdf_) throw std::logic_error("custom distribution has no cdf");
      return custom_cdf_(x);
  }
  throw std::logic_error("unknown family");
}

double Distribution::inverse_cdf(double u, double tolerance) const {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("inverse_cdf: u must be in (0, 1)");
  switch (family_) {
    case Family::normal:
      return normal_inverse_cdf(u);
    case Family::exponential:
      return -std::log1p(-u) / p1_;
    case Family::custom:
      if (!custom_inv_) throw std::logic_error("custom distribution has no inverse cdf");
      return custom_inv_(u);
    case Family::beta:
    case Family::gamma:
      break;
  }

  double lo = 0.0;
  double hi;
  if (family_ == Family::beta) {
    hi = 1.0;
  } else {
    hi = p2_ * std::max(1.0, p1_);
    while (cdf(hi) < u) {
      hi *= 2.0;
      if (hi > 1e300) throw std::runtime_error("inverse_cdf: bracket expansion failed");
    }
  }

  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < u)
      lo = mid;
    else
      hi = mid;
  }

  // Bracket-safeguarded Newton on cdf(x) - u.
  double x = 0.5 * (lo + hi);
  double best_x = x;
  double best_err = kInf;
  for (int it = 0; it < 100; ++it) {
    const double fx = cdf(x) - u;
    const double err = std::fabs(fx);
    if (err < best_err) {
      best_err = err;
      best_x = x;
    }
    if (err <= tolerance) return x;
    if (fx > 0.0)
      hi = x;
    else
      lo = x;
    const double slope = pdf(x);
    double next = (slope > 0.0 && std::isfinite(slope)) ? x - fx / slope : x;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x || !(hi > lo)) break;
    x = next;
  }
  return best_x;
}

}  // namespace qmcar
