#include "qmcar/samplers.hpp"

#include <cmath>

namespace qmcar {

BetaAwConstants beta_aw_constants(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("beta_aw: requires max(alpha, beta) < 1");
  const double t =
      1.0 / (1.0 + std::sqrt(beta * (1.0 - beta) / (alpha * (1.0 - alpha))));
  const double p = beta * t / (beta * t + alpha * (1.0 - t));
  return {t, p};
}

GammaChConstants gamma_ch_constants(double alpha) {
  if (!(alpha > 1.0)) throw std::invalid_argument("gamma_ch: requires alpha > 1");
  const double a = 1.0 / std::sqrt(2.0 * alpha - 1.0);
  const double b = alpha - std::log(4.0);
  const double c = alpha + 1.0 / a;
  return {a, b, c};
}

double gamma_gs_b(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("gamma_gs: requires 0 < alpha < 1");
  return (alpha + M_E) / M_E;
}

unsigned gamma_stream_dims(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("gamma_stream_dims: alpha must be positive");
  if (alpha > 1.0) return 2;
  if (alpha < 1.0) return 3;
  return 1;
}

}  // namespace qmcar
