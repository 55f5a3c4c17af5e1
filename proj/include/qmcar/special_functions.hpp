#pragma once

namespace qmcar {

/// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
double log_gamma(double x);

/// log Beta(a, b) for a, b > 0.
double log_beta(double a, double b);

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
/// Series expansion for x < a + 1, continued fraction otherwise.
double regularized_gamma_p(double a, double x);

/// Regularized incomplete beta I_x(a, b) for a, b > 0, x in [0, 1].
/// Continued fraction (modified Lentz), symmetry-switched for convergence.
double regularized_beta(double a, double b, double x);

double normal_pdf(double x);

/// Standard normal CDF via erfc.
double normal_cdf(double x);

/// Standard normal quantile for u in (0, 1): Acklam's rational
/// approximation polished by one Halley step against normal_cdf.
double normal_inverse_cdf(double u);

}  // namespace qmcar
