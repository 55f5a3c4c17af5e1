#pragma once

#include <cstdint>
#include <string>

#include "qmcar/samplers.hpp"
#include "qmcar/special_functions.hpp"
#include "qmcar/stream.hpp"

namespace qmcar {

/// Variance gamma process parameters: Brownian motion with drift theta and
/// volatility sigma, time-changed by a gamma clock with variance rate nu.
struct VGParams {
  double theta;
  double sigma;
  double nu;

  VGParams(double theta_, double sigma_, double nu_);

  /// 1 - theta nu - sigma^2 nu / 2; must be positive for the risk-neutral
  /// drift correction to exist.
  double martingale_argument() const { return 1.0 - theta * nu - 0.5 * sigma * sigma * nu; }

  /// omega = log(1 - theta nu - sigma^2 nu / 2) / nu, the drift correction
  /// making the discounted asset a martingale.
  double drift_correction() const;
};

struct OptionSpec {
  double spot;
  double strike;
  double rate;
  double maturity;

  OptionSpec(double spot_, double strike_, double rate_, double maturity_);
};

enum class PricingMethod { inverse_mc, ar_mc, inverse_qmc, ar_qmc };

std::string to_string(PricingMethod method);
PricingMethod pricing_method_from_string(const std::string& name);

/// Terminal asset value given a standard normal draw z and the gamma clock
/// value g: S_T = spot * exp((rate + omega) T + theta g + sigma sqrt(g) z).
double vg_terminal_value(const VGParams& params, const OptionSpec& option,
                         double z, double gamma_time);

/// Terminal draw consuming one normal uniform plus one accepted gamma
/// variate from `gamma_stream` (dims per gamma_stream_dims(T / nu)).
template <PointSource S>
double vg_terminal(const VGParams& params, const OptionSpec& option,
                   double normal_u, S& gamma_stream) {
  const auto rec =
      gamma_sample(option.maturity / params.nu, params.nu, gamma_stream, 1);
  return vg_terminal_value(params, option, normal_inverse_cdf(normal_u),
                           rec.accepted.front());
}

struct PriceReport {
  double price = 0.0;
  double std_dev = 0.0;
  double time_seconds = 0.0;
  PricingMethod method = PricingMethod::inverse_mc;
  std::size_t paths = 0;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string stream_kind;
  std::string generator;
  std::string rejection_policy;
};

/// European call under the variance gamma model by simulation of the
/// terminal distribution. Runs `replications` independent estimates of
/// `paths` draws each; reports their mean, sample standard deviation, and
/// wall time. Replication r uses an independent stream seeded by
/// derive_seed(seed, r), so results do not depend on the worker count.
///
/// Path draws by method:
///  - inverse_*: one 2-dim point per path; component 1 -> normal quantile,
///    component 2 -> gamma quantile.
///  - ar_*: one (1 + k)-dim point per candidate, k = gamma_stream_dims(T/nu);
///    component 1 of the first candidate drives the normal quantile, the
///    remaining components drive the gamma rejection trial. A rejected trial
///    consumes the next point of the same sequence (its first component is
///    left unused).
PriceReport price_european_call(const VGParams& params, const OptionSpec& option,
                                PricingMethod method, std::size_t paths,
                                std::size_t replications, std::uint64_t seed,
                                unsigned workers = 1);

}  // namespace qmcar
