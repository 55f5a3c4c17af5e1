#include "qmcar/vg.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qmcar/distribution.hpp"

namespace qmcar {

VGParams::VGParams(double theta_, double sigma_, double nu_)
    : theta(theta_), sigma(sigma_), nu(nu_) {
  if (!(sigma > 0.0)) throw std::invalid_argument("VGParams: sigma must be positive");
  if (!(nu > 0.0)) throw std::invalid_argument("VGParams: nu must be positive");
  if (!(martingale_argument() > 0.0))
    throw std::invalid_argument(
        "VGParams: 1 - theta nu - sigma^2 nu / 2 must be positive");
}

double VGParams::drift_correction() const {
  return std::log(martingale_argument()) / nu;
}

OptionSpec::OptionSpec(double spot_, double strike_, double rate_, double maturity_)
    : spot(spot_), strike(strike_), rate(rate_), maturity(maturity_) {
  if (!(spot > 0.0)) throw std::invalid_argument("OptionSpec: spot must be positive");
  if (!(strike >= 0.0)) throw std::invalid_argument("OptionSpec: strike must be non-negative");
  if (!(maturity > 0.0)) throw std::invalid_argument("OptionSpec: maturity must be positive");
}

std::string to_string(PricingMethod method) {
  switch (method) {
    case PricingMethod::inverse_mc: return "inverse_mc";
    case PricingMethod::ar_mc: return "ar_mc";
    case PricingMethod::inverse_qmc: return "inverse_qmc";
    case PricingMethod::ar_qmc: return "ar_qmc";
  }
  throw std::logic_error("unknown PricingMethod");
}

PricingMethod pricing_method_from_string(const std::string& name) {
  if (name == "inverse_mc") return PricingMethod::inverse_mc;
  if (name == "ar_mc") return PricingMethod::ar_mc;
  if (name == "inverse_qmc") return PricingMethod::inverse_qmc;
  if (name == "ar_qmc") return PricingMethod::ar_qmc;
  throw std::invalid_argument("unknown pricing method: " + name);
}

double vg_terminal_value(const VGParams& params, const OptionSpec& option,
                         double z, double gamma_time) {
  const double x = params.theta * gamma_time +
                   params.sigma * std::sqrt(gamma_time) * z;
  return option.spot *
         std::exp((option.rate + params.drift_correction()) * option.maturity + x);
}

namespace {

bool uses_inversion(PricingMethod m) {
  return m == PricingMethod::inverse_mc || m == PricingMethod::inverse_qmc;
}

StreamKind stream_kind_of(PricingMethod m) {
  return (m == PricingMethod::inverse_qmc || m == PricingMethod::ar_qmc)
             ? StreamKind::random_start_halton
             : StreamKind::pseudorandom;
}

// Mean discounted payoff over `paths` draws via gamma quantile inversion.
double replicate_inverse(const VGParams& params, const OptionSpec& option,
                         const Distribution& gamma_dist, PointStream& stream,
                         std::size_t paths) {
  const double discount = std::exp(-option.rate * option.maturity);
  const double drift =
      (option.rate + params.drift_correction()) * option.maturity;
  double sum = 0.0;
  double pt[2];
  for (std::size_t i = 0; i < paths; ++i) {
    stream.next(std::span<double>(pt, 2));
    const double z = normal_inverse_cdf(pt[0]);
    const double g = gamma_dist.inverse_cdf(pt[1]);
    const double x = params.theta * g + params.sigma * std::sqrt(g) * z;
    const double terminal = option.spot * std::exp(drift + x);
    sum += std::max(terminal - option.strike, 0.0);
  }
  return discount * sum / static_cast<double>(paths);
}

// Mean discounted payoff with the gamma clock drawn by rejection. The first
// candidate's leading component drives the normal quantile; each rejected
// trial consumes the next full point of the same sequence.
double replicate_ar(const VGParams& params, const OptionSpec& option,
                    PointStream& stream, std::size_t paths) {
  const double alpha = option.maturity / params.nu;
  const double discount = std::exp(-option.rate * option.maturity);
  const double drift =
      (option.rate + params.drift_correction()) * option.maturity;
  const double gs_b = alpha < 1.0 ? gamma_gs_b(alpha) : 0.0;
  const GammaChConstants ch =
      alpha > 1.0 ? gamma_ch_constants(alpha) : GammaChConstants{0.0, 0.0, 0.0};
  const unsigned dims = stream.dims();
  std::vector<double> pt(dims);
  double sum = 0.0;
  for (std::size_t i = 0; i < paths; ++i) {
    stream.next(pt);
    const double z = normal_inverse_cdf(pt[0]);
    double g;
    if (alpha == 1.0) {
      g = -std::log1p(-pt[1]);
    } else if (alpha > 1.0) {
      const auto [a, b, c] = ch;
      for (;;) {
        const double u = pt[1];
        const double y = a * std::log(u / (1.0 - u));
        const double x = alpha * std::exp(y);
        const double zsq = u * u * pt[2];
        const double r = b + c * y - x;
        if (r + 2.5040774 - 4.5 * zsq >= 0.0 || r >= std::log(zsq)) {
          g = x;
          break;
        }
        stream.next(pt);
      }
    } else {
      const double b = gs_b;
      for (;;) {
        const double y = b * pt[1];
        bool accepted = false;
        double x;
        if (y <= 1.0) {
          x = std::pow(y, 1.0 / alpha);
          accepted = -std::log(pt[2]) >= x;
        } else {
          x = -std::log((b - y) / alpha);
          accepted = std::pow(pt[3], 1.0 / (alpha - 1.0)) >= x;
        }
        if (accepted) {
          g = x;
          break;
        }
        stream.next(pt);
      }
    }
    g *= params.nu;
    const double x = params.theta * g + params.sigma * std::sqrt(g) * z;
    const double terminal = option.spot * std::exp(drift + x);
    sum += std::max(terminal - option.strike, 0.0);
  }
  return discount * sum / static_cast<double>(paths);
}

}  // namespace

PriceReport price_european_call(const VGParams& params, const OptionSpec& option,
                                PricingMethod method, std::size_t paths,
                                std::size_t replications, std::uint64_t seed,
                                unsigned workers) {
  if (paths == 0 || replications == 0)
    throw std::invalid_argument("price_european_call: paths and replications must be positive");
  if (workers == 0) workers = 1;

  const bool inversion = uses_inversion(method);
  const StreamKind kind = stream_kind_of(method);
  const double alpha = option.maturity / params.nu;
  const unsigned dims = inversion ? 2 : 1 + gamma_stream_dims(alpha);
  const Distribution gamma_dist = Distribution::gamma(alpha, params.nu);

  std::vector<double> estimates(replications);
  const auto started = std::chrono::steady_clock::now();

  auto run_block = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      PointStream stream(kind, dims, derive_seed(seed, r));
      estimates[r] = inversion
                         ? replicate_inverse(params, option, gamma_dist, stream, paths)
                         : replicate_ar(params, option, stream, paths);
    }
  };

  if (workers == 1 || replications == 1) {
    run_block(0, replications);
  } else {
    const unsigned used = std::min<std::size_t>(workers, replications);
    std::vector<std::thread> pool;
    pool.reserve(used);
    const std::size_t chunk = (replications + used - 1) / used;
    for (unsigned w = 0; w < used; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(replications, begin + chunk);
      if (begin < end) pool.emplace_back(run_block, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - started;

  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= static_cast<double>(replications);
  double var = 0.0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  var = replications > 1 ? var / static_cast<double>(replications - 1) : 0.0;

  PriceReport report;
  report.price = mean;
  report.std_dev = std::sqrt(var);
  report.time_seconds = elapsed.count();
  report.method = method;
  report.paths = paths;
  report.replications = replications;
  report.seed = seed;
  report.workers = workers;
  report.stream_kind = to_string(kind);
  {
    PointStream probe(kind, dims, seed);
    report.generator = probe.generator_name();
  }
  report.rejection_policy =
      inversion ? "none"
                : "retry consumes next point of the same sequence; normal "
                  "component taken from the first candidate";
  return report;
}

}  // namespace qmcar
