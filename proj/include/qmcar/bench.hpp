#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmcar/report.hpp"
#include "qmcar/vg.hpp"

namespace qmcar::bench {

inline constexpr std::uint64_t kDefaultSeed = 7;

/// Seven-dimensional benchmark integrand: a separable exponential bump in
/// the first three coordinates times a slowly varying arcsine factor of the
/// full coordinate sum.
double test_integrand(std::span<const double> x);

/// Importance density proportional to the exponential factor of
/// test_integrand, normalized to integrate to 1 over the unit cube.
double importance_density(std::span<const double> x);

/// Normalization constant of the exponential factor (cached; the 1-d slice
/// integral is evaluated once by adaptive quadrature to 1e-12).
double importance_normalizer();

/// Supremum of importance_density over the cube (attained at the origin).
double importance_sup();

/// Infimum of importance_density over the cube (attained at the all-ones corner).
double importance_inf();

// ---------------------------------------------------------------------------
// Integral estimator comparison (crude / rejection / smoothed rejection).

struct IntegralOptions {
  std::vector<std::size_t> sizes = {256, 1024, 4096, 16384};
  std::size_t replications = 64;
  std::uint64_t seed = kDefaultSeed;
  double sar1_sigma = 0.2;
  unsigned workers = 1;  // parallelism across grid cells; timing within a cell
                         // is always sequential
};

struct IntegralRow {
  std::string stream;
  std::string estimator;  // cr | ar | sar1 | sar2
  std::size_t n = 0;
  std::size_t replications = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  double time_seconds = 0.0;
  double efficiency = 0.0;  // normalized so crude pseudorandom = 1 at each n
};

std::vector<IntegralRow> run_integral_benchmark(const IntegralOptions& options);

// ---------------------------------------------------------------------------
// Generation benchmarks: quantile inversion vs rejection, timed, with an
// Anderson-Darling check of each sample.

struct GenOptions {
  std::size_t n = 100000;
  std::uint64_t seed = kDefaultSeed;
  int timing_repeats = 5;
  double tolerance = 1e-12;  // quantile residual tolerance on the inverse path
  unsigned workers = 1;      // parallelism across grid cells
};

struct GenRow {
  std::string family;     // beta | gamma
  double param1 = 0.0;    // alpha
  double param2 = 0.0;    // beta shape | gamma scale
  std::string algorithm;  // inverse | ar
  std::string stream;
  std::size_t n = 0;
  double time_seconds = 0.0;  // median of timing_repeats generation passes
  double a2 = 0.0;
  double acceptance_ratio = 1.0;
};

/// Beta grid: both shapes in {0.3, 0.5, 0.7}.
std::vector<GenRow> run_beta_benchmark(const GenOptions& options);

/// Gamma grids: shape in {1.6, 2.0, 2.4, 2.8, 3.2} (log-logistic rejection)
/// and {0.2, 0.4, 0.6, 0.8} (Ahrens-Dieter rejection), scale 1.
std::vector<GenRow> run_gamma_benchmark(const GenOptions& options);

// ---------------------------------------------------------------------------
// Variance gamma pricing sweep.

struct VgOptions {
  std::vector<double> maturities = {0.25, 0.5, 0.75, 1.0};
  std::vector<PricingMethod> methods = {PricingMethod::inverse_mc,
                                        PricingMethod::ar_mc,
                                        PricingMethod::inverse_qmc,
                                        PricingMethod::ar_qmc};
  std::size_t paths = 10000;
  std::size_t replications = 20;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
};

struct VgRow {
  double maturity = 0.0;
  std::optional<double> exact;
  std::string method;
  double price = 0.0;
  double std_dev = 0.0;
  double time_seconds = 0.0;
};

/// Reference pricing setup used by the sweep.
VGParams vg_table_params();
OptionSpec vg_table_option(double maturity);
/// Known exact call prices for the reference setup.
std::optional<double> vg_exact_price(double maturity);

std::vector<VgRow> run_vg_benchmark(const VgOptions& options);

// ---------------------------------------------------------------------------
// Pass/fail gates used by the CLI --check flag and the acceptance suite.

inline constexpr double kA2Gate = 2.49;          // 5% Anderson-Darling point
inline constexpr double kQmcWinFraction = 0.8;   // QMC must beat MC this often
inline constexpr double kArStdFactor = 0.5;      // AR std vs crude std (QMC, n=4096)
inline constexpr double kArSpeedFactor = 3.0;    // inverse time / AR time
inline constexpr double kVgPriceTolerance = 0.02;
inline constexpr double kVgStdTolerance = 0.02;

struct CheckResult {
  bool passed = true;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      failures.push_back(what);
    }
  }
};

CheckResult check_integral(const std::vector<IntegralRow>& rows);
CheckResult check_gen(const std::vector<GenRow>& rows);
CheckResult check_vg(const std::vector<VgRow>& rows);

// ---------------------------------------------------------------------------
// Serialization. CSV rows and JSON records both carry the metadata fields.

std::string to_csv(const std::vector<IntegralRow>& rows, const ReportMeta& meta);
std::string to_csv(const std::vector<GenRow>& rows, const ReportMeta& meta);
std::string to_csv(const std::vector<VgRow>& rows, const ReportMeta& meta);
std::string to_json(const std::vector<IntegralRow>& rows, const ReportMeta& meta);
std::string to_json(const std::vector<GenRow>& rows, const ReportMeta& meta);
std::string to_json(const std::vector<VgRow>& rows, const ReportMeta& meta);

}  // namespace qmcar::bench
