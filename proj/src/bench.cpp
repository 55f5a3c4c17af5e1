#include "qmcar/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qmcar/distribution.hpp"
#include "qmcar/gof.hpp"
#include "qmcar/quadrature.hpp"
#include "qmcar/rejection.hpp"
#include "qmcar/samplers.hpp"
#include "qmcar/stream.hpp"

namespace qmcar::bench {

double test_integrand(std::span<const double> x) {
  if (x.size() != 7) throw std::invalid_argument("test_integrand: expects 7 coordinates");
  double bump = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double s = std::sin(M_PI_2 * x[i]);
    bump += s * s;
  }
  double sum = 0.0;
  for (int i = 0; i < 7; ++i) sum += x[i];
  return std::exp(1.0 - bump) * std::asin(std::sin(1.0) + sum / 200.0);
}

double importance_normalizer() {
  static const double cached = [] {
    const double slice = adaptive_simpson(
        [](double x) {
          const double s = std::sin(M_PI_2 * x);
          return std::exp(-s * s);
        },
        0.0, 1.0, 1e-12);
    return M_E * slice * slice * slice;
  }();
  return cached;
}

double importance_density(std::span<const double> x) {
  if (x.size() != 7) throw std::invalid_argument("importance_density: expects 7 coordinates");
  double bump = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double s = std::sin(M_PI_2 * x[i]);
    bump += s * s;
  }
  return std::exp(1.0 - bump) / importance_normalizer();
}

double importance_sup() { return M_E / importance_normalizer(); }

double importance_inf() { return std::exp(-2.0) / importance_normalizer(); }

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double sample_std(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(values.size() - 1));
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double lower_median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

// Runs `work(0..count-1)`, spread over `workers` threads when asked for.
// Cells must be independent; results should land in preassigned slots so
// row order stays deterministic.
void run_cells(unsigned workers, std::size_t count,
               const std::function<void(std::size_t)>& work) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto drain = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawned = static_cast<unsigned>(
      std::min<std::size_t>(workers, count));
  pool.reserve(spawned);
  for (unsigned t = 0; t < spawned; ++t) pool.emplace_back(drain);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

enum class Estimator { cr, ar, sar1, sar2 };

const char* estimator_name(Estimator e) {
  switch (e) {
    case Estimator::cr: return "cr";
    case Estimator::ar: return "ar";
    case Estimator::sar1: return "sar1";
    case Estimator::sar2: return "sar2";
  }
  return "?";
}

double run_estimator(Estimator est, PointStream& stream, std::size_t n,
                     double sar1_sigma) {
  const auto f = [](std::span<const double> x) { return test_integrand(x); };
  const auto p = [](std::span<const double> x) { return importance_density(x); };
  const double sup = importance_sup();
  switch (est) {
    case Estimator::cr:
      return crude_estimate(f, stream, n);
    case Estimator::ar: {
      const auto sample = ar_accept_density(p, sup, stream, n);
      return importance_estimate(f, p, sample, static_cast<double>(n));
    }
    case Estimator::sar1: {
      const auto weight = [sup, sar1_sigma](double pv, double y) {
        return sar1_weight(pv / sup, y, sar1_sigma);
      };
      const auto sample = sar_accept_density(p, stream, static_cast<double>(n), weight);
      return importance_estimate(f, p, sample, static_cast<double>(n));
    }
    case Estimator::sar2: {
      const double lo = importance_inf();
      const auto weight = [lo, sup](double pv, double y) {
        return sar2_weight(pv, lo, sup, sup, y);
      };
      const auto sample = sar_accept_density(p, stream, static_cast<double>(n), weight);
      return importance_estimate(f, p, sample, static_cast<double>(n));
    }
  }
  throw std::logic_error("unknown estimator");
}

}  // namespace

std::vector<IntegralRow> run_integral_benchmark(const IntegralOptions& options) {
  importance_normalizer();  // cache outside any timed section
  struct Cell {
    StreamKind kind;
    std::size_t n;
    Estimator est;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  std::uint64_t index = 0;
  for (StreamKind kind : {StreamKind::pseudorandom, StreamKind::random_start_halton})
    for (std::size_t n : options.sizes)
      for (Estimator est : {Estimator::cr, Estimator::ar, Estimator::sar1, Estimator::sar2})
        cells.push_back({kind, n, est, derive_seed(options.seed, index++)});
  std::vector<IntegralRow> rows(cells.size());
  run_cells(options.workers, cells.size(), [&](std::size_t c) {
    const Cell& cell = cells[c];
    const unsigned dims = cell.est == Estimator::cr ? 7 : 8;
    std::vector<PointStream> streams;
    streams.reserve(options.replications);
    for (std::size_t r = 0; r < options.replications; ++r)
      streams.emplace_back(cell.kind, dims, derive_seed(cell.seed, r));
    std::vector<double> estimates(options.replications);
    const auto start = Clock::now();
    for (std::size_t r = 0; r < options.replications; ++r)
      estimates[r] = run_estimator(cell.est, streams[r], cell.n, options.sar1_sigma);
    const double elapsed = std::max(seconds_since(start), 1e-9);
    IntegralRow& row = rows[c];
    row.stream = to_string(cell.kind);
    row.estimator = estimator_name(cell.est);
    row.n = cell.n;
    row.replications = options.replications;
    row.mean = mean_of(estimates);
    row.std_dev = sample_std(estimates, row.mean);
    row.time_seconds = elapsed;
  });
  // Normalize efficiencies against the crude pseudorandom row at the same n.
  for (auto& row : rows) {
    const auto ref = std::find_if(rows.begin(), rows.end(), [&](const IntegralRow& r) {
      return r.n == row.n && r.estimator == "cr" && r.stream == "pseudorandom";
    });
    row.efficiency = efficiency(ref->std_dev, ref->time_seconds, row.std_dev,
                                row.time_seconds);
  }
  return rows;
}

namespace {

struct GenOutcome {
  std::vector<double> sample;
  double median_seconds = 0.0;
  double acceptance_ratio = 1.0;
};

// Times `generate` (stream construction excluded) over the configured number
// of repeats; the sample is identical across repeats by construction.
GenOutcome timed_generation(
    StreamKind kind, unsigned dims, std::uint64_t seed, int repeats,
    const std::function<AcceptanceRecord(PointStream&)>& generate) {
  GenOutcome outcome;
  std::vector<double> times;
  for (int rep = 0; rep < std::max(repeats, 1); ++rep) {
    PointStream stream(kind, dims, seed);
    const auto start = Clock::now();
    AcceptanceRecord record = generate(stream);
    times.push_back(std::max(seconds_since(start), 1e-9));
    if (rep == 0) {
      outcome.acceptance_ratio = record.acceptance_ratio();
      outcome.sample = std::move(record.accepted);
    }
  }
  outcome.median_seconds = lower_median(std::move(times));
  return outcome;
}

AcceptanceRecord inverse_generate(const Distribution& dist, double tolerance,
                                  PointStream& stream, std::size_t n) {
  AcceptanceRecord record;
  record.accepted.resize(n);
  double u;
  for (std::size_t i = 0; i < n; ++i) {
    stream.next(std::span<double>(&u, 1));
    record.accepted[i] = dist.inverse_cdf(u, tolerance);
  }
  record.candidates_consumed = n;
  return record;
}

GenRow make_gen_row(const std::string& family, double p1, double p2,
                    const std::string& algorithm, StreamKind kind,
                    const GenOptions& options, const Distribution& dist,
                    const GenOutcome& outcome) {
  GenRow row;
  row.family = family;
  row.param1 = p1;
  row.param2 = p2;
  row.algorithm = algorithm;
  row.stream = to_string(kind);
  row.n = options.n;
  row.time_seconds = outcome.median_seconds;
  row.a2 = anderson_darling(outcome.sample, dist);
  row.acceptance_ratio = outcome.acceptance_ratio;
  return row;
}

}  // namespace

namespace {

struct GenCell {
  std::string family;
  double param1 = 0.0;
  double param2 = 0.0;
  StreamKind kind = StreamKind::pseudorandom;
  std::uint64_t seed_inverse = 0;
  std::uint64_t seed_ar = 0;
};

// Each cell yields an inverse row and an AR row, timed back to back on the
// executing worker.
std::vector<GenRow> run_gen_cells(const std::vector<GenCell>& cells,
                                  const GenOptions& options) {
  std::vector<GenRow> rows(2 * cells.size());
  run_cells(options.workers, cells.size(), [&](std::size_t c) {
    const GenCell& cell = cells[c];
    const bool is_beta = cell.family == "beta";
    const Distribution dist = is_beta
                                  ? Distribution::beta(cell.param1, cell.param2)
                                  : Distribution::gamma(cell.param1, cell.param2);
    const auto inv = timed_generation(
        cell.kind, 1, cell.seed_inverse, options.timing_repeats,
        [&](PointStream& s) {
          return inverse_generate(dist, options.tolerance, s, options.n);
        });
    rows[2 * c] = make_gen_row(cell.family, cell.param1, cell.param2, "inverse",
                               cell.kind, options, dist, inv);
    const unsigned ar_dims = is_beta ? 2 : gamma_stream_dims(cell.param1);
    const auto ar = timed_generation(
        cell.kind, ar_dims, cell.seed_ar, options.timing_repeats,
        [&](PointStream& s) {
          return is_beta ? beta_aw(cell.param1, cell.param2, s, options.n)
                         : gamma_sample(cell.param1, cell.param2, s, options.n);
        });
    rows[2 * c + 1] = make_gen_row(cell.family, cell.param1, cell.param2, "ar",
                                   cell.kind, options, dist, ar);
  });
  return rows;
}

}  // namespace

std::vector<GenRow> run_beta_benchmark(const GenOptions& options) {
  static constexpr double kShapes[] = {0.3, 0.5, 0.7};
  std::vector<GenCell> cells;
  std::uint64_t index = 0;
  for (double alpha : kShapes)
    for (double beta : kShapes)
      for (StreamKind kind : {StreamKind::pseudorandom, StreamKind::random_start_halton}) {
        GenCell cell{"beta", alpha, beta, kind, 0, 0};
        cell.seed_inverse = derive_seed(options.seed, index++);
        cell.seed_ar = derive_seed(options.seed, index++);
        cells.push_back(std::move(cell));
      }
  return run_gen_cells(cells, options);
}

std::vector<GenRow> run_gamma_benchmark(const GenOptions& options) {
  static constexpr double kShapes[] = {1.6, 2.0, 2.4, 2.8, 3.2,
                                       0.2, 0.4, 0.6, 0.8};
  std::vector<GenCell> cells;
  std::uint64_t index = 0;
  for (double alpha : kShapes)
    for (StreamKind kind : {StreamKind::pseudorandom, StreamKind::random_start_halton}) {
      GenCell cell{"gamma", alpha, 1.0, kind, 0, 0};
      cell.seed_inverse = derive_seed(options.seed, index++);
      cell.seed_ar = derive_seed(options.seed, index++);
      cells.push_back(std::move(cell));
    }
  return run_gen_cells(cells, options);
}

VGParams vg_table_params() { return VGParams(-0.1436, 0.12136, 0.3); }

OptionSpec vg_table_option(double maturity) {
  return OptionSpec(100.0, 101.0, 0.1, maturity);
}

std::optional<double> vg_exact_price(double maturity) {
  if (maturity == 0.25) return 3.47;
  if (maturity == 0.5) return 6.24;
  if (maturity == 0.75) return 8.69;
  if (maturity == 1.0) return 10.98;
  return std::nullopt;
}

std::vector<VgRow> run_vg_benchmark(const VgOptions& options) {
  const VGParams params = vg_table_params();
  std::vector<VgRow> rows;
  std::uint64_t index = 0;
  for (double maturity : options.maturities) {
    const OptionSpec option = vg_table_option(maturity);
    for (PricingMethod method : options.methods) {
      const auto report = price_european_call(
          params, option, method, options.paths, options.replications,
          derive_seed(options.seed, index++), options.workers);
      VgRow row;
      row.maturity = maturity;
      row.exact = vg_exact_price(maturity);
      row.method = to_string(method);
      row.price = report.price;
      row.std_dev = report.std_dev;
      row.time_seconds = report.time_seconds;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

CheckResult check_integral(const std::vector<IntegralRow>& rows) {
  CheckResult result;
  auto find = [&](const char* est) -> const IntegralRow* {
    for (const auto& r : rows)
      if (r.n == 4096 && r.stream == "random_start_halton" && r.estimator == est)
        return &r;
    return nullptr;
  };
  const IntegralRow* cr = find("cr");
  const IntegralRow* ar = find("ar");
  const IntegralRow* sar1 = find("sar1");
  const IntegralRow* sar2 = find("sar2");
  if (!cr || !ar || !sar1 || !sar2) {
    result.require(false, "check needs n=4096 random_start_halton rows for all estimators");
    return result;
  }
  {
    std::ostringstream msg;
    msg << "ar std " << ar->std_dev << " exceeds " << kArStdFactor << " * cr std "
        << cr->std_dev << " (qmc, n=4096)";
    result.require(ar->std_dev <= kArStdFactor * cr->std_dev, msg.str());
  }
  {
    std::ostringstream msg;
    msg << "ar efficiency " << ar->efficiency << " not above sar1 " << sar1->efficiency
        << " and sar2 " << sar2->efficiency;
    result.require(ar->efficiency > sar1->efficiency &&
                       ar->efficiency > sar2->efficiency,
                   msg.str());
  }
  return result;
}

CheckResult check_gen(const std::vector<GenRow>& rows) {
  CheckResult result;
  for (const auto& row : rows) {
    std::ostringstream msg;
    msg << row.family << '(' << row.param1 << ',' << row.param2 << ") "
        << row.algorithm << '/' << row.stream << ": A2 " << row.a2
        << " >= " << kA2Gate;
    result.require(row.a2 < kA2Gate, msg.str());
  }
  auto find = [&](const GenRow& like, const std::string& algorithm,
                  const std::string& stream) -> const GenRow* {
    for (const auto& r : rows)
      if (r.family == like.family && r.param1 == like.param1 &&
          r.param2 == like.param2 && r.algorithm == algorithm && r.stream == stream)
        return &r;
    return nullptr;
  };
  int pairs = 0;
  int qmc_wins = 0;
  for (const auto& row : rows) {
    if (row.stream != "pseudorandom") continue;
    const GenRow* qmc = find(row, row.algorithm, "random_start_halton");
    if (!qmc) continue;
    ++pairs;
    if (qmc->a2 < row.a2) ++qmc_wins;
  }
  if (pairs > 0) {
    std::ostringstream msg;
    msg << "QMC beat MC on A2 in only " << qmc_wins << '/' << pairs << " cells";
    result.require(qmc_wins >= kQmcWinFraction * pairs, msg.str());
  }
  for (const auto& row : rows) {
    if (row.algorithm != "inverse") continue;
    const GenRow* ar = find(row, "ar", row.stream);
    if (!ar) continue;
    std::ostringstream msg;
    msg << row.family << '(' << row.param1 << ',' << row.param2 << ") "
        << row.stream << ": inverse " << row.time_seconds << "s not >= "
        << kArSpeedFactor << "x ar " << ar->time_seconds << 's';
    result.require(row.time_seconds >= kArSpeedFactor * ar->time_seconds, msg.str());
  }
  return result;
}

CheckResult check_vg(const std::vector<VgRow>& rows) {
  CheckResult result;
  for (const auto& row : rows) {
    if (!row.exact) continue;
    if (row.method != "inverse_qmc" && row.method != "ar_qmc") continue;
    {
      std::ostringstream msg;
      msg << row.method << " T=" << row.maturity << ": price " << row.price
          << " off exact " << *row.exact << " by more than " << kVgPriceTolerance;
      result.require(std::fabs(row.price - *row.exact) <= kVgPriceTolerance,
                     msg.str());
    }
    {
      std::ostringstream msg;
      msg << row.method << " T=" << row.maturity << ": std dev " << row.std_dev
          << " above " << kVgStdTolerance;
      result.require(row.std_dev <= kVgStdTolerance, msg.str());
    }
  }
  return result;
}

namespace {

using nlohmann::json;

json meta_json(const ReportMeta& meta) {
  return json{{"seed", meta.seed},          {"stream", meta.stream},
              {"generator", meta.generator}, {"tolerance", meta.tolerance},
              {"timestamp", meta.timestamp}, {"version", meta.version},
              {"timing", meta.timing}};
}

std::string meta_csv(const ReportMeta& meta) {
  std::ostringstream os;
  os << meta.seed << ',' << meta.stream << ',' << meta.generator << ','
     << format_double(meta.tolerance) << ',' << meta.timestamp << ','
     << meta.version << ',' << meta.timing;
  return os.str();
}

constexpr const char* kMetaHeader =
    "seed,stream,generator,tolerance,timestamp,version,timing";

}  // namespace

std::string to_csv(const std::vector<IntegralRow>& rows, const ReportMeta& meta) {
  std::ostringstream os;
  os << "stream,estimator,n,replications,mean,std_dev,time_seconds,efficiency,"
     << kMetaHeader << '\n';
  for (const auto& r : rows)
    os << r.stream << ',' << r.estimator << ',' << r.n << ',' << r.replications
       << ',' << format_double(r.mean) << ',' << format_double(r.std_dev) << ','
       << format_double(r.time_seconds) << ',' << format_double(r.efficiency)
       << ',' << meta_csv(meta) << '\n';
  return os.str();
}

std::string to_csv(const std::vector<GenRow>& rows, const ReportMeta& meta) {
  std::ostringstream os;
  os << "family,param1,param2,algorithm,stream,n,time_seconds,a2,acceptance_ratio,"
     << kMetaHeader << '\n';
  for (const auto& r : rows)
    os << r.family << ',' << format_double(r.param1) << ','
       << format_double(r.param2) << ',' << r.algorithm << ',' << r.stream << ','
       << r.n << ',' << format_double(r.time_seconds) << ',' << format_double(r.a2)
       << ',' << format_double(r.acceptance_ratio) << ',' << meta_csv(meta) << '\n';
  return os.str();
}

std::string to_csv(const std::vector<VgRow>& rows, const ReportMeta& meta) {
  std::ostringstream os;
  os << "maturity,exact,method,price,std_dev,time_seconds," << kMetaHeader << '\n';
  for (const auto& r : rows) {
    os << format_double(r.maturity) << ',';
    if (r.exact) os << format_double(*r.exact);
    os << ',' << r.method << ',' << format_double(r.price) << ','
       << format_double(r.std_dev) << ',' << format_double(r.time_seconds) << ','
       << meta_csv(meta) << '\n';
  }
  return os.str();
}

std::string to_json(const std::vector<IntegralRow>& rows, const ReportMeta& meta) {
  json doc{{"meta", meta_json(meta)}, {"rows", json::array()}};
  for (const auto& r : rows)
    doc["rows"].push_back({{"stream", r.stream},
                           {"estimator", r.estimator},
                           {"n", r.n},
                           {"replications", r.replications},
                           {"mean", r.mean},
                           {"std_dev", r.std_dev},
                           {"time_seconds", r.time_seconds},
                           {"efficiency", r.efficiency}});
  return doc.dump(2);
}

std::string to_json(const std::vector<GenRow>& rows, const ReportMeta& meta) {
  json doc{{"meta", meta_json(meta)}, {"rows", json::array()}};
  for (const auto& r : rows)
    doc["rows"].push_back({{"family", r.family},
                           {"param1", r.param1},
                           {"param2", r.param2},
                           {"algorithm", r.algorithm},
                           {"stream", r.stream},
                           {"n", r.n},
                           {"time_seconds", r.time_seconds},
                           {"a2", r.a2},
                           {"acceptance_ratio", r.acceptance_ratio}});
  return doc.dump(2);
}

std::string to_json(const std::vector<VgRow>& rows, const ReportMeta& meta) {
  json doc{{"meta", meta_json(meta)}, {"rows", json::array()}};
  for (const auto& r : rows) {
    json row{{"maturity", r.maturity},
             {"method", r.method},
             {"price", r.price},
             {"std_dev", r.std_dev},
             {"time_seconds", r.time_seconds}};
    if (r.exact) row["exact"] = *r.exact;
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2);
}

}  // namespace qmcar::bench
