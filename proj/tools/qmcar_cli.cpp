#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qmcar/bench.hpp"
#include "qmcar/distribution.hpp"
#include "qmcar/gof.hpp"
#include "qmcar/report.hpp"
#include "qmcar/sample_io.hpp"
#include "qmcar/samplers.hpp"
#include "qmcar/stream.hpp"
#include "qmcar/vg.hpp"

namespace {

using nlohmann::json;
using namespace qmcar;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + out_path);
  os << text;
}

std::string generator_label(StreamKind kind) {
  return PointStream(kind, 1, 0).generator_name();
}

std::string both_generators_label() {
  return generator_label(StreamKind::pseudorandom) + ";" +
         generator_label(StreamKind::random_start_halton);
}

ReportMeta make_meta(std::uint64_t seed, std::string stream,
                     std::string generator, double tolerance) {
  ReportMeta meta;
  meta.seed = seed;
  meta.stream = std::move(stream);
  meta.generator = std::move(generator);
  meta.tolerance = tolerance;
  meta.timestamp = timestamp_utc();
  return meta;
}

json meta_to_json(const ReportMeta& meta) {
  return json{{"seed", meta.seed},          {"stream", meta.stream},
              {"generator", meta.generator}, {"tolerance", meta.tolerance},
              {"timestamp", meta.timestamp}, {"version", meta.version},
              {"timing", meta.timing}};
}

int report_check(const bench::CheckResult& result) {
  if (result.passed) {
    std::cerr << "check passed\n";
    return kExitOk;
  }
  for (const auto& failure : result.failures)
    std::cerr << "check failed: " << failure << '\n';
  return kExitCheckFailed;
}

struct GenConfig {
  std::string family = "beta:0.5,0.5";
  std::string method = "inverse";
  std::string stream = "random_start_halton";
  std::uint64_t seed = bench::kDefaultSeed;
  std::size_t n = 100000;
  double tolerance = Distribution::kDefaultTolerance;
  std::string out;
  bool binary = false;
  bool check = false;
};

int run_gen(const GenConfig& config) {
  const Distribution dist = Distribution::parse(config.family);
  const StreamKind kind = stream_kind_from_string(config.stream);
  std::vector<double> sample;
  double acceptance_ratio = 1.0;
  if (config.method == "inverse") {
    PointStream stream(kind, 1, config.seed);
    sample.resize(config.n);
    double u;
    for (std::size_t i = 0; i < config.n; ++i) {
      stream.next(std::span<double>(&u, 1));
      sample[i] = dist.inverse_cdf(u, config.tolerance);
    }
  } else if (config.method == "ar") {
    AcceptanceRecord record;
    if (dist.family() == Family::beta) {
      PointStream stream(kind, 2, config.seed);
      record = beta_aw(dist.param1(), dist.param2(), stream, config.n);
    } else if (dist.family() == Family::gamma) {
      PointStream stream(kind, gamma_stream_dims(dist.param1()), config.seed);
      record = gamma_sample(dist.param1(), dist.param2(), stream, config.n);
    } else {
      throw std::invalid_argument("--method ar supports beta and gamma families");
    }
    acceptance_ratio = record.acceptance_ratio();
    sample = std::move(record.accepted);
  } else {
    throw std::invalid_argument("--method must be inverse or ar");
  }

  if (config.out.empty()) {
    if (config.binary)
      throw std::invalid_argument("--binary requires --out");
    for (double v : sample) std::cout << format_double(v) << '\n';
  } else {
    if (config.binary)
      write_samples_binary(config.out, sample);
    else
      write_samples_text(config.out, sample);
  }

  json report{{"family", dist.name()},
              {"method", config.method},
              {"n", sample.size()},
              {"acceptance_ratio", acceptance_ratio},
              {"meta", meta_to_json(make_meta(config.seed, to_string(kind),
                                              generator_label(kind),
                                              config.tolerance))}};
  if (!config.out.empty()) report["out"] = config.out;

  int exit_code = kExitOk;
  if (config.check) {
    const double a2 = anderson_darling(sample, dist);
    report["a2"] = a2;
    report["a2_five_percent_point"] = kA2FivePercent;
    if (!(a2 < kA2FivePercent)) exit_code = kExitCheckFailed;
  }
  std::ostream& os = config.out.empty() ? std::cerr : std::cout;
  os << report.dump(2) << '\n';
  return exit_code;
}

struct GofConfig {
  std::string in;
  std::string dist = "beta:0.5,0.5";
  std::string format = "json";
  std::string out;
  bool check = false;
};

int run_gof(const GofConfig& config) {
  const Distribution dist = Distribution::parse(config.dist);
  const std::vector<double> sample = read_samples(config.in);
  const double a2 = anderson_darling(sample, dist);
  const double dstar = f_star_discrepancy(sample, dist);
  const ReportMeta meta = make_meta(0, "file", config.in, 0.0);
  std::string text;
  if (config.format == "csv") {
    text = "statistic,value,sample_size,five_percent_point,ten_percent_point,"
           "seed,stream,generator,tolerance,timestamp,version,timing\n";
    const std::string tail = "," + std::to_string(sample.size()) + "," +
                             format_double(kA2FivePercent) + "," +
                             format_double(kA2TenPercent) + ",0,file," +
                             config.in + ",0," + meta.timestamp + "," +
                             meta.version + "," + meta.timing + "\n";
    text += "anderson_darling," + format_double(a2) + tail;
    text += "f_star_discrepancy," + format_double(dstar) + tail;
  } else {
    json doc{{"distribution", dist.name()},
             {"sample_size", sample.size()},
             {"anderson_darling", a2},
             {"f_star_discrepancy", dstar},
             {"a2_five_percent_point", kA2FivePercent},
             {"a2_ten_percent_point", kA2TenPercent},
             {"meta", meta_to_json(meta)}};
    text = doc.dump(2);
  }
  emit(config.out, text);
  if (config.check && !(a2 < kA2FivePercent)) {
    std::cerr << "check failed: A2 " << a2 << " >= " << kA2FivePercent << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

template <typename Rows>
int emit_rows(const Rows& rows, const ReportMeta& meta, const std::string& format,
              const std::string& out) {
  emit(out, format == "json" ? bench::to_json(rows, meta)
                             : bench::to_csv(rows, meta));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform point streams, acceptance-rejection generators, and "
               "the benchmark sweeps built on them"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  // gen: write a sample from one distribution to a file or stdout.
  GenConfig gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a sample from a distribution");
  gen_cmd->add_option("--family", gen.family,
                      "normal | beta:a,b | gamma:shape[,scale] | exponential:rate");
  gen_cmd->add_option("--method", gen.method, "inverse | ar");
  gen_cmd->add_option("--stream", gen.stream,
                      "pseudorandom | halton | random_start_halton (mc/qmc aliases)");
  gen_cmd->add_option("--seed", gen.seed, "stream seed");
  gen_cmd->add_option("--n", gen.n, "sample size");
  gen_cmd->add_option("--tol", gen.tolerance, "inverse-CDF residual tolerance");
  gen_cmd->add_option("--out", gen.out, "output path (default: stdout)");
  gen_cmd->add_flag("--binary", gen.binary, "binary sample format");
  gen_cmd->add_flag("--check", gen.check, "Anderson-Darling gate; exit 2 on failure");
  gen_cmd->callback([&] { exit_code = run_gen(gen); });

  // gof: statistics of a stored sample against a reference distribution.
  GofConfig gof;
  auto* gof_cmd = app.add_subcommand("gof", "Goodness of fit of a stored sample");
  gof_cmd->add_option("--in", gof.in, "sample file (text or binary)")->required();
  gof_cmd->add_option("--dist", gof.dist, "reference distribution");
  gof_cmd->add_option("--format", gof.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  gof_cmd->add_option("--out", gof.out, "output path (default: stdout)");
  gof_cmd->add_flag("--check", gof.check, "Anderson-Darling gate; exit 2 on failure");
  gof_cmd->callback([&] { exit_code = run_gof(gof); });

  // bench-integral: crude vs rejection vs smoothed rejection on the
  // seven-dimensional reference integrand.
  bench::IntegralOptions integral;
  std::string integral_format = "csv";
  std::string integral_out;
  bool integral_check = false;
  auto* integral_cmd = app.add_subcommand(
      "bench-integral", "Estimator comparison on the 7-d reference integral");
  integral_cmd->add_option("--sizes", integral.sizes, "sample sizes to sweep")
      ->delimiter(',');
  integral_cmd->add_option("--reps", integral.replications, "replications per cell");
  integral_cmd->add_option("--seed", integral.seed, "master seed");
  integral_cmd->add_option("--sar-sigma", integral.sar1_sigma,
                           "smoothing width of the one-sided ramp weight");
  integral_cmd->add_option("--workers", integral.workers, "threads across cells");
  integral_cmd->add_option("--format", integral_format, "csv | json")
      ->check(CLI::IsMember({"json", "csv"}));
  integral_cmd->add_option("--out", integral_out, "output path (default: stdout)");
  integral_cmd->add_flag("--check", integral_check,
                         "std-dev and efficiency gates; exit 2 on failure");
  integral_cmd->callback([&] {
    const auto rows = bench::run_integral_benchmark(integral);
    const auto meta = make_meta(integral.seed, "both", both_generators_label(), 1e-12);
    exit_code = emit_rows(rows, meta, integral_format, integral_out);
    if (exit_code == kExitOk && integral_check)
      exit_code = report_check(bench::check_integral(rows));
  });

  // bench-beta / bench-gamma: inverse vs rejection generation sweeps.
  bench::GenOptions gen_bench;
  std::string gen_bench_format = "csv";
  std::string gen_bench_out;
  bool gen_bench_check = false;
  bool gen_bench_paper_scale = false;
  auto add_gen_bench = [&](const char* name, const char* blurb, bool gamma) {
    auto* cmd = app.add_subcommand(name, blurb);
    auto* n_opt = cmd->add_option("--n", gen_bench.n, "sample size per cell");
    cmd->add_option("--reps", gen_bench.timing_repeats,
                    "timing repeats per cell (median reported)");
    cmd->add_option("--seed", gen_bench.seed, "master seed");
    cmd->add_option("--tol", gen_bench.tolerance, "inverse-CDF residual tolerance");
    cmd->add_option("--workers", gen_bench.workers, "threads across cells");
    cmd->add_option("--format", gen_bench_format, "csv | json")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", gen_bench_out, "output path (default: stdout)");
    cmd->add_flag("--paper-scale", gen_bench_paper_scale,
                  "full-size sweep (10^6 draws per gamma cell)");
    cmd->add_flag("--check", gen_bench_check,
                  "A2 and timing-ordering gates; exit 2 on failure");
    cmd->callback([&, n_opt, gamma] {
      if (gen_bench_paper_scale && gamma && n_opt->count() == 0)
        gen_bench.n = 1000000;
      const auto rows = gamma ? bench::run_gamma_benchmark(gen_bench)
                              : bench::run_beta_benchmark(gen_bench);
      const auto meta = make_meta(gen_bench.seed, "both", both_generators_label(),
                                  gen_bench.tolerance);
      exit_code = emit_rows(rows, meta, gen_bench_format, gen_bench_out);
      if (exit_code == kExitOk && gen_bench_check)
        exit_code = report_check(bench::check_gen(rows));
    });
  };
  add_gen_bench("bench-beta", "Beta generation sweep over shapes {0.3,0.5,0.7}^2",
                false);
  add_gen_bench("bench-gamma",
                "Gamma generation sweep over shapes {1.6..3.2} and {0.2..0.8}",
                true);

  // price-vg: variance gamma call pricing, single report or maturity sweep.
  bench::VgOptions vg;
  std::string vg_method;
  std::string vg_format;
  std::string vg_out;
  bool vg_check = false;
  bool vg_paper_scale = false;
  auto* vg_cmd = app.add_subcommand("price-vg",
                                    "European call pricing in the variance gamma model");
  auto* vg_method_opt = vg_cmd->add_option(
      "--method", vg_method, "inverse_mc | ar_mc | inverse_qmc | ar_qmc (default: all)");
  auto* vg_maturity_opt = vg_cmd->add_option("--maturity", vg.maturities,
                                             "maturities in years (default: the four table values)");
  auto* vg_reps_opt = vg_cmd->add_option("--reps", vg.replications,
                                         "independent replications");
  vg_cmd->add_option("--n", vg.paths, "price paths per replication");
  vg_cmd->add_option("--seed", vg.seed, "master seed");
  vg_cmd->add_option("--workers", vg.workers, "threads across replications");
  vg_cmd->add_option("--format", vg_format, "csv | json")
      ->check(CLI::IsMember({"json", "csv"}));
  vg_cmd->add_option("--out", vg_out, "output path (default: stdout)");
  vg_cmd->add_flag("--paper-scale", vg_paper_scale, "full-size sweep (100 replications)");
  vg_cmd->add_flag("--check", vg_check,
                   "price and std-dev gates on QMC methods; exit 2 on failure");
  vg_cmd->callback([&] {
    if (vg_paper_scale && vg_reps_opt->count() == 0) vg.replications = 100;
    if (vg_method_opt->count() > 0)
      vg.methods = {pricing_method_from_string(vg_method)};
    (void)vg_maturity_opt;
    const bool single = vg.methods.size() == 1 && vg.maturities.size() == 1;
    std::vector<bench::VgRow> rows;
    if (single && vg_format != "csv") {
      const double maturity = vg.maturities[0];
      const auto report = price_european_call(
          bench::vg_table_params(), bench::vg_table_option(maturity),
          vg.methods[0], vg.paths, vg.replications, vg.seed, vg.workers);
      json doc{{"maturity", maturity},
               {"method", to_string(report.method)},
               {"price", report.price},
               {"std_dev", report.std_dev},
               {"time_seconds", report.time_seconds},
               {"paths", report.paths},
               {"replications", report.replications},
               {"workers", report.workers},
               {"rejection_policy", report.rejection_policy},
               {"meta", meta_to_json(make_meta(report.seed, report.stream_kind,
                                               report.generator,
                                               Distribution::kDefaultTolerance))}};
      const auto exact = bench::vg_exact_price(maturity);
      if (exact) doc["exact"] = *exact;
      emit(vg_out, doc.dump(2));
      bench::VgRow row;
      row.maturity = maturity;
      row.exact = exact;
      row.method = to_string(report.method);
      row.price = report.price;
      row.std_dev = report.std_dev;
      row.time_seconds = report.time_seconds;
      rows.push_back(std::move(row));
    } else {
      rows = bench::run_vg_benchmark(vg);
      const auto meta = make_meta(vg.seed, "both", both_generators_label(),
                                  Distribution::kDefaultTolerance);
      emit_rows(rows, meta, vg_format == "json" ? "json" : "csv", vg_out);
    }
    exit_code = kExitOk;
    if (vg_check) exit_code = report_check(bench::check_vg(rows));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return exit_code;
}
