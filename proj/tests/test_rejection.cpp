#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qmcar/quadrature.hpp"
#include "qmcar/rejection.hpp"
#include "qmcar/stream.hpp"

using namespace qmcar;

namespace {

// Feeds a fixed list of points; lets hand-computed traces drive the
// templated generators.
class StubStream {
 public:
  StubStream(unsigned dims, std::vector<double> values)
      : dims_(dims), values_(std::move(values)) {}

  void next(std::span<double> out) {
    for (double& v : out) v = values_.at(index_++);
  }
  unsigned dims() const { return dims_; }

 private:
  unsigned dims_;
  std::vector<double> values_;
  std::size_t index_ = 0;
};

RejectionTarget triangular_target() {
  RejectionTarget target;
  target.target_pdf = [](double x) { return 2.0 * x; };
  target.proposal_pdf = [](double) { return 1.0; };
  target.proposal_inverse_cdf = [](double u) { return u; };
  target.majorant = 2.0;
  return target;
}

}  // namespace

TEST_CASE("acceptance probability is f over C g") {
  const auto target = triangular_target();
  CHECK(target.acceptance_probability(0.81) == doctest::Approx(0.81).epsilon(1e-15));
  CHECK(target.acceptance_probability(0.1) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("acceptance probability rejects vanishing proposal") {
  RejectionTarget target;
  target.target_pdf = [](double) { return 1.0; };
  target.proposal_pdf = [](double) { return 0.0; };
  target.proposal_inverse_cdf = [](double u) { return u; };
  target.majorant = 1.0;
  CHECK_THROWS_AS(target.acceptance_probability(0.5), std::domain_error);
}

TEST_CASE("hand trace of the univariate driver") {
  const auto target = triangular_target();
  // (0.81, 0.1): X = 0.81, 0.1 <= 0.81 accepts. (0.3, 0.9): rejects.
  // (0.6, 0.6): boundary v = h(X) accepts (<=).
  StubStream stream(2, {0.81, 0.1, 0.3, 0.9, 0.6, 0.6});
  const auto record = ar_generate(target, stream, 2);
  REQUIRE(record.accepted.size() == 2);
  CHECK(record.accepted[0] == 0.81);
  CHECK(record.accepted[1] == 0.6);
  CHECK(record.candidates_consumed == 3);
  CHECK(record.acceptance_ratio() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("driver requires two dims") {
  const auto target = triangular_target();
  StubStream stream(3, {});
  CHECK_THROWS_AS(ar_generate(target, stream, 1), std::invalid_argument);
}

TEST_CASE("acceptance ratio approaches one over the majorant") {
  const auto target = triangular_target();
  PointStream stream(StreamKind::random_start_halton, 2, 4242);
  const auto record = ar_generate_candidates(target, stream, 100000);
  CHECK(std::fabs(record.acceptance_ratio() - 0.5) <= 0.01);

  // brute-force oracle with the pseudorandom stream
  std::mt19937_64 engine(99);
  std::uint64_t accepted = 0;
  const std::uint64_t n = 100000;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    const double v = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    if (v <= u) ++accepted;
  }
  PointStream mc(StreamKind::pseudorandom, 2, 99);
  const auto mc_record = ar_generate_candidates(target, mc, n);
  CHECK(mc_record.accepted.size() == accepted);
}

TEST_CASE("accepted sample matches the target distribution") {
  const auto target = triangular_target();
  PointStream stream(StreamKind::random_start_halton, 2, 7);
  const auto record = ar_generate(target, stream, 20000);
  // Compare empirical cdf with x^2 at a few anchors.
  for (double x0 : {0.25, 0.5, 0.75}) {
    std::size_t below = 0;
    for (double x : record.accepted) below += x <= x0;
    CHECK(std::fabs(static_cast<double>(below) / 20000.0 - x0 * x0) < 0.01);
  }
}

TEST_CASE("health check trips on a hopeless majorant") {
  RejectionTarget target;
  // Acceptance probability ~1e-6: the ratio check at 1e5 candidates fires.
  target.target_pdf = [](double) { return 1e-6; };
  target.proposal_pdf = [](double) { return 1.0; };
  target.proposal_inverse_cdf = [](double u) { return u; };
  target.majorant = 1.0;
  PointStream stream(StreamKind::pseudorandom, 2, 3);
  CHECK_THROWS_AS(ar_generate(target, stream, 10), std::runtime_error);
}

TEST_CASE("from_distributions with exact and estimated majorants") {
  const auto beta = Distribution::beta(2.0, 2.0);
  const auto uniform = Distribution::beta(1.0, 1.0);
  // sup of the beta(2,2) density 6x(1-x) is 1.5 at x = 1/2.
  auto exact = RejectionTarget::from_distributions(beta, uniform, 1.5);
  CHECK(exact.majorant == 1.5);
  CHECK_FALSE(exact.majorant_estimated);
  auto estimated = RejectionTarget::from_distributions(beta, uniform);
  CHECK(estimated.majorant_estimated);
  CHECK(estimated.majorant >= 1.5);
  CHECK(estimated.majorant <= 1.52);
}

TEST_CASE("sar1 weight reference values") {
  CHECK(sar1_weight(0.5, 0.5, 0.2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sar1_weight(0.5, 0.39, 0.2) == 1.0);
  CHECK(sar1_weight(0.5, 0.61, 0.2) == 0.0);
  // midway down the ramp: w = (1/sigma)(p + sigma/2 - y)
  CHECK(sar1_weight(0.5, 0.45, 0.2) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(sar1_weight(0.5, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sar1_weight(0.5, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("sar1 weight integrates to the acceptance probability") {
  for (double p : {0.1, 0.3, 0.5, 0.72, 0.9}) {
    const double sigma = std::min(0.2, 1.98 * std::min(p, 1.0 - p));
    const double integral = adaptive_simpson(
        [&](double y) { return sar1_weight(p, y, sigma); }, 0.0, 1.0, 1e-12);
    CHECK(integral == doctest::Approx(p).epsilon(1e-10));
  }
}

TEST_CASE("sar2 weight reference values") {
  // four-branch weight at p=0.5, lo=0.2, hi=0.8, majorant=1
  CHECK(sar2_weight(0.5, 0.2, 0.8, 1.0, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(sar2_weight(0.5, 0.2, 0.8, 1.0, 0.1) == 1.0);
  CHECK(sar2_weight(0.5, 0.2, 0.8, 1.0, 0.9) == 0.0);
  // continuity at the branch joints y = lo/majorant, p/majorant, hi/majorant
  for (double y : {0.2, 0.5, 0.8}) {
    const double eps = 1e-9;
    const double left = sar2_weight(0.5, 0.2, 0.8, 1.0, y - eps);
    const double right = sar2_weight(0.5, 0.2, 0.8, 1.0, y + eps);
    CHECK(left == doctest::Approx(right).epsilon(1e-6));
  }
  CHECK_THROWS_AS(sar2_weight(0.5, 0.6, 0.8, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sar2_weight(0.9, 0.2, 0.8, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("sar2 weight integrates to p over the majorant") {
  const double majorant = 3.7;
  for (double p : {0.8, 1.9, 3.0}) {
    const double integral = adaptive_simpson(
        [&](double y) { return sar2_weight(p, 0.5, 3.5, majorant, y); }, 0.0,
        1.0, 1e-12);
    CHECK(integral == doctest::Approx(p / majorant).epsilon(1e-10));
  }
}

TEST_CASE("density acceptance is strict") {
  const auto flat = [](std::span<const double>) { return 1.0; };
  // y = p/majorant exactly must reject: 1-dim x with y == 0.5 under majorant 2
  StubStream stream(2, {0.25, 0.5, 0.75, 0.49999999});
  const auto sample = ar_accept_density(flat, 2.0, stream, 1);
  CHECK(sample.candidates_consumed == 2);
  REQUIRE(sample.points.size() == 1);
  CHECK(sample.points[0].x[0] == 0.75);
  CHECK(sample.total_weight == 1.0);
}

TEST_CASE("sar accumulates weights until the target") {
  const auto flat = [](std::span<const double>) { return 1.0; };
  const auto weight = [](double, double y) { return y < 0.5 ? 0.5 : 0.0; };
  StubStream stream(2, {0.1, 0.1,   // w = 0.5
                        0.2, 0.9,   // w = 0, counted not stored
                        0.3, 0.2,   // w = 0.5
                        0.4, 0.3}); // w = 0.5, reaches 1.5 >= 1.2
  const auto sample = sar_accept_density(flat, stream, 1.2, weight);
  CHECK(sample.candidates_consumed == 4);
  CHECK(sample.points.size() == 3);
  CHECK(sample.total_weight == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("importance estimate frozen example") {
  WeightedSample sample;
  for (double x : {0.2, 0.4, 0.6}) sample.points.push_back({{x}, 1.0});
  sample.total_weight = 3.0;
  const auto f = [](std::span<const double> x) { return x[0]; };
  const auto p = [](std::span<const double>) { return 1.0; };
  CHECK(importance_estimate(f, p, sample, 3.0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(importance_estimate(f, p, sample, 4.0) == doctest::Approx(0.3).epsilon(1e-15));
  const auto zero = [](std::span<const double>) { return 0.0; };
  CHECK_THROWS_AS(importance_estimate(f, zero, sample, 3.0), std::domain_error);
  CHECK_THROWS_AS(importance_estimate(f, p, sample, 0.0), std::invalid_argument);
}

TEST_CASE("crude estimate averages f over the stream") {
  StubStream stream(1, {0.1, 0.2, 0.3, 0.4});
  const auto f = [](std::span<const double> x) { return 10.0 * x[0]; };
  CHECK(crude_estimate(f, stream, 4) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("smoothed and plain estimators agree on a known integral") {
  // integral of f(x) = 3x^2 with importance density p(x) = 2x on (0,1):
  // both estimators should land near 1.
  const auto f = [](std::span<const double> x) { return 3.0 * x[0] * x[0]; };
  const auto p = [](std::span<const double> x) { return 2.0 * x[0]; };
  const double majorant = 2.0;
  const std::size_t n = 4096;

  PointStream s1(StreamKind::random_start_halton, 2, 11);
  const auto ar = ar_accept_density(p, majorant, s1, n);
  const double ar_est = importance_estimate(f, p, ar, static_cast<double>(n));
  CHECK(std::fabs(ar_est - 1.0) < 0.01);

  PointStream s2(StreamKind::random_start_halton, 2, 12);
  const auto w2 = [&](double pv, double y) {
    return sar2_weight(pv, 0.0, 2.0, majorant, y);
  };
  const auto sar2 = sar_accept_density(p, s2, static_cast<double>(n), w2);
  const double sar2_est = importance_estimate(f, p, sar2, static_cast<double>(n));
  CHECK(std::fabs(sar2_est - 1.0) < 0.01);
}
