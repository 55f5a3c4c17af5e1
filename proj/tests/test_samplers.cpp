#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qmcar/gof.hpp"
#include "qmcar/samplers.hpp"
#include "qmcar/stream.hpp"

using namespace qmcar;

namespace {

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

}  // namespace

TEST_CASE("beta switching constants") {
  const auto symmetric = beta_aw_constants(0.5, 0.5);
  CHECK(symmetric.t == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(symmetric.p == doctest::Approx(0.5).epsilon(1e-15));
  // alpha(1-alpha) = beta(1-beta) keeps t at 1/2; p = beta t/(beta t + alpha(1-t))
  const auto skew = beta_aw_constants(0.3, 0.7);
  CHECK(skew.t == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(skew.p == doctest::Approx(0.7).epsilon(1e-14));
  const auto lopsided = beta_aw_constants(0.2, 0.5);
  CHECK(lopsided.t == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(lopsided.p == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(beta_aw_constants(1.2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(beta_aw_constants(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("cheng constants") {
  const auto c = gamma_ch_constants(2.0);
  CHECK(c.a == doctest::Approx(0.57735026918962576).epsilon(1e-15));
  CHECK(c.b == doctest::Approx(0.61370563888010938).epsilon(1e-15));
  CHECK(c.c == doctest::Approx(3.7320508075688773).epsilon(1e-15));
  CHECK_THROWS_AS(gamma_ch_constants(1.0), std::invalid_argument);
}

TEST_CASE("ahrens-dieter constant") {
  CHECK(gamma_gs_b(0.5) == doctest::Approx(1.1839397205857212).epsilon(1e-15));
  CHECK_THROWS_AS(gamma_gs_b(1.0), std::invalid_argument);
}

TEST_CASE("stream dims per gamma candidate") {
  CHECK(gamma_stream_dims(2.5) == 2);
  CHECK(gamma_stream_dims(0.5) == 3);
  CHECK(gamma_stream_dims(1.0) == 1);
}

TEST_CASE("beta hand trace, low branch") {
  // (u, v) = (1/e, 0.25): v <= p picks the left piece, X = t (v/p)^(1/alpha)
  // = 0.5 * 0.5^2 = 0.125; Y = 1 passes the linear squeeze 0.375.
  StubStream stream(2, {std::exp(-1.0), 0.25});
  const auto record = beta_aw(0.5, 0.5, stream, 1);
  REQUIRE(record.accepted.size() == 1);
  CHECK(record.accepted[0] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(record.candidates_consumed == 1);
}

TEST_CASE("beta hand trace, high branch rejects a near-one proposal") {
  // (u, v) = (0.9, 0.9): X = 1 - 0.5 (0.2)^2 = 0.98, Y = 0.105 fails both
  // the squeeze 0.48 and the log test 0.336.
  StubStream stream(2, {0.9, 0.9});
  const auto record = beta_aw_candidates(0.5, 0.5, stream, 1);
  CHECK(record.accepted.empty());
  CHECK(record.candidates_consumed == 1);
}

TEST_CASE("cheng hand trace") {
  // first candidate (0.05, 0.99) fails the squeeze and the log test;
  // second (0.7, 0.3) passes the squeeze with X = 2 exp(a log(u/(1-u))).
  StubStream stream(2, {0.05, 0.99, 0.7, 0.3});
  const auto record = gamma_ch(2.0, stream, 1);
  REQUIRE(record.accepted.size() == 1);
  CHECK(record.accepted[0] == doctest::Approx(3.261981485395491).epsilon(1e-15));
  CHECK(record.candidates_consumed == 2);
}

TEST_CASE("ahrens-dieter hand trace, power branch") {
  // (0.5, 1/e, -): Y = b/2 <= 1, X = Y^(1/alpha) = Y^2, W = 1 >= X accepts.
  StubStream stream(3, {0.5, std::exp(-1.0), 0.123});
  const auto record = gamma_gs(0.5, stream, 1);
  REQUIRE(record.accepted.size() == 1);
  CHECK(record.accepted[0] == doctest::Approx(0.35042831549514886).epsilon(1e-15));
}

TEST_CASE("ahrens-dieter hand trace, exponential branch") {
  // u = 0.9 sends Y = 0.9 b > 1 into the tail piece with
  // X = -log((b - Y)/alpha) = 1.4405902889357946. W = w^(1/(alpha-1)) = w^-2:
  // w = 0.9 gives W = 1.23 < X (reject), w = 0.5 gives W = 4 >= X (accept).
  StubStream stream(3, {0.9, 0.2, 0.9, 0.9, 0.2, 0.5});
  const auto record = gamma_gs(0.5, stream, 1);
  REQUIRE(record.accepted.size() == 1);
  CHECK(record.accepted[0] == doctest::Approx(1.440590288935795).epsilon(1e-15));
  CHECK(record.candidates_consumed == 2);
}

TEST_CASE("gamma dispatch covers the three shape regimes") {
  StubStream unit(1, {1.0 - std::exp(-1.0), 0.5});
  const auto exp_record = gamma_sample(1.0, 1.0, unit, 2);
  REQUIRE(exp_record.accepted.size() == 2);
  CHECK(exp_record.accepted[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(exp_record.candidates_consumed == 2);

  PointStream ch_stream(StreamKind::pseudorandom, 2, 5);
  CHECK(gamma_sample(2.0, 1.0, ch_stream, 10).accepted.size() == 10);
  PointStream gs_stream(StreamKind::pseudorandom, 3, 5);
  CHECK(gamma_sample(0.5, 1.0, gs_stream, 10).accepted.size() == 10);
  PointStream wrong(StreamKind::pseudorandom, 2, 5);
  CHECK_THROWS_AS(gamma_sample(1.0, 1.0, wrong, 1), std::invalid_argument);
  CHECK_THROWS_AS(gamma_sample(0.5, 1.0, wrong, 1), std::invalid_argument);
}

TEST_CASE("scale multiplies the accepted values") {
  PointStream a(StreamKind::random_start_halton, 3, 88);
  PointStream b(StreamKind::random_start_halton, 3, 88);
  const auto unit = gamma_sample(0.7, 1.0, a, 500);
  const auto scaled = gamma_sample(0.7, 2.5, b, 500);
  REQUIRE(unit.accepted.size() == scaled.accepted.size());
  for (std::size_t i = 0; i < unit.accepted.size(); ++i)
    CHECK(scaled.accepted[i] == unit.accepted[i] * 2.5);
}

TEST_CASE("candidate budget runs are deterministic") {
  PointStream a(StreamKind::random_start_halton, 2, 321);
  PointStream b(StreamKind::random_start_halton, 2, 321);
  const auto ra = beta_aw_candidates(0.3, 0.7, a, 5000);
  const auto rb = beta_aw_candidates(0.3, 0.7, b, 5000);
  CHECK(ra.candidates_consumed == 5000);
  CHECK(ra.accepted == rb.accepted);
  CHECK(ra.acceptance_ratio() > 0.3);
  CHECK(ra.acceptance_ratio() < 1.0);
}

TEST_CASE("samples pass the distribution test") {
  const std::size_t n = 20000;
  for (StreamKind kind : {StreamKind::pseudorandom, StreamKind::random_start_halton}) {
    {
      PointStream stream(kind, 2, 1234);
      const auto record = beta_aw(0.3, 0.7, stream, n);
      const double a2 = anderson_darling(record.accepted, Distribution::beta(0.3, 0.7));
      CHECK(a2 < kA2FivePercent);
    }
    {
      PointStream stream(kind, 2, 1234);
      const auto record = gamma_ch(2.0, stream, n);
      const double a2 = anderson_darling(record.accepted, Distribution::gamma(2.0));
      CHECK(a2 < kA2FivePercent);
    }
    {
      PointStream stream(kind, 3, 1234);
      const auto record = gamma_gs(0.5, stream, n);
      const double a2 = anderson_darling(record.accepted, Distribution::gamma(0.5));
      CHECK(a2 < kA2FivePercent);
    }
  }
}

TEST_CASE("acceptance ratios approach the analytic rates") {
  // Cheng's acceptance rate is 4 alpha / (C e^(alpha - b)) ... rather than
  // pin the closed form, check the observed ratio is stable across seeds and
  // streams to within a few percent.
  double ratios[2];
  int slot = 0;
  for (StreamKind kind : {StreamKind::pseudorandom, StreamKind::random_start_halton}) {
    PointStream stream(kind, 2, 9);
    const auto record = gamma_ch(2.4, stream, 50000);
    ratios[slot++] = record.acceptance_ratio();
  }
  CHECK(std::fabs(ratios[0] - ratios[1]) < 0.02);
}
