#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmcar/vg.hpp"

using namespace qmcar;

namespace {

VGParams table_params() { return VGParams(-0.1436, 0.12136, 0.3); }

}  // namespace

TEST_CASE("vg parameter derived quantities") {
  const VGParams p = table_params();
  CHECK(p.martingale_argument() == doctest::Approx(1.04087076256).epsilon(1e-14));
  CHECK(p.drift_correction() ==
        doctest::Approx(0.13352544843057331).epsilon(1e-14));
}

TEST_CASE("vg parameter validation") {
  CHECK_THROWS(VGParams(-0.1436, 0.0, 0.3));
  CHECK_THROWS(VGParams(-0.1436, 0.12136, -0.3));
  // 1 - theta nu - sigma^2 nu / 2 <= 0
  CHECK_THROWS(VGParams(4.0, 0.12136, 0.3));
  CHECK_THROWS(OptionSpec(0.0, 101.0, 0.1, 1.0));
  CHECK_THROWS(OptionSpec(100.0, -1.0, 0.1, 1.0));
  CHECK_THROWS(OptionSpec(100.0, 101.0, 0.1, 0.0));
}

TEST_CASE("pricing method names round trip") {
  for (PricingMethod m : {PricingMethod::inverse_mc, PricingMethod::ar_mc,
                          PricingMethod::inverse_qmc, PricingMethod::ar_qmc})
    CHECK(pricing_method_from_string(to_string(m)) == m);
  CHECK_THROWS(pricing_method_from_string("halton"));
}

TEST_CASE("terminal value frozen") {
  const VGParams p = table_params();
  const OptionSpec opt(100.0, 101.0, 0.1, 1.0);
  CHECK(vg_terminal_value(p, opt, 0.5, 1.2) ==
        doctest::Approx(113.61860212679933).epsilon(1e-13));
  // z = 0, g = 0 leaves only the deterministic drift
  CHECK(vg_terminal_value(p, opt, 0.0, 0.0) ==
        doctest::Approx(100.0 * std::exp(0.1 + p.drift_correction())).epsilon(1e-14));
}

TEST_CASE("price report fields") {
  const VGParams p = table_params();
  const OptionSpec opt(100.0, 101.0, 0.1, 1.0);
  const PriceReport inv =
      price_european_call(p, opt, PricingMethod::inverse_mc, 200, 3, 42);
  CHECK(inv.stream_kind == "pseudorandom");
  CHECK(inv.rejection_policy == "none");
  CHECK(inv.paths == 200);
  CHECK(inv.replications == 3);
  CHECK(inv.seed == 42);
  CHECK(inv.workers == 1);
  CHECK(!inv.generator.empty());
  CHECK(inv.time_seconds >= 0.0);
  const PriceReport ar =
      price_european_call(p, opt, PricingMethod::ar_qmc, 200, 3, 42);
  CHECK(ar.stream_kind == "random_start_halton");
  CHECK(ar.rejection_policy != "none");
  CHECK(ar.price > 0.0);
}

TEST_CASE("price invalid arguments") {
  const VGParams p = table_params();
  const OptionSpec opt(100.0, 101.0, 0.1, 1.0);
  CHECK_THROWS(price_european_call(p, opt, PricingMethod::inverse_mc, 0, 3, 1));
  CHECK_THROWS(price_european_call(p, opt, PricingMethod::inverse_mc, 10, 0, 1));
}

TEST_CASE("price is independent of worker count") {
  const VGParams p = table_params();
  const OptionSpec opt(100.0, 101.0, 0.1, 0.5);
  const PriceReport one =
      price_european_call(p, opt, PricingMethod::ar_qmc, 800, 5, 777, 1);
  const PriceReport three =
      price_european_call(p, opt, PricingMethod::ar_qmc, 800, 5, 777, 3);
  CHECK(one.price == three.price);
  CHECK(one.std_dev == three.std_dev);
  const PriceReport again =
      price_european_call(p, opt, PricingMethod::ar_qmc, 800, 5, 777, 1);
  CHECK(one.price == again.price);
}

TEST_CASE("qmc inversion converges to the one-year price") {
  const VGParams p = table_params();
  const OptionSpec opt(100.0, 101.0, 0.1, 1.0);
  const PriceReport rep =
      price_european_call(p, opt, PricingMethod::inverse_qmc, 5000, 10, 9001);
  CHECK(std::fabs(rep.price - 10.9815614276) < 0.05);
  CHECK(rep.std_dev < 0.05);
}

TEST_CASE("qmc rejection converges to the quarter-year price") {
  // T / nu < 1 exercises the small-shape gamma branch
  const VGParams p = table_params();
  const OptionSpec opt(100.0, 101.0, 0.1, 0.25);
  const PriceReport rep =
      price_european_call(p, opt, PricingMethod::ar_qmc, 5000, 10, 9001);
  CHECK(std::fabs(rep.price - 3.47417087231) < 0.05);
  CHECK(rep.std_dev < 0.05);
}

TEST_CASE("unit-shape gamma clock prices agree across methods") {
  // T = nu makes the clock exponential (shape 1), the inversion-free path
  const VGParams p = table_params();
  const OptionSpec opt(100.0, 101.0, 0.1, 0.3);
  const PriceReport ar =
      price_european_call(p, opt, PricingMethod::ar_qmc, 4000, 8, 31);
  const PriceReport inv =
      price_european_call(p, opt, PricingMethod::inverse_qmc, 4000, 8, 32);
  CHECK(std::fabs(ar.price - inv.price) < 0.1);
}
