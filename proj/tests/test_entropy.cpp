#include "gllp/entropy.hpp"

#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "gllp/rng.hpp"

using namespace gllp;

namespace {

// Independent route to f(delta): bisect the defining equation on f itself,
// never touching h2_inv_low.
double f_oracle(double delta) {
  const double target = 1.0 - h2(delta);
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    // h2(1/2 - f) decreases in f.
    (h2(0.5 - mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("h2 endpoints and symmetric maximum") {
  CHECK(h2(0.5) == 1.0);
  CHECK(h2(0.0) == 0.0);
  CHECK(h2(1.0) == 0.0);
  CHECK(h2(0.25) == Catch::Approx(0.811278).margin(1e-6));
  CHECK(h2(0.25) == Catch::Approx(0.8112781244591328).margin(1e-12));
}

TEST_CASE("h2 domain errors") {
  CHECK_THROWS_AS(h2(-0.01), std::domain_error);
  CHECK_THROWS_AS(h2(1.01), std::domain_error);
  CHECK_THROWS_AS(h2(std::nan("")), std::domain_error);
}

TEST_CASE("h2 concavity on random pairs") {
  SplitMix64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double p = rng.uniform01(), q = rng.uniform01();
    CHECK(h2(0.5 * (p + q)) >= 0.5 * (h2(p) + h2(q)) - 1e-12);
  }
}

TEST_CASE("h2_inv_low endpoints and frozen value") {
  CHECK(h2_inv_low(1.0) == 0.5);
  CHECK(h2_inv_low(0.0) == 0.0);
  CHECK(h2_inv_low(0.5) == Catch::Approx(0.110028).margin(1e-5));
  CHECK(h2_inv_low(0.5) == Catch::Approx(0.11002786443835959).margin(1e-9));
  CHECK_THROWS_AS(h2_inv_low(-0.1), std::domain_error);
  CHECK_THROWS_AS(h2_inv_low(1.1), std::domain_error);
}

TEST_CASE("h2_inv_low round trip on [0, 1/2]") {
  for (int i = 0; i <= 500; ++i) {
    const double p = 0.5 * i / 500.0;
    CHECK(std::abs(h2_inv_low(h2(p)) - p) < 1e-10);
  }
}

TEST_CASE("f_of_delta endpoints") {
  CHECK(f_of_delta(0.0).f_value == 0.0);
  CHECK(f_of_delta(0.5).f_value == 0.5);
  CHECK_THROWS_AS(f_of_delta(0.51), std::domain_error);
  CHECK_THROWS_AS(f_of_delta(-0.01), std::domain_error);
}

TEST_CASE("f_of_delta against the direct-bisection oracle") {
  CHECK(f_of_delta(0.01).f_value == Catch::Approx(0.1657).margin(1e-3));
  for (double d : {1e-4, 1e-3, 0.01, 0.05, 0.1, 0.2, 0.3, 0.45, 0.5}) {
    CHECK(f_of_delta(d).f_value == Catch::Approx(f_oracle(d)).margin(1e-9));
  }
}

TEST_CASE("balance threshold 2f(Delta) = 1/2") {
  // Threshold where the balanced rate at delta = 0 hits zero.
  const double dstar = balance_threshold();
  CHECK(dstar == Catch::Approx(0.0289).margin(1e-4));
  CHECK(2.0 * f_of_delta(dstar).f_value == Catch::Approx(0.5).margin(1e-9));
}

TEST_CASE("defining-equation residual, monotonicity, and bounds on a grid") {
  double prev = -1.0;
  for (int i = 1; i <= 2000; ++i) {
    const double d = 0.5 * i / 2000.0;
    const BalanceResult b = f_of_delta(d);
    CHECK(std::abs(b.residual) < 1e-10);
    CHECK(b.f_value >= prev - 1e-12);
    prev = b.f_value;
    const FBounds fb = f_upper_bounds(d);
    CHECK(b.f_value <= fb.quadratic + 1e-12);
    CHECK(b.f_value <= fb.sqrt_form + 1e-12);
    CHECK(b.f_value * b.f_value <= 0.5 * std::numbers::ln2 * h2(d) + 1e-12);
  }
}

TEST_CASE("f_upper_bounds values") {
  const FBounds at0 = f_upper_bounds(0.0);
  CHECK(at0.quadratic == 0.0);
  CHECK(at0.sqrt_form == 0.0);
  CHECK(f_upper_bounds(0.01).sqrt_form == Catch::Approx(0.16741).margin(1e-5));
  const FBounds at_half = f_upper_bounds(0.5);
  CHECK(at_half.quadratic == Catch::Approx(0.5887).margin(1e-4));
  CHECK(at_half.quadratic >= f_of_delta(0.5).f_value);
}
