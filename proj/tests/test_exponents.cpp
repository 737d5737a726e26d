#include "tailbounds/exponents.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "support/reference_values.hpp"
#include "tailbounds/simulate.hpp"

using namespace tailbounds;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent series oracles for the small-u behavior of the bound factors.
double series_b(double u) {
  double sum = 0.0, upow = 1.0;
  for (int k = 0; k < 8; ++k) {
    sum += 2.0 * upow / static_cast<double>((k + 1) * (k + 2));
    upow *= -u;
  }
  return sum;
}

double series_c(double u) {
  const double u2 = u * u;
  return 1.0 - u2 / 12.0 + u2 * u2 / 40.0 - 5.0 * u2 * u2 * u2 / 448.0;
}

double exponent_objective(double gamma, double delta, double x) {
  return delta * x - std::log1p(gamma * (std::cosh(x) - 1.0));
}

}  // namespace

TEST_CASE("optimal_x closed form") {
  CHECK(optimal_x({0.5, 0.0}) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(optimal_x({0.5, 0.5}) == doctest::Approx(refvals::kLn3).epsilon(1e-14));
  CHECK(optimal_x({1.0, 0.5}) == doctest::Approx(refvals::kHalfLn3).epsilon(1e-14));
}

TEST_CASE("optimal_x domain errors") {
  CHECK_THROWS_AS((optimal_x({0.0, 0.5})), std::domain_error);
  CHECK_THROWS_AS((optimal_x({0.5, 1.0})), std::domain_error);
  CHECK_THROWS_AS((optimal_x({0.5, 2.0})), std::domain_error);
  CHECK_THROWS_AS((optimal_x({1.5, 0.5})), std::domain_error);
  CHECK_THROWS_AS((optimal_x({0.5, -0.1})), std::domain_error);
}

TEST_CASE("optimal_x satisfies the stationarity condition") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const double g = 0.02 + 0.98 * rng.next_double();
    const double de = 0.98 * rng.next_double();
    const double x = optimal_x({g, de});
    const double lhs = de * (1.0 + g * (std::cosh(x) - 1.0));
    const double rhs = g * std::sinh(x);
    if (de > 1e-12) {
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(std::abs(lhs), std::abs(rhs)));
    }
    // Perturbing away from the optimum never increases the exponent.
    const double at = exponent_objective(g, de, x);
    CHECK(exponent_objective(g, de, x + 1e-4) <= at + 1e-12);
    if (x - 1e-4 >= 0.0) CHECK(exponent_objective(g, de, x - 1e-4) <= at + 1e-12);
  }
}

TEST_CASE("exponent_cs values and edge cases") {
  CHECK(exponent_cs({1.0, 1.0}).value == doctest::Approx(refvals::kLn2).epsilon(1e-14));
  CHECK(exponent_cs({0.5, 0.5}).value == doctest::Approx(refvals::kExpCsHalfHalf).epsilon(1e-13));
  CHECK(exponent_cs({0.7, 2.0}).value == kInf);
  CHECK(exponent_cs({0.5, 1.0}).value == doctest::Approx(std::log(4.0)).epsilon(1e-14));

  const ExponentValue at_zero = exponent_cs({0.5, 0.0});
  CHECK(at_zero.value == 0.0);
  REQUIRE(at_zero.optimizer_x.has_value());
  CHECK(*at_zero.optimizer_x == 0.0);

  // gamma = 0 extension: almost surely constant, so only delta = 0 is possible.
  CHECK(exponent_cs({0.0, 0.0}).value == 0.0);
  CHECK(exponent_cs({0.0, 0.5}).value == kInf);

  const ExponentValue mid = exponent_cs({0.5, 0.5});
  REQUIRE(mid.optimizer_x.has_value());
  CHECK(*mid.optimizer_x == doctest::Approx(refvals::kLn3).epsilon(1e-14));
}

TEST_CASE("kl_divergence values, convention, errors") {
  CHECK(kl_divergence(0.5, 0.5) == 0.0);
  CHECK(kl_divergence(0.75, 0.5) == doctest::Approx(refvals::kKl34_12).epsilon(1e-14));
  CHECK(kl_divergence(1.0, 0.5) == doctest::Approx(refvals::kLn2).epsilon(1e-14));
  CHECK(kl_divergence(0.0, 0.5) == doctest::Approx(refvals::kLn2).epsilon(1e-14));
  CHECK(kl_divergence(0.0, 0.0) == 0.0);
  CHECK(kl_divergence(1.0, 1.0) == 0.0);
  CHECK_THROWS_AS((kl_divergence(0.5, 0.0)), std::domain_error);
  CHECK_THROWS_AS((kl_divergence(0.5, 1.0)), std::domain_error);
  CHECK_THROWS_AS((kl_divergence(-0.1, 0.5)), std::domain_error);
  CHECK_THROWS_AS((kl_divergence(1.1, 0.5)), std::domain_error);
}

TEST_CASE("kl_divergence is nonnegative, zero only at p = q") {
  SplitMix64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const double p = rng.next_double();
    const double q = 0.01 + 0.98 * rng.next_double();
    const double d = kl_divergence(p, q);
    CHECK(d >= 0.0);
    if (std::abs(p - q) > 1e-3) CHECK(d > 0.0);
    CHECK(kl_divergence(q, q) == 0.0);
  }
}

TEST_CASE("exponent_kl values and edge cases") {
  const ExponentValue v = exponent_kl({1.0, 0.5});
  CHECK(v.value == doctest::Approx(refvals::kKl34_12).epsilon(1e-14));
  CHECK_FALSE(v.optimizer_x.has_value());
  CHECK(exponent_kl({0.5, 0.0}).value == 0.0);
  CHECK(exponent_kl({0.5, 1.0}).value == doctest::Approx(refvals::kLn3).epsilon(1e-14));
  CHECK(exponent_kl({0.5, 1.5}).value == kInf);
  CHECK_THROWS_AS((exponent_kl({0.0, 0.5})), std::domain_error);
}

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.25) == doctest::Approx(refvals::kH2Quarter).epsilon(1e-14));
  CHECK_THROWS_AS((binary_entropy(-0.1)), std::domain_error);
  CHECK_THROWS_AS((binary_entropy(1.1)), std::domain_error);
}

TEST_CASE("common_exponent_gamma1") {
  CHECK(common_exponent_gamma1(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(common_exponent_gamma1(1.0) == doctest::Approx(refvals::kLn2).epsilon(1e-14));
  CHECK(common_exponent_gamma1(0.5) == doctest::Approx(refvals::kKl34_12).epsilon(1e-13));
  CHECK(common_exponent_gamma1(1.5) == kInf);
}

TEST_CASE("freedman_b values and series branch") {
  CHECK(freedman_b(1.0) == doctest::Approx(refvals::kB1).epsilon(1e-14));
  CHECK(freedman_b(3.0) == doctest::Approx(refvals::kB3).epsilon(1e-14));
  CHECK(std::abs(freedman_b(1e-8) - 1.0) <= 1e-8);
  for (double u = 1e-9; u < 2e-5; u *= 3.0) {
    CHECK(freedman_b(u) == doctest::Approx(series_b(u)).epsilon(1e-13));
  }
  // Continuity across the series switch at u = 1e-4.
  CHECK(std::abs(freedman_b(1e-4 * (1 - 1e-9)) - freedman_b(1e-4 * (1 + 1e-9))) <= 1e-11);
  CHECK_THROWS_AS((freedman_b(0.0)), std::domain_error);
  CHECK_THROWS_AS((freedman_b(-1.0)), std::domain_error);
}

TEST_CASE("freedman_c values and series branch") {
  CHECK(freedman_c(1.0) == doctest::Approx(refvals::kC1).epsilon(1e-14));
  CHECK(std::abs(freedman_c(1e-8) - 1.0) <= 1e-12);
  for (double u = 1e-9; u < 2e-5; u *= 3.0) {
    CHECK(freedman_c(u) == doctest::Approx(series_c(u)).epsilon(1e-13));
  }
  CHECK(std::abs(freedman_c(1e-4 * (1 - 1e-9)) - freedman_c(1e-4 * (1 + 1e-9))) <= 1e-11);
  CHECK(freedman_c(1.0) > freedman_b(1.0));
  CHECK_THROWS_AS((freedman_c(0.0)), std::domain_error);
}

TEST_CASE("bound factors: C >= B, both strictly decreasing, limit 1") {
  double prev_b = 1.0, prev_c = 1.0;
  for (int i = 0; i < 1000; ++i) {
    const double u = 1e-6 * std::pow(1e12, static_cast<double>(i) / 999.0);
    const double b = freedman_b(u), c = freedman_c(u);
    CHECK(c >= b);
    CHECK(b < prev_b);
    CHECK(c < prev_c);
    CHECK(b > 0.0);
    CHECK(c < 1.0);
    prev_b = b;
    prev_c = c;
  }
}

TEST_CASE("tail_bound_t1") {
  const BoundValue b = tail_bound_t1(100, {0.5, 0.5});
  CHECK(b.raw == doctest::Approx(refvals::kT1_100).epsilon(1e-10));
  CHECK(b.clamped == b.raw);

  const BoundValue vac = tail_bound_t1(5, {0.3, 0.0});
  CHECK(vac.raw == 2.0);
  CHECK(vac.clamped == 1.0);

  const BoundValue zero = tail_bound_t1(10, {0.5, 1.5});
  CHECK(zero.raw == 0.0);
  CHECK(zero.clamped == 0.0);

  CHECK_THROWS_AS((tail_bound_t1(0, {0.5, 0.5})), std::domain_error);
}

TEST_CASE("tail_bound_t2") {
  const BoundValue b = tail_bound_t2(100, {1.0, 0.5});
  CHECK(b.raw == doctest::Approx(refvals::kT2_100).epsilon(1e-10));
  const BoundValue vac = tail_bound_t2(1, {0.5, 0.0});
  CHECK(vac.raw == 2.0);
  CHECK(vac.clamped == 1.0);
  CHECK(tail_bound_t2(7, {0.5, 1.2}).raw == 0.0);
}

TEST_CASE("bounds: raw >= clamped, clamped in [0,1]") {
  SplitMix64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const double g = 0.05 + 0.95 * rng.next_double();
    const double de = 1.5 * rng.next_double();
    const auto n = static_cast<std::int64_t>(1 + rng.next_double() * 40);
    for (const BoundValue& b : {tail_bound_t1(n, {g, de}), tail_bound_t2(n, {g, de})}) {
      CHECK(b.raw >= b.clamped);
      CHECK(b.clamped >= 0.0);
      CHECK(b.clamped <= 1.0);
    }
  }
}

TEST_CASE("freedman_bound") {
  const FreedmanInput in{5.0, 5.0, 1.0};
  CHECK(freedman_bound(in, FreedmanVariant::tightened) ==
        doctest::Approx(refvals::kFreedmanTight551).epsilon(1e-13));
  CHECK(freedman_bound(in, FreedmanVariant::classical) ==
        doctest::Approx(refvals::kFreedmanClassical551).epsilon(1e-13));

  SplitMix64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const FreedmanInput f{0.1 + 10.0 * rng.next_double(), 0.1 + 10.0 * rng.next_double(),
                          0.1 + 3.0 * rng.next_double()};
    CHECK(freedman_bound(f, FreedmanVariant::tightened) <=
          freedman_bound(f, FreedmanVariant::classical));
  }
  CHECK(freedman_bound({3.0, 10.0, 2.0}, FreedmanVariant::tightened) <=
        freedman_bound({3.0, 10.0, 2.0}, FreedmanVariant::classical));
  CHECK_THROWS_AS((freedman_bound({0.0, 1.0, 1.0}, FreedmanVariant::tightened)), std::domain_error);
}

TEST_CASE("strict tightening on the open square") {
  for (int gi = 1; gi <= 9; ++gi) {
    for (int di = 1; di <= 9; ++di) {
      const double g = 0.1 * gi, de = 0.1 * di;
      CHECK(exponent_cs({g, de}).value > exponent_kl({g, de}).value);
    }
  }
}

TEST_CASE("gamma = 1: exponent_cs, exponent_kl and f agree to 1e-12") {
  for (int i = 0; i <= 100; ++i) {
    const double de = 0.01 * i;
    const double cs = exponent_cs({1.0, de}).value;
    const double kl = exponent_kl({1.0, de}).value;
    const double f = common_exponent_gamma1(de);
    CHECK(std::abs(cs - kl) <= 1e-12);
    CHECK(std::abs(cs - f) <= 1e-12);
  }
}

TEST_CASE("exponent_cs monotone: non-increasing in gamma, non-decreasing in delta") {
  std::vector<double> gs, ds;
  for (int i = 1; i <= 100; ++i) gs.push_back(0.01 * i);
  for (int j = 0; j < 100; ++j) ds.push_back(0.01 * j);
  for (double de : ds) {
    double prev = kInf;
    for (double g : gs) {
      const double v = exponent_cs({g, de}).value;
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
  for (double g : gs) {
    double prev = -1.0;
    for (double de : ds) {
      const double v = exponent_cs({g, de}).value;
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("left limits at delta -> 1") {
  for (double g : {0.25, 0.5, 0.75, 1.0}) {
    for (double eps : {1e-3, 1e-6}) {
      const double de = 1.0 - eps;
      const double cs_err = std::abs(exponent_cs({g, de}).value - std::log(2.0 / g));
      CHECK(cs_err <= 10.0 * eps * optimal_x({g, de}));

      const double kl_err = std::abs(exponent_kl({g, de}).value - std::log1p(1.0 / g));
      const double h = eps / 10.0;
      const double fd = (exponent_kl({g, de + h}).value - exponent_kl({g, de - h}).value) /
                        (2.0 * h);
      CHECK(kl_err <= 10.0 * eps * std::abs(fd));
    }
  }
}
