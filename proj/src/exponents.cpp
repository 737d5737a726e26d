#include "tailbounds/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tailbounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_exponent_input(ExponentInput in) {
  if (!(in.gamma >= 0.0 && in.gamma <= 1.0) || !std::isfinite(in.gamma)) {
    throw std::domain_error("gamma must be in [0,1], got " + std::to_string(in.gamma));
  }
  if (!(in.delta >= 0.0) || !std::isfinite(in.delta)) {
    throw std::domain_error("delta must be finite and >= 0, got " + std::to_string(in.delta));
  }
}

void require_positive_count(std::int64_t n) {
  if (n < 1) throw std::domain_error("n must be >= 1, got " + std::to_string(n));
}

}  // namespace

double cosh_minus_one(double x) {
  const double s = std::sinh(0.5 * x);
  return 2.0 * s * s;
}

double log_moment_bound(double gamma, double x) {
  return std::log1p(gamma * cosh_minus_one(x));
}

double optimal_x(ExponentInput in) {
  require_exponent_input(in);
  if (in.gamma == 0.0) throw std::domain_error("optimal_x requires gamma > 0");
  if (in.delta >= 1.0) throw std::domain_error("optimal_x requires delta < 1");
  const double g = in.gamma, de = in.delta;
  const double disc = de * de * (1.0 - g) * (1.0 - g) + g * g * (1.0 - de * de);
  const double num = de * (1.0 - g) + std::sqrt(disc);
  const double den = g * (1.0 - de);
  return std::log(num / den);
}

ExponentValue exponent_cs(ExponentInput in) {
  require_exponent_input(in);
  if (in.delta > 1.0) return {kInf, std::nullopt};
  if (in.delta == 0.0) {
    // The objective is maximized at x = 0 whenever gamma > 0; for gamma = 0
    // it is identically 0 and no single optimizer exists.
    if (in.gamma > 0.0) return {0.0, 0.0};
    return {0.0, std::nullopt};
  }
  if (in.gamma == 0.0) return {kInf, std::nullopt};
  if (in.delta == 1.0) return {std::log(2.0 / in.gamma), std::nullopt};
  const double x = optimal_x(in);
  const double value = in.delta * x - log_moment_bound(in.gamma, x);
  return {std::max(0.0, value), x};
}

double kl_divergence(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("kl_divergence requires p in [0,1], got " + std::to_string(p));
  }
  if (!(q > 0.0 && q < 1.0)) {
    if (p == q) return 0.0;
    throw std::domain_error("kl_divergence requires q in (0,1), got " + std::to_string(q));
  }
  double value = 0.0;
  if (p > 0.0) value += p * std::log(p / q);
  if (p < 1.0) value += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return std::max(0.0, value);
}

ExponentValue exponent_kl(ExponentInput in) {
  require_exponent_input(in);
  if (in.gamma == 0.0) throw std::domain_error("exponent_kl requires gamma > 0");
  if (in.delta > 1.0) return {kInf, std::nullopt};
  const double p = (in.delta + in.gamma) / (1.0 + in.gamma);
  const double q = in.gamma / (1.0 + in.gamma);
  // At delta = 1, p = 1 and D(1||q) = ln(1/q) = ln(1 + 1/gamma), which is
  // exactly the left limit; no separate branch is needed.
  return {kl_divergence(std::min(p, 1.0), q), std::nullopt};
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("binary_entropy requires x in [0,1], got " + std::to_string(x));
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double common_exponent_gamma1(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw std::domain_error("common_exponent_gamma1 requires delta >= 0");
  }
  if (delta > 1.0) return kInf;
  constexpr double kLn2 = 0.6931471805599453;
  return kLn2 * (1.0 - binary_entropy(0.5 * (1.0 - delta)));
}

double freedman_b(double u) {
  if (!(u > 0.0)) throw std::domain_error("freedman_b requires u > 0, got " + std::to_string(u));
  if (u < 1e-4) {
    // B(u) = sum_k 2*(-u)^k/((k+1)(k+2)); four terms leave an O(u^4) < 1e-16
    // truncation error at the switch point.
    return 1.0 + u * (-1.0 / 3.0 + u * (1.0 / 6.0 + u * (-1.0 / 10.0)));
  }
  return 2.0 * ((1.0 + u) * std::log1p(u) - u) / (u * u);
}

double freedman_c(double u) {
  if (!(u > 0.0)) throw std::domain_error("freedman_c requires u > 0, got " + std::to_string(u));
  const double u2 = u * u;
  if (u < 1e-4) {
    return 1.0 + u2 * (-1.0 / 12.0 + u2 * (1.0 / 40.0 + u2 * (-5.0 / 448.0)));
  }
  // sqrt(1+u^2) - 1 written as u^2/(sqrt(1+u^2)+1) to avoid cancellation.
  const double sq = std::sqrt(1.0 + u2);
  return 2.0 * (u * std::asinh(u) - u2 / (sq + 1.0)) / u2;
}

namespace {

BoundValue two_sided_bound(std::int64_t n, ExponentValue e) {
  const double raw = std::isinf(e.value) ? 0.0 : 2.0 * std::exp(-static_cast<double>(n) * e.value);
  return {raw, std::min(1.0, raw)};
}

}  // namespace

BoundValue tail_bound_t1(std::int64_t n, ExponentInput in) {
  require_positive_count(n);
  return two_sided_bound(n, exponent_cs(in));
}

BoundValue tail_bound_t2(std::int64_t n, ExponentInput in) {
  require_positive_count(n);
  return two_sided_bound(n, exponent_kl(in));
}

double freedman_bound(FreedmanInput in, FreedmanVariant variant) {
  if (!(in.z > 0.0 && std::isfinite(in.z)) || !(in.r > 0.0 && std::isfinite(in.r)) ||
      !(in.d > 0.0 && std::isfinite(in.d))) {
    throw std::domain_error("freedman_bound requires z, r, d > 0 and finite");
  }
  const double u = in.z * in.d / in.r;
  const double factor = variant == FreedmanVariant::tightened ? freedman_c(u) : freedman_b(u);
  return std::exp(-in.z * in.z / (2.0 * in.r) * factor);
}

}  // namespace tailbounds
