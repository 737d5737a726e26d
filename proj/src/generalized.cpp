#include "tailbounds/generalized.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tailbounds/errors.hpp"

namespace tailbounds {

namespace {

// cosh(710) overflows IEEE double; keep the bracket safely below.
constexpr double kExpansionCap = 700.0;
constexpr int kMaxIterations = 200;

}  // namespace

MomentProfile MomentProfile::create(double d, std::vector<double> mu) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw ValidationError("moment profile: d must be finite and > 0");
  }
  if (mu.empty()) {
    throw ValidationError("moment profile: need at least mu_2 (m >= 2)");
  }
  MomentProfile p;
  p.d_ = d;
  p.mu_ = std::move(mu);
  p.gamma_.reserve(p.mu_.size());
  double dpow = 1.0;
  double prev = 1.0;
  for (std::size_t l = 1; l <= p.mu_.size(); ++l) {
    const double m = p.mu_[l - 1];
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw ValidationError("moment profile: mu_" + std::to_string(2 * l) +
                            " must be finite and >= 0");
    }
    dpow *= d * d;
    const double g = m / dpow;
    if (g > prev * (1.0 + 1e-12)) {
      throw ValidationError("moment profile: normalized moments must satisfy 1 >= g_2 >= ... >= "
                            "g_m >= 0, violated at g_" +
                            std::to_string(2 * l));
    }
    p.gamma_.push_back(g);
    prev = g;
  }
  return p;
}

double t3_objective(double x, double delta, const MomentProfile& profile) {
  if (!(x >= 0.0)) throw std::domain_error("t3_objective requires x >= 0");
  if (!(delta >= 0.0)) throw std::domain_error("t3_objective requires delta >= 0");
  const auto& g = profile.gammas();
  const double gm = g.back();
  double bracket = 1.0;
  const double x2 = x * x;
  double term = 1.0;  // x^{2l} / (2l)!
  for (std::size_t l = 1; l + 1 <= g.size(); ++l) {
    term *= x2 / static_cast<double>((2 * l - 1) * (2 * l));
    bracket += (g[l - 1] - gm) * term;
  }
  bracket += gm * cosh_minus_one(x);
  return std::exp(-delta * x) * bracket;
}

MinimizeResult minimize_convex_univariate(const std::function<double(double)>& f, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("minimize_convex_univariate requires tol > 0");
  MinimizeResult result;

  // Bracket by doubling until f turns upward.
  double lo = 0.0, hi = 1.0;
  double f_lo = f(lo), f_hi = f(hi);
  double prev = lo, f_prev = f_lo;
  while (f_hi < f_prev && hi < kExpansionCap) {
    lo = prev;
    prev = hi;
    f_prev = f_hi;
    hi = std::min(2.0 * hi, kExpansionCap);
    f_hi = f(hi);
  }
  if (f_hi < f_prev) {
    // Still descending at the cap: an infimum at infinity (or beyond the
    // representable range). Report the best point seen.
    result.x_star = hi;
    result.objective_value = f_hi;
    result.converged = false;
    return result;
  }

  // Golden-section on [lo, hi].
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c1 = b - kInvPhi * (b - a);
  double c2 = a + kInvPhi * (b - a);
  double f1 = f(c1), f2 = f(c2);
  int it = 0;
  while (b - a > tol && it < kMaxIterations) {
    if (f1 < f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - kInvPhi * (b - a);
      f1 = f(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + kInvPhi * (b - a);
      f2 = f(c2);
    }
    ++it;
  }
  result.iterations = it;
  result.converged = (b - a) <= tol;
  result.x_star = 0.5 * (a + b);
  result.objective_value = f(result.x_star);
  // A boundary minimum at x = 0 beats or ties any interior candidate.
  const double f0 = f(0.0);
  if (f0 <= result.objective_value) {
    result.x_star = 0.0;
    result.objective_value = f0;
  }
  return result;
}

T3Bound tail_bound_t3(std::int64_t n, double alpha, const MomentProfile& profile) {
  if (n < 1) throw std::domain_error("tail_bound_t3 requires n >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("tail_bound_t3 requires alpha >= 0 and finite");
  }
  const double delta = alpha / profile.d();
  T3Bound out;
  if (delta > 1.0) {
    out.per_step_factor = 0.0;
    out.bound = {0.0, 0.0};
    return out;
  }
  if (delta == 1.0) {
    // As x -> inf the polynomial terms vanish under exp(-x) and
    // exp(-x)*g_m*(cosh(x)-1) -> g_m/2; the objective never dips below
    // that limit since it equals
    //   exp(-x)*[1 + poly(x) - g_m*(2-exp(-x))/2] + g_m/2 >= g_m/2.
    out.per_step_factor = 0.5 * profile.gamma_top();
    out.delta_limit_extension = true;
  } else {
    const MinimizeResult mr = minimize_convex_univariate(
        [&](double x) { return t3_objective(x, delta, profile); }, 1e-10);
    out.per_step_factor = mr.objective_value;
    out.x_star = mr.x_star;
    out.iterations = mr.iterations;
    out.converged = mr.converged;
  }
  const double raw = 2.0 * std::pow(out.per_step_factor, static_cast<double>(n));
  out.bound = {raw, std::min(1.0, raw)};
  return out;
}

}  // namespace tailbounds
