#pragma once

// Higher-moment generalization of the variance-constrained bound: a moment
// profile caps the even conditional moments, and the per-step factor is the
// minimum over x >= 0 of
//   exp(-delta*x) * [1 + sum_{l=1}^{m/2-1} (g_{2l}-g_m) x^{2l}/(2l)!
//                      + g_m*(cosh(x)-1)]
// with g_{2l} = mu_{2l}/d^{2l}. The m = 2 case reduces to the closed-form
// variance exponent.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tailbounds/exponents.hpp"

namespace tailbounds {

// Jump bound d and even conditional-moment ceilings mu_2, mu_4, ..., mu_m.
// The normalized sequence g_{2l} = mu_{2l}/d^{2l} must satisfy
// 1 >= g_2 >= g_4 >= ... >= g_m >= 0; anything else is unsatisfiable by a
// random variable with |xi/d| <= 1 and is rejected.
class MomentProfile {
 public:
  /// Validates and normalizes; throws ValidationError on a bad profile.
  static MomentProfile create(double d, std::vector<double> mu);

  double d() const { return d_; }
  int order() const { return static_cast<int>(2 * gamma_.size()); }  // m
  const std::vector<double>& mu() const { return mu_; }
  const std::vector<double>& gammas() const { return gamma_; }  // g_2..g_m
  double gamma_top() const { return gamma_.back(); }            // g_m

 private:
  MomentProfile() = default;
  double d_ = 1.0;
  std::vector<double> mu_;
  std::vector<double> gamma_;
};

struct MinimizeResult {
  double x_star = 0.0;
  double objective_value = 0.0;
  int iterations = 0;
  bool converged = true;
};

/// The bracketed per-step objective at a given x >= 0; strictly positive.
double t3_objective(double x, double delta, const MomentProfile& profile);

/// Derivative-free minimization of a continuous unimodal-or-monotone f over
/// [0, inf): brackets by doubling from [0,1] until f increases or the
/// expansion cap x <= 700 is hit (cosh overflows just above that), then
/// golden-section until the bracket width drops below tol (at most 200
/// iterations). The returned x_star lies in the final bracket; how close it
/// can get to the true minimizer is limited by the sqrt(machine epsilon)
/// value flatness any derivative-free search faces, so distances below
/// ~1e-7 should not be relied on even with a tighter tol.
/// converged is false when the cap was reached while f was still
/// decreasing; objective_value is then the best value seen, which for a
/// Chernoff objective is still a valid (if loose) bound factor.
MinimizeResult minimize_convex_univariate(const std::function<double(double)>& f, double tol);

struct T3Bound {
  BoundValue bound;
  double per_step_factor = 1.0;  // minimized objective (or its analytic limit)
  std::optional<double> x_star;  // absent for the delta >= 1 branches
  int iterations = 0;
  bool converged = true;
  // delta == 1: the minimum is an infimum as x -> inf with value g_m/2;
  // the bound 2*(g_m/2)^n extends the theorem by continuity (it matches
  // the closed-form delta = 1 value when m = 2).
  bool delta_limit_extension = false;
};

/// Higher-moment tail bound 2 * (min objective)^n with delta = alpha/d.
/// delta > 1 gives exactly 0 (bounded jumps); delta = 1 uses the analytic
/// x -> inf limit of the objective (see T3Bound::delta_limit_extension).
T3Bound tail_bound_t3(std::int64_t n, double alpha, const MomentProfile& profile);

}  // namespace tailbounds
