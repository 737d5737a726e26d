#pragma once

// Exact tail probabilities for i.i.d. lattice-supported increments via
// dynamic programming: plain tails, running-maximum tails with an absorbing
// barrier, the Freedman event under deterministic quadratic variation, and
// the rate-function convergence check against the closed-form exponents.
//
// Linear-scale probabilities with compensated tail summation cover the
// common range; a log-domain twin takes over when the tail mass would
// underflow double precision.

#include <cstdint>
#include <map>
#include <vector>

namespace tailbounds {

// An i.i.d. increment law supported on a lattice: value = offset * step.
struct LatticeLaw {
  double step = 1.0;
  std::map<std::int64_t, double> atoms;  // offset -> probability

  /// P(+-d) = gamma/2 at offsets +-1, P(0) = 1-gamma; step = d.
  static LatticeLaw three_point(double gamma, double d);
  /// P(+d) = gamma/(1+gamma), P(-gamma*d) = 1/(1+gamma) on the lattice
  /// step d/q, where gamma is rationalized as p/q (q <= 10000, within
  /// 1e-12); throws ValidationError when gamma has no such representation.
  static LatticeLaw two_point_mcdiarmid(double gamma, double d);

  void validate() const;
  double mean() const;
  double second_moment() const;  // about zero
};

/// Exact P(S_n >= threshold). The threshold is rounded up to the lattice
/// (the event only changes at lattice points, so this is exact, not
/// conservative). Throws ResourceGuardError when the DP would touch more
/// than 1e7 (state, step) pairs.
double exact_tail(const LatticeLaw& law, std::int64_t n, double threshold);

/// ln P(S_n >= threshold), computed fully in the log domain; -infinity when
/// the tail is empty. Same guard as exact_tail.
double exact_log_tail(const LatticeLaw& law, std::int64_t n, double threshold);

enum class BarrierMode { one_sided, two_sided };

/// Exact P(max_{1<=k<=n} S_k >= barrier) (one_sided) or
/// P(max_{1<=k<=n} |S_k| >= barrier) (two_sided) by absorbing all mass at
/// or beyond the barrier at every step and returning the absorbed mass.
double exact_max_tail(const LatticeLaw& law, std::int64_t n, double barrier, BarrierMode mode);

/// Exact P(exists n: max_{1<=k<=n} S_k >= z, Q_n <= r) when Q_n = n*qstep
/// is deterministic: the event reduces to a running-max event over
/// N = floor(r/qstep) steps. qstep must equal the law's second moment
/// within 1e-12 (validated).
double exact_freedman_deterministic_q(const LatticeLaw& law, double qstep, double z, double r);

enum class RateLaw { symmetric_three_point, mcdiarmid_two_point };

struct RateEstimate {
  std::vector<std::int64_t> n_values;
  std::vector<double> probabilities;     // exact P(S_n >= threshold_n); 0 if underflowed
  std::vector<double> empirical_rates;   // -(1/n) ln P
  double target = 0.0;                   // the closed-form exponent the rates approach
  std::vector<double> gaps;              // empirical_rate - target, positive at finite n
  std::vector<double> thresholds;        // lattice thresholds actually used
  std::vector<bool> rounded;             // true when delta*n was off-lattice and rounded up
  std::vector<bool> used_log_scale;      // true when the log-domain DP was needed
};

/// Convergence of the exact finite-n rate -(1/n) ln P(S_n >= delta*n)
/// (unit jump bound d = 1) to the closed-form exponent: the
/// variance-constrained exponent for the symmetric three-point law, the KL
/// exponent for the two-point law. Off-lattice thresholds are rounded up
/// and reported, never silently changed.
RateEstimate rate_convergence(double gamma, double delta, std::vector<std::int64_t> n_values,
                              RateLaw law = RateLaw::symmetric_three_point);

struct BennettCheck {
  double lhs = 0.0;   // exact E[exp(lambda X)] for the extremal three-point law
  double rhs = 0.0;   // 1 + gamma*(cosh(lambda*d) - 1)
  bool equal = false; // |lhs - rhs| <= 1e-14 (absolute)
};

/// The moment bound 1 + gamma*(cosh(lambda*d) - 1) holds with equality for
/// the three-point law P(+-d) = gamma/2, P(0) = 1-gamma, for every lambda;
/// this evaluates both sides through independent routes.
BennettCheck refined_bennett_check(double gamma, double d, double lambda);

/// Checks (1 + a*(cosh(lambda)-1)) <= exp(theta*a) at every grid point
/// a >= 0. The condition holds for all a >= 0 exactly when
/// theta >= cosh(lambda) - 1; just below that threshold the violation
/// appears at small a, so grids meant to expose it must include points
/// near zero.
bool certificate_check(double lambda, double theta, const std::vector<double>& a_grid);

}  // namespace tailbounds
