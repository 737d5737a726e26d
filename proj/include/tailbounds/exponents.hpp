#pragma once

// Closed-form exponents and bound factors for conditionally symmetric
// martingales with bounded jumps: the variance-constrained Chernoff exponent,
// the KL (McDiarmid-type) exponent it tightens, their common value at
// gamma = 1, and the Freedman-type bound factors.
//
// All exponents are in nats. binary_entropy alone is base 2.

#include <cstdint>
#include <optional>

namespace tailbounds {

// Normalized pair driving the variance-constrained exponents:
// gamma = sigma^2/d^2 in [0,1], delta = alpha/d >= 0.
struct ExponentInput {
  double gamma = 0.0;
  double delta = 0.0;
};

// An optimized exponent in nats. +infinity is a representable value (the
// event is impossible); optimizer_x is present when the optimum is attained
// at a finite argument.
struct ExponentValue {
  double value = 0.0;
  std::optional<double> optimizer_x;
};

// Deviation level z, quadratic-variation cap r, one-sided jump bound d.
struct FreedmanInput {
  double z = 0.0;
  double r = 0.0;
  double d = 0.0;
};

// A tail bound both as the formula gives it (raw, can exceed 1) and clamped
// into [0,1].
struct BoundValue {
  double raw = 0.0;
  double clamped = 0.0;
};

enum class FreedmanVariant { tightened, classical };

/// cosh(x) - 1 computed as 2*sinh(x/2)^2, which keeps full relative accuracy
/// near x = 0 where the direct difference cancels.
double cosh_minus_one(double x);

/// ln(1 + gamma*(cosh(x) - 1)), the per-step log moment bound.
double log_moment_bound(double gamma, double x);

/// The optimizing argument of the variance-constrained exponent.
/// Requires 0 < gamma <= 1 and 0 <= delta < 1; throws std::domain_error
/// otherwise (the delta >= 1 and gamma = 0 cases are handled by the
/// edge-case branches of exponent_cs).
double optimal_x(ExponentInput in);

/// Variance-constrained exponent for conditionally symmetric martingales:
///   E(gamma, delta) = delta*x - ln(1 + gamma*(cosh(x) - 1))
/// at the optimal x. Edge cases: delta = 1 -> ln(2/gamma); delta > 1 ->
/// +infinity; delta = 0 -> 0; gamma = 0 -> 0 if delta = 0 else +infinity
/// (a zero-variance symmetric bounded martingale is a.s. constant).
ExponentValue exponent_cs(ExponentInput in);

/// Relative entropy between Bernoulli(p) and Bernoulli(q), natural base,
/// with the 0*ln(0) = 0 convention. Requires 0 <= p <= 1 and 0 < q < 1
/// (q in {0,1} is accepted only when p = q).
double kl_divergence(double p, double q);

/// KL exponent D((delta+gamma)/(1+gamma) || gamma/(1+gamma)) of the bound
/// that holds without conditional symmetry. delta = 1 takes the value of
/// the left limit ln(1 + 1/gamma); delta > 1 -> +infinity. Requires
/// gamma > 0.
ExponentValue exponent_kl(ExponentInput in);

/// Binary entropy to the base 2, zero at the endpoints.
double binary_entropy(double x);

/// Common value of exponent_cs and exponent_kl at gamma = 1:
/// f(delta) = ln(2) * (1 - h2((1-delta)/2)) for delta <= 1, else +infinity.
double common_exponent_gamma1(double delta);

/// Classical Freedman/Bennett bound factor
///   B(u) = 2*((1+u)*ln(1+u) - u) / u^2,  u > 0.
/// Strictly decreasing, -> 1 as u -> 0+. Switches to a truncated Taylor
/// series below u = 1e-4 where the u^2 denominator would cancel.
double freedman_b(double u);

/// Tightened bound factor under conditional symmetry
///   C(u) = 2*(u*asinh(u) - sqrt(1+u^2) + 1) / u^2,  u > 0.
/// Strictly decreasing, -> 1 as u -> 0+, and C(u) >= B(u) everywhere.
/// Same small-u series switch as freedman_b.
double freedman_c(double u);

/// Two-sided running-maximum bound 2*exp(-n*E(gamma, delta)); raw and
/// clamped. Returns 0 when the exponent is +infinity.
BoundValue tail_bound_t1(std::int64_t n, ExponentInput in);

/// Two-sided running-maximum bound 2*exp(-n*D(...)) with the KL exponent.
BoundValue tail_bound_t2(std::int64_t n, ExponentInput in);

/// Freedman-type bound exp(-z^2/(2r) * F(z*d/r)) with F = C (tightened,
/// needs conditional symmetry) or F = B (classical).
double freedman_bound(FreedmanInput in, FreedmanVariant variant);

}  // namespace tailbounds
