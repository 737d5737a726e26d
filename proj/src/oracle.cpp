#include "tailbounds/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tailbounds/errors.hpp"
#include "tailbounds/exponents.hpp"

namespace tailbounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStateStepCap = 1e7;
// Below this the linear-scale DP result is too close to the underflow
// threshold to trust; rate_convergence re-runs in the log domain.
constexpr double kLinearFloor = 1e-290;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

// Smallest lattice index k with k*step >= threshold; values within
// 1e-9*step of a lattice point snap to it.
std::int64_t lattice_ceil(double threshold, double step, bool* rounded_up = nullptr) {
  const double x = threshold / step;
  const std::int64_t k = static_cast<std::int64_t>(std::ceil(x - 1e-9));
  if (rounded_up != nullptr) {
    *rounded_up = std::abs(static_cast<double>(k) - x) > 1e-9;
  }
  return k;
}

struct Span {
  std::int64_t min_off = 0;
  std::int64_t max_off = 0;
  std::int64_t width() const { return max_off - min_off; }
};

Span law_span(const LatticeLaw& law) {
  return {law.atoms.begin()->first, law.atoms.rbegin()->first};
}

void guard_state_steps(const LatticeLaw& law, std::int64_t n) {
  const double span = static_cast<double>(law_span(law).width());
  const double steps = static_cast<double>(n);
  // The DP touches sum_{k=1..n} (k*span + 1) states in total.
  const double work = span * steps * (steps + 1.0) / 2.0 + steps;
  if (work > kStateStepCap) {
    throw ResourceGuardError("exact DP would touch " + std::to_string(work) +
                             " state-steps, above the 1e7 cap");
  }
}

void check_mass(double live, double absorbed, std::int64_t step_index) {
  if (std::abs(live + absorbed - 1.0) > 1e-10) {
    throw std::runtime_error("exact DP lost probability mass at step " +
                             std::to_string(step_index));
  }
}

}  // namespace

LatticeLaw LatticeLaw::three_point(double gamma, double d) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("three_point: gamma must be in (0,1]");
  if (!(d > 0.0)) throw ValidationError("three_point: d must be > 0");
  LatticeLaw law;
  law.step = d;
  law.atoms[1] = 0.5 * gamma;
  law.atoms[-1] = 0.5 * gamma;
  if (gamma < 1.0) law.atoms[0] = 1.0 - gamma;
  law.validate();
  return law;
}

LatticeLaw LatticeLaw::two_point_mcdiarmid(double gamma, double d) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ValidationError("two_point_mcdiarmid: gamma must be in (0,1]");
  }
  if (!(d > 0.0)) throw ValidationError("two_point_mcdiarmid: d must be > 0");
  for (std::int64_t q = 1; q <= 10000; ++q) {
    const double pq = gamma * static_cast<double>(q);
    const std::int64_t p = static_cast<std::int64_t>(std::llround(pq));
    if (p >= 1 && std::abs(pq - static_cast<double>(p)) <= 1e-12 * static_cast<double>(q)) {
      const double g = static_cast<double>(p) / static_cast<double>(q);
      LatticeLaw law;
      law.step = d / static_cast<double>(q);
      law.atoms[q] = g / (1.0 + g);
      law.atoms[-p] = 1.0 / (1.0 + g);
      law.validate();
      return law;
    }
  }
  throw ValidationError("two_point_mcdiarmid: gamma is not p/q with q <= 10000");
}

void LatticeLaw::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("lattice law: step must be > 0");
  if (atoms.empty()) throw ValidationError("lattice law: no atoms");
  double total = 0.0;
  for (const auto& [off, p] : atoms) {
    (void)off;
    if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("lattice law: bad probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-14) {
    throw ValidationError("lattice law: probabilities must sum to 1 within 1e-14");
  }
}

double LatticeLaw::mean() const {
  double m = 0.0;
  for (const auto& [off, p] : atoms) m += static_cast<double>(off) * step * p;
  return m;
}

double LatticeLaw::second_moment() const {
  double m2 = 0.0;
  for (const auto& [off, p] : atoms) {
    const double v = static_cast<double>(off) * step;
    m2 += v * v * p;
  }
  return m2;
}

double exact_tail(const LatticeLaw& law, std::int64_t n, double threshold) {
  law.validate();
  if (n < 1) throw ValidationError("exact_tail: n must be >= 1");
  guard_state_steps(law, n);
  const Span sp = law_span(law);
  const std::int64_t lo = n * sp.min_off, hi = n * sp.max_off;
  const std::size_t size = static_cast<std::size_t>(hi - lo + 1);
  std::vector<double> cur(size, 0.0), next(size, 0.0);
  cur[static_cast<std::size_t>(-lo)] = 1.0;  // S_0 = 0
  for (std::int64_t k = 1; k <= n; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    const std::int64_t klo = (k - 1) * sp.min_off, khi = (k - 1) * sp.max_off;
    for (std::int64_t s = klo; s <= khi; ++s) {
      const double mass = cur[static_cast<std::size_t>(s - lo)];
      if (mass == 0.0) continue;
      for (const auto& [off, p] : law.atoms) {
        next[static_cast<std::size_t>(s + off - lo)] += mass * p;
      }
    }
    cur.swap(next);
    KahanSum total;
    for (std::int64_t s = k * sp.min_off; s <= k * sp.max_off; ++s) {
      total.add(cur[static_cast<std::size_t>(s - lo)]);
    }
    check_mass(total.sum, 0.0, k);
  }
  const std::int64_t kmin = lattice_ceil(threshold, law.step);
  KahanSum tail;
  for (std::int64_t s = std::max(kmin, lo); s <= hi; ++s) {
    tail.add(cur[static_cast<std::size_t>(s - lo)]);
  }
  return std::clamp(tail.sum, 0.0, 1.0);
}

double exact_log_tail(const LatticeLaw& law, std::int64_t n, double threshold) {
  law.validate();
  if (n < 1) throw ValidationError("exact_log_tail: n must be >= 1");
  guard_state_steps(law, n);
  const Span sp = law_span(law);
  const std::int64_t lo = n * sp.min_off, hi = n * sp.max_off;
  const std::size_t size = static_cast<std::size_t>(hi - lo + 1);
  std::vector<double> cur(size, -kInf), next(size, -kInf);
  cur[static_cast<std::size_t>(-lo)] = 0.0;
  std::vector<std::pair<std::int64_t, double>> log_atoms;
  log_atoms.reserve(law.atoms.size());
  for (const auto& [off, p] : law.atoms) {
    if (p > 0.0) log_atoms.emplace_back(off, std::log(p));
  }
  for (std::int64_t k = 1; k <= n; ++k) {
    std::fill(next.begin(), next.end(), -kInf);
    const std::int64_t klo = (k - 1) * sp.min_off, khi = (k - 1) * sp.max_off;
    for (std::int64_t s = klo; s <= khi; ++s) {
      const double lm = cur[static_cast<std::size_t>(s - lo)];
      if (lm == -kInf) continue;
      for (const auto& [off, lp] : log_atoms) {
        double& cell = next[static_cast<std::size_t>(s + off - lo)];
        cell = log_add_exp(cell, lm + lp);
      }
    }
    cur.swap(next);
  }
  double log_total = -kInf;
  for (double lm : cur) log_total = log_add_exp(log_total, lm);
  if (std::abs(log_total) > 1e-8) {
    throw std::runtime_error("exact log DP lost probability mass");
  }
  const std::int64_t kmin = lattice_ceil(threshold, law.step);
  double log_tail = -kInf;
  for (std::int64_t s = std::max(kmin, lo); s <= hi; ++s) {
    log_tail = log_add_exp(log_tail, cur[static_cast<std::size_t>(s - lo)]);
  }
  return std::min(log_tail, 0.0);
}

double exact_max_tail(const LatticeLaw& law, std::int64_t n, double barrier, BarrierMode mode) {
  law.validate();
  if (n < 1) throw ValidationError("exact_max_tail: n must be >= 1");
  guard_state_steps(law, n);
  const Span sp = law_span(law);
  const std::int64_t lo = n * sp.min_off, hi = n * sp.max_off;
  const std::size_t size = static_cast<std::size_t>(hi - lo + 1);
  const std::int64_t bu = lattice_ceil(barrier, law.step);
  const auto absorbs = [&](std::int64_t s) {
    return mode == BarrierMode::one_sided ? s >= bu : (s >= bu || s <= -bu);
  };
  std::vector<double> cur(size, 0.0), next(size, 0.0);
  cur[static_cast<std::size_t>(-lo)] = 1.0;  // the k = 0 state is never absorbed
  KahanSum absorbed;
  for (std::int64_t k = 1; k <= n; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    const std::int64_t klo = (k - 1) * sp.min_off, khi = (k - 1) * sp.max_off;
    for (std::int64_t s = klo; s <= khi; ++s) {
      const double mass = cur[static_cast<std::size_t>(s - lo)];
      if (mass == 0.0) continue;
      for (const auto& [off, p] : law.atoms) {
        const std::int64_t s2 = s + off;
        const double m2 = mass * p;
        if (absorbs(s2)) {
          absorbed.add(m2);
        } else {
          next[static_cast<std::size_t>(s2 - lo)] += m2;
        }
      }
    }
    cur.swap(next);
    KahanSum live;
    for (std::int64_t s = k * sp.min_off; s <= k * sp.max_off; ++s) {
      live.add(cur[static_cast<std::size_t>(s - lo)]);
    }
    check_mass(live.sum, absorbed.sum, k);
  }
  return std::clamp(absorbed.sum, 0.0, 1.0);
}

double exact_freedman_deterministic_q(const LatticeLaw& law, double qstep, double z, double r) {
  law.validate();
  if (!(qstep > 0.0)) throw ValidationError("exact_freedman_deterministic_q: qstep must be > 0");
  if (!(z > 0.0) || !(r > 0.0)) {
    throw ValidationError("exact_freedman_deterministic_q: z and r must be > 0");
  }
  const double m2 = law.second_moment();
  if (std::abs(qstep - m2) > 1e-12 * std::max(1.0, m2)) {
    throw ValidationError("exact_freedman_deterministic_q: qstep " + std::to_string(qstep) +
                          " does not match the law's second moment " + std::to_string(m2));
  }
  // Q_n = n*qstep <= r exactly when n <= floor(r/qstep).
  const std::int64_t horizon = static_cast<std::int64_t>(std::floor(r / qstep + 1e-12));
  if (horizon < 1) return 0.0;
  return exact_max_tail(law, horizon, z, BarrierMode::one_sided);
}

RateEstimate rate_convergence(double gamma, double delta, std::vector<std::int64_t> n_values,
                              RateLaw which) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("rate_convergence: delta must be in (0,1)");
  }
  if (n_values.empty()) throw ValidationError("rate_convergence: need at least one n");
  RateEstimate out;
  out.n_values = std::move(n_values);
  LatticeLaw law;
  if (which == RateLaw::symmetric_three_point) {
    law = LatticeLaw::three_point(gamma, 1.0);
    out.target = exponent_cs({gamma, delta}).value;
  } else {
    law = LatticeLaw::two_point_mcdiarmid(gamma, 1.0);
    out.target = exponent_kl({gamma, delta}).value;
  }
  for (std::int64_t n : out.n_values) {
    if (n < 1) throw ValidationError("rate_convergence: n values must be >= 1");
    const double want = delta * static_cast<double>(n);
    bool rounded = false;
    const std::int64_t ku = lattice_ceil(want, law.step, &rounded);
    const double threshold = static_cast<double>(ku) * law.step;
    double p = exact_tail(law, n, threshold);
    double log_p;
    bool used_log = false;
    if (p < kLinearFloor) {
      log_p = exact_log_tail(law, n, threshold);
      used_log = true;
    } else {
      log_p = std::log(p);
    }
    out.probabilities.push_back(p);
    out.empirical_rates.push_back(-log_p / static_cast<double>(n));
    out.gaps.push_back(out.empirical_rates.back() - out.target);
    out.thresholds.push_back(threshold);
    out.rounded.push_back(rounded);
    out.used_log_scale.push_back(used_log);
  }
  return out;
}

BennettCheck refined_bennett_check(double gamma, double d, double lambda) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ValidationError("refined_bennett_check: gamma must be in (0,1]");
  }
  if (!(d > 0.0)) throw ValidationError("refined_bennett_check: d must be > 0");
  BennettCheck out;
  // Direct expectation over the three atoms versus the bound formula
  // evaluated through its stable cosh(x)-1 route.
  out.lhs = 0.5 * gamma * (std::exp(lambda * d) + std::exp(-lambda * d)) + (1.0 - gamma);
  out.rhs = 1.0 + gamma * cosh_minus_one(lambda * d);
  out.equal = std::abs(out.lhs - out.rhs) <= 1e-14;
  return out;
}

bool certificate_check(double lambda, double theta, const std::vector<double>& a_grid) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("certificate_check: lambda must be >= 0");
  }
  if (!std::isfinite(theta)) throw ValidationError("certificate_check: theta must be finite");
  const double c = cosh_minus_one(lambda);
  for (double a : a_grid) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw ValidationError("certificate_check: grid points must be >= 0");
    }
    if (std::log1p(c * a) > theta * a) return false;
  }
  return true;
}

}  // namespace tailbounds
