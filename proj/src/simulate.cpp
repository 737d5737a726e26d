#include "tailbounds/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "tailbounds/errors.hpp"

namespace tailbounds {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double weight_at(const MartingaleSpec& spec, std::int64_t k, double prev_increment) {
  switch (spec.weights) {
    case WeightRule::constant_one:
      return 1.0;
    case WeightRule::deterministic_sequence:
      return spec.weight_sequence[static_cast<std::size_t>(k - 1)];
    case WeightRule::previous_sign_dependent:
      return (k == 1 || prev_increment > 0.0) ? 1.0 : 0.5;
  }
  return 1.0;
}

// Splits [0, trials) into per-thread ranges and sums the per-path counts
// returned by body(path_index). Integer aggregation keeps the total
// independent of the partitioning.
template <class Body>
std::int64_t parallel_count(std::int64_t trials, int workers, const Body& body) {
  workers = std::max(1, workers);
  if (workers == 1 || trials < 2 * workers) {
    std::int64_t total = 0;
    for (std::int64_t i = 0; i < trials; ++i) total += body(i);
    return total;
  }
  std::vector<std::int64_t> partial(static_cast<std::size_t>(workers), 0);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t chunk = (trials + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = static_cast<std::int64_t>(w) * chunk;
    const std::int64_t end = std::min(trials, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      std::int64_t local = 0;
      for (std::int64_t i = begin; i < end; ++i) local += body(i);
      partial[static_cast<std::size_t>(w)] = local;
    });
  }
  for (auto& t : pool) t.join();
  return std::accumulate(partial.begin(), partial.end(), std::int64_t{0});
}

struct OutcomeCounts {
  std::int64_t hits = 0;
  std::int64_t truncated = 0;
};

// Single pass over the paths tallying two disjoint outcomes (body returns
// 0, 1 = hit, 2 = truncated).
template <class Body>
OutcomeCounts parallel_outcomes(std::int64_t trials, int workers, const Body& body) {
  workers = std::max(1, workers);
  std::vector<OutcomeCounts> partial(static_cast<std::size_t>(std::max(workers, 1)));
  auto run_range = [&](int w, std::int64_t begin, std::int64_t end) {
    OutcomeCounts local;
    for (std::int64_t i = begin; i < end; ++i) {
      const int code = body(i);
      if (code == 1) ++local.hits;
      else if (code == 2) ++local.truncated;
    }
    partial[static_cast<std::size_t>(w)] = local;
  };
  if (workers == 1 || trials < 2 * workers) {
    run_range(0, 0, trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t begin = static_cast<std::int64_t>(w) * chunk;
      const std::int64_t end = std::min(trials, begin + chunk);
      pool.emplace_back(run_range, w, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  OutcomeCounts total;
  for (const auto& c : partial) {
    total.hits += c.hits;
    total.truncated += c.truncated;
  }
  return total;
}

}  // namespace

SplitMix64 stream_for_path(std::uint64_t seed, std::uint64_t path_index) {
  return SplitMix64(mix64(seed ^ mix64(path_index + 0x9e3779b97f4a7c15ULL)));
}

IncrementLaw IncrementLaw::three_point(double gamma, double d) {
  IncrementLaw law;
  law.kind = LawKind::three_point_symmetric;
  law.gamma = gamma;
  law.d = d;
  law.validate();
  return law;
}

IncrementLaw IncrementLaw::two_point_mcdiarmid(double gamma, double d) {
  IncrementLaw law;
  law.kind = LawKind::two_point_mcdiarmid;
  law.gamma = gamma;
  law.d = d;
  law.validate();
  return law;
}

IncrementLaw IncrementLaw::shifted_three_point(double gamma, double d, double shift) {
  IncrementLaw law;
  law.kind = LawKind::shifted_three_point;
  law.gamma = gamma;
  law.d = d;
  law.shift = shift;
  law.validate();
  return law;
}

IncrementLaw IncrementLaw::custom(std::vector<double> atoms, std::vector<double> weights, double d,
                                  bool one_sided) {
  IncrementLaw law;
  law.kind = LawKind::custom_discrete;
  law.atoms = std::move(atoms);
  law.weights = std::move(weights);
  law.d = d;
  law.one_sided = one_sided;
  law.validate();
  return law;
}

void IncrementLaw::validate() const {
  if (!(d > 0.0) || !std::isfinite(d)) throw ValidationError("increment law: d must be > 0");
  switch (kind) {
    case LawKind::three_point_symmetric:
    case LawKind::two_point_mcdiarmid:
      if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw ValidationError("increment law: gamma must be in (0,1]");
      }
      if (shift != 0.0) throw ValidationError("increment law: shift only applies to shifted_three_point");
      break;
    case LawKind::shifted_three_point:
      if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw ValidationError("increment law: gamma must be in (0,1]");
      }
      if (!(shift <= 0.0) || !std::isfinite(shift)) {
        throw ValidationError("increment law: shift must be <= 0");
      }
      break;
    case LawKind::custom_discrete: {
      if (atoms.empty() || atoms.size() != weights.size()) {
        throw ValidationError("increment law: custom atoms/weights sizes must match and be nonempty");
      }
      double total = 0.0;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!std::isfinite(atoms[i])) throw ValidationError("increment law: atom not finite");
        if (!(weights[i] >= 0.0)) throw ValidationError("increment law: negative weight");
        if (atoms[i] > d || (!one_sided && atoms[i] < -d)) {
          throw ValidationError("increment law: custom support must lie within the jump bound");
        }
        total += weights[i];
      }
      if (std::abs(total - 1.0) > 1e-12) {
        throw ValidationError("increment law: weights must sum to 1 within 1e-12");
      }
      break;
    }
  }
}

double IncrementLaw::mean() const {
  switch (kind) {
    case LawKind::three_point_symmetric:
    case LawKind::two_point_mcdiarmid:
      return 0.0;
    case LawKind::shifted_three_point:
      return shift;
    case LawKind::custom_discrete: {
      double m = 0.0;
      for (std::size_t i = 0; i < atoms.size(); ++i) m += atoms[i] * weights[i];
      return m;
    }
  }
  return 0.0;
}

double IncrementLaw::centered_second_moment() const {
  switch (kind) {
    case LawKind::three_point_symmetric:
    case LawKind::shifted_three_point:
    case LawKind::two_point_mcdiarmid:
      return gamma * d * d;
    case LawKind::custom_discrete: {
      const double m = mean();
      double v = 0.0;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        v += (atoms[i] - m) * (atoms[i] - m) * weights[i];
      }
      return v;
    }
  }
  return 0.0;
}

double IncrementLaw::sample(SplitMix64& stream) const {
  const double u = stream.next_double();
  switch (kind) {
    case LawKind::three_point_symmetric:
      if (u < 0.5 * gamma) return d;
      if (u < gamma) return -d;
      return 0.0;
    case LawKind::two_point_mcdiarmid:
      return u < gamma / (1.0 + gamma) ? d : -gamma * d;
    case LawKind::shifted_three_point:
      if (u < 0.5 * gamma) return shift + d;
      if (u < gamma) return shift - d;
      return shift;
    case LawKind::custom_discrete: {
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
        acc += weights[i];
        if (u < acc) return atoms[i];
      }
      return atoms.back();
    }
  }
  return 0.0;
}

void MartingaleSpec::validate() const {
  law.validate();
  if (horizon < 1) throw ValidationError("martingale spec: horizon must be >= 1");
  if (weights == WeightRule::deterministic_sequence) {
    if (weight_sequence.size() < static_cast<std::size_t>(horizon)) {
      throw ValidationError("martingale spec: weight sequence shorter than horizon");
    }
    for (double a : weight_sequence) {
      if (!std::isfinite(a)) throw ValidationError("martingale spec: weight not finite");
      if (law.mean() < 0.0 && a < 0.0) {
        throw ValidationError("martingale spec: supermartingale construction needs A_k >= 0");
      }
    }
  }
}

double MartingaleSpec::weight_bound() const {
  if (weights != WeightRule::deterministic_sequence) return 1.0;
  double b = 0.0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(horizon); ++k) {
    b = std::max(b, std::abs(weight_sequence[k]));
  }
  return b;
}

PathStats sample_path(const MartingaleSpec& spec, SplitMix64& stream) {
  spec.validate();
  const double step_var = spec.law.centered_second_moment();
  PathStats stats;
  stats.qvar_trace.reserve(static_cast<std::size_t>(spec.horizon));
  double sum = 0.0, q = 0.0, prev = 0.0;
  double run_max = -std::numeric_limits<double>::infinity();
  double run_min = std::numeric_limits<double>::infinity();
  double run_max_abs = 0.0;
  for (std::int64_t k = 1; k <= spec.horizon; ++k) {
    const double a = weight_at(spec, k, prev);
    const double xi = a * spec.law.sample(stream);
    q += a * a * step_var;
    sum += xi;
    prev = xi;
    run_max = std::max(run_max, sum);
    run_min = std::min(run_min, sum);
    run_max_abs = std::max(run_max_abs, std::abs(sum));
    stats.qvar_trace.push_back(q);
  }
  stats.final_sum = sum;
  stats.running_max = run_max;
  stats.running_min = run_min;
  stats.running_max_abs = run_max_abs;
  return stats;
}

WilsonInterval wilson_interval(std::int64_t hits, std::int64_t trials) {
  if (trials < 1 || hits < 0 || hits > trials) {
    throw ValidationError("wilson_interval: need 0 <= hits <= trials, trials >= 1");
  }
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The endpoints are exact at the degenerate counts; roundoff in
  // center -/+ half must not push ci_low above p_hat = 0 (or below 1).
  const double low = hits == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = hits == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

TailEstimate estimate_tail(const MartingaleSpec& spec, double alpha, TailSide side,
                           std::int64_t trials, std::uint64_t seed, int workers) {
  spec.validate();
  if (trials < 1) throw ValidationError("estimate_tail: trials must be >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("estimate_tail: alpha must be >= 0 and finite");
  }
  const double threshold = alpha * static_cast<double>(spec.horizon);

  const std::int64_t hits = parallel_count(trials, workers, [&](std::int64_t i) -> std::int64_t {
    SplitMix64 stream = stream_for_path(seed, static_cast<std::uint64_t>(i));
    double sum = 0.0, prev = 0.0;
    double run_max = -std::numeric_limits<double>::infinity();
    double run_min = std::numeric_limits<double>::infinity();
    double run_max_abs = 0.0;
    for (std::int64_t k = 1; k <= spec.horizon; ++k) {
      const double a = weight_at(spec, k, prev);
      const double xi = a * spec.law.sample(stream);
      sum += xi;
      prev = xi;
      run_max = std::max(run_max, sum);
      run_min = std::min(run_min, sum);
      run_max_abs = std::max(run_max_abs, std::abs(sum));
    }
    switch (side) {
      case TailSide::two_sided_max:
        return run_max_abs >= threshold ? 1 : 0;
      case TailSide::one_sided_max:
        return run_max >= threshold ? 1 : 0;
      case TailSide::one_sided_min:
        return run_min <= -threshold ? 1 : 0;
    }
    return 0;
  });

  TailEstimate est;
  est.hits = hits;
  est.trials = trials;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  const WilsonInterval ci = wilson_interval(hits, trials);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  est.seed = seed;
  const char* event = side == TailSide::two_sided_max  ? "max_{1<=k<=n} |S_k| >= alpha*n"
                      : side == TailSide::one_sided_max ? "max_{1<=k<=n} S_k >= alpha*n"
                                                        : "min_{1<=k<=n} S_k <= -alpha*n";
  est.event_descriptor = std::string(event) + " with alpha=" + std::to_string(alpha) +
                         ", n=" + std::to_string(spec.horizon);
  return est;
}

FreedmanEstimate estimate_freedman_event(const MartingaleSpec& spec, double z, double r,
                                         std::int64_t max_horizon, std::int64_t trials,
                                         std::uint64_t seed, int workers) {
  spec.validate();
  if (trials < 1) throw ValidationError("estimate_freedman_event: trials must be >= 1");
  if (!(z > 0.0) || !(r > 0.0)) {
    throw ValidationError("estimate_freedman_event: z and r must be > 0");
  }
  if (max_horizon < 1) throw ValidationError("estimate_freedman_event: max_horizon must be >= 1");
  const double step_var = spec.law.centered_second_moment();

  // Outcome per path: 0 = miss (Q passed r without reaching z), 1 = hit,
  // 2 = truncated (horizon ended while Q <= r and no hit). Encoded in one
  // integer pass so both counters aggregate order-independently.
  auto run_path = [&](std::int64_t i) -> int {
    SplitMix64 stream = stream_for_path(seed, static_cast<std::uint64_t>(i));
    double sum = 0.0, q = 0.0, prev = 0.0;
    for (std::int64_t k = 1; k <= max_horizon; ++k) {
      const double a = weight_at(spec, k, prev);
      q += a * a * step_var;  // Q_k is predictable: known before the draw
      if (q > r) return 0;
      const double xi = a * spec.law.sample(stream);
      sum += xi;
      prev = xi;
      if (sum >= z) return 1;
    }
    return 2;
  };

  const OutcomeCounts counts = parallel_outcomes(trials, workers, run_path);

  FreedmanEstimate out;
  out.truncated_paths = counts.truncated;
  out.estimate.hits = counts.hits;
  out.estimate.trials = trials;
  out.estimate.p_hat = static_cast<double>(counts.hits) / static_cast<double>(trials);
  const WilsonInterval ci = wilson_interval(counts.hits, trials);
  out.estimate.ci_low = ci.low;
  out.estimate.ci_high = ci.high;
  out.estimate.seed = seed;
  out.estimate.event_descriptor = "exists n: S_n >= z and Q_n <= r with z=" + std::to_string(z) +
                                  ", r=" + std::to_string(r) +
                                  ", max_horizon=" + std::to_string(max_horizon);
  return out;
}

}  // namespace tailbounds
