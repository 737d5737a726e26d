#pragma once

// Monte Carlo construction and simulation of conditionally symmetric
// martingales, submartingales and supermartingales built as weighted sums
// X_n = sum_k A_k U_k of independent increments, with tail-event estimation
// and Wilson confidence intervals.
//
// Reproducibility contract: every path draws from its own stream derived
// from (master seed, path index), and hit counts are aggregated as
// integers, so estimates are bit-identical for a fixed (spec, trials,
// seed) regardless of the number of worker threads.

#include <cstdint>
#include <string>
#include <vector>

namespace tailbounds {

// Splittable counter-based generator (splitmix64): cheap to seed, one
// independent stream per path.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~static_cast<result_type>(0); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// The stream assigned to one path: avalanche-mixes (seed, path_index) so
/// that neighboring indices start in unrelated states.
SplitMix64 stream_for_path(std::uint64_t seed, std::uint64_t path_index);

enum class LawKind {
  three_point_symmetric,  // P(+-d) = gamma/2, P(0) = 1-gamma
  two_point_mcdiarmid,    // P(+d) = gamma/(1+gamma), P(-gamma*d) = 1/(1+gamma)
  shifted_three_point,    // shift + three_point_symmetric (shift <= 0)
  custom_discrete,        // finite atoms in [-d, d] (or <= d when one_sided)
};

struct IncrementLaw {
  LawKind kind = LawKind::three_point_symmetric;
  double d = 1.0;
  double gamma = 1.0;
  double shift = 0.0;
  std::vector<double> atoms;    // custom_discrete only
  std::vector<double> weights;  // custom_discrete only
  bool one_sided = false;       // custom: allow atoms below -d (jumps bounded above only)

  static IncrementLaw three_point(double gamma, double d);
  static IncrementLaw two_point_mcdiarmid(double gamma, double d);
  static IncrementLaw shifted_three_point(double gamma, double d, double shift);
  static IncrementLaw custom(std::vector<double> atoms, std::vector<double> weights, double d,
                             bool one_sided = false);

  /// Throws ValidationError when the fields are inconsistent.
  void validate() const;

  double mean() const;
  /// E[(U - mean)^2], the per-step quadratic-variation contribution at
  /// unit weight.
  double centered_second_moment() const;
  double sample(SplitMix64& stream) const;
};

enum class WeightRule {
  constant_one,
  deterministic_sequence,
  // A_1 = 1, A_k = 1 if the previous realized increment was > 0 else 0.5:
  // a predictable rule that makes the quadratic variation path-dependent.
  previous_sign_dependent,
};

struct MartingaleSpec {
  IncrementLaw law;
  WeightRule weights = WeightRule::constant_one;
  std::vector<double> weight_sequence;  // deterministic_sequence only
  std::int64_t horizon = 1;

  void validate() const;
  /// Declared bound on |A_k|.
  double weight_bound() const;
};

struct PathStats {
  double final_sum = 0.0;       // S_n
  double running_max = 0.0;     // max_{1<=k<=n} S_k
  double running_max_abs = 0.0; // max_{1<=k<=n} |S_k|
  double running_min = 0.0;     // min_{1<=k<=n} S_k
  std::vector<double> qvar_trace;  // Q_1..Q_n, non-decreasing
};

struct TailEstimate {
  std::int64_t hits = 0;
  std::int64_t trials = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t seed = 0;
  std::string event_descriptor;
};

enum class TailSide { two_sided_max, one_sided_max, one_sided_min };

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// 95% Wilson score interval; well-behaved at hits = 0 and hits = trials.
WilsonInterval wilson_interval(std::int64_t hits, std::int64_t trials);

/// One path of the construction, drawing every increment from `stream`.
PathStats sample_path(const MartingaleSpec& spec, SplitMix64& stream);

/// Monte Carlo estimate of P(running-max event at threshold alpha*n).
/// two_sided_max: max |S_k| >= alpha*n; one_sided_max: max S_k >= alpha*n;
/// one_sided_min: min S_k <= -alpha*n.
TailEstimate estimate_tail(const MartingaleSpec& spec, double alpha, TailSide side,
                           std::int64_t trials, std::uint64_t seed, int workers = 1);

struct FreedmanEstimate {
  TailEstimate estimate;
  // Paths that reached max_horizon with Q still <= r and no hit: their fate
  // is undecided, so a nonzero count flags an unreliable estimate.
  std::int64_t truncated_paths = 0;
};

/// Estimate of P(exists n: S_n >= z and Q_n <= r). A path is a hit as soon
/// as it reaches z while its quadratic variation so far is <= r; once Q
/// exceeds r the path can no longer qualify and sampling stops.
FreedmanEstimate estimate_freedman_event(const MartingaleSpec& spec, double z, double r,
                                         std::int64_t max_horizon, std::int64_t trials,
                                         std::uint64_t seed, int workers = 1);

}  // namespace tailbounds
