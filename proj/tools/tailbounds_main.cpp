// tailbounds CLI: compute closed-form tail bounds, sweep comparison grids,
// run Monte Carlo simulations of the extremal martingale constructions, and
// check the exact finite-n rate against the asymptotic exponent.
//
// Exit codes: 0 ok, 2 validation failure, 3 I/O failure, 4 excessive
// truncation in a Freedman-event simulation, 5 resource guard.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tailbounds/errors.hpp"
#include "tailbounds/exponents.hpp"
#include "tailbounds/generalized.hpp"
#include "tailbounds/oracle.hpp"
#include "tailbounds/report.hpp"
#include "tailbounds/simulate.hpp"

namespace {

using tailbounds::BoundReport;
using tailbounds::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitTruncation = 4;
constexpr int kExitResourceGuard = 5;

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw tailbounds::ValidationError(flag + ": cannot parse '" + item + "' as a number");
    }
  }
  if (values.empty()) throw tailbounds::ValidationError(flag + ": empty list");
  return values;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<std::int64_t> values;
  for (double v : parse_double_list(text, flag)) {
    const auto i = static_cast<std::int64_t>(std::llround(v));
    if (static_cast<double>(i) != v || i < 1) {
      throw tailbounds::ValidationError(flag + ": entries must be positive integers");
    }
    values.push_back(i);
  }
  return values;
}

struct Grid {
  double start = 0.0, stop = 0.0, step = 0.0;
  std::vector<double> points() const {
    std::vector<double> pts;
    const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9));
    for (std::int64_t k = 0; k <= count; ++k) pts.push_back(start + static_cast<double>(k) * step);
    return pts;
  }
};

Grid parse_grid(const std::string& text, const std::string& flag) {
  std::stringstream ss(text);
  std::string part;
  std::vector<double> v;
  while (std::getline(ss, part, ':')) {
    try {
      v.push_back(std::stod(part));
    } catch (const std::exception&) {
      throw tailbounds::ValidationError(flag + ": cannot parse '" + part + "'");
    }
  }
  if (v.size() != 3) throw tailbounds::ValidationError(flag + ": expected start:stop:step");
  if (!(v[2] > 0.0)) throw tailbounds::ValidationError(flag + ": step must be > 0");
  if (v[1] < v[0]) throw tailbounds::ValidationError(flag + ": stop must be >= start");
  return {v[0], v[1], v[2]};
}

// Writes `lines` (newline-free) either to stdout or to --out; returns an
// exit code so an unwritable path maps to 3.
int emit_lines(const std::string& out_path, const std::vector<std::string>& lines) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open '" << out_path << "' for writing\n";
      return kExitIo;
    }
    os = &file;
  }
  for (const auto& line : lines) *os << line << "\n";
  if (!*os) {
    std::cerr << "error: write failed\n";
    return kExitIo;
  }
  return kExitOk;
}

void print_report(const BoundReport& report, const std::string& format) {
  if (format == "csv") {
    std::string header = "theorem";
    std::string row = report.theorem;
    for (const auto& [key, value] : report.inputs.items()) {
      header += "," + key;
      row += "," + tailbounds::csv_quote(value.is_string()
                                             ? value.get<std::string>()
                                             : tailbounds::format_full(value.get<double>()));
    }
    header += ",exponent,bound_raw,bound_clamped";
    row += ",";
    row += report.exponent ? tailbounds::format_full(*report.exponent) : "";
    row += "," + tailbounds::format_full(report.bound_raw);
    row += "," + tailbounds::format_full(report.bound_clamped);
    std::cout << header << "\n" << row << "\n";
  } else {
    std::cout << tailbounds::to_json(report).dump() << "\n";
  }
}

// ---------------------------------------------------------------------------
// compute

struct ComputeArgs {
  int theorem = 0;
  double gamma = 0.0, delta = 0.0, alpha = 0.0, d = 1.0, z = 0.0, r = 0.0;
  std::int64_t n = 1;
  std::string moments;
  std::string format = "json";
  bool has_gamma = false, has_delta = false, has_alpha = false, has_n = false, has_z = false,
       has_r = false, has_d = false, has_moments = false;
};

void require_flag(bool present, const std::string& flag, const std::string& context) {
  if (!present) throw tailbounds::ValidationError(flag + " is required for " + context);
}

int run_compute(const ComputeArgs& a) {
  BoundReport report;
  switch (a.theorem) {
    case 1:
    case 2: {
      const std::string context = a.theorem == 1 ? "--theorem 1" : "--theorem 2";
      require_flag(a.has_gamma, "--gamma", context);
      require_flag(a.has_delta, "--delta", context);
      require_flag(a.has_n, "--n", context);
      const tailbounds::ExponentInput in{a.gamma, a.delta};
      const tailbounds::ExponentValue ev =
          a.theorem == 1 ? tailbounds::exponent_cs(in) : tailbounds::exponent_kl(in);
      const tailbounds::BoundValue bv =
          a.theorem == 1 ? tailbounds::tail_bound_t1(a.n, in) : tailbounds::tail_bound_t2(a.n, in);
      report.theorem = a.theorem == 1 ? "T1" : "T2";
      report.inputs["gamma"] = a.gamma;
      report.inputs["delta"] = a.delta;
      report.inputs["n"] = a.n;
      report.exponent = ev.value;
      report.bound_raw = bv.raw;
      report.bound_clamped = bv.clamped;
      if (ev.optimizer_x) {
        report.metadata.emplace_back("optimizer_x", tailbounds::format_full(*ev.optimizer_x));
      }
      if (a.delta > 1.0) report.metadata.emplace_back("event", "impossible: delta > 1");
      if (a.theorem == 2 && a.delta == 1.0) {
        report.metadata.emplace_back("exponent_branch", "delta=1 left limit ln(1+1/gamma)");
      }
      break;
    }
    case 3: {
      require_flag(a.has_moments, "--moments", "--theorem 3");
      require_flag(a.has_d, "--d", "--theorem 3");
      require_flag(a.has_alpha, "--alpha", "--theorem 3");
      require_flag(a.has_n, "--n", "--theorem 3");
      const auto mu = parse_double_list(a.moments, "--moments");
      const auto profile = tailbounds::MomentProfile::create(a.d, mu);
      const tailbounds::T3Bound t3 = tailbounds::tail_bound_t3(a.n, a.alpha, profile);
      report.theorem = "T3";
      report.inputs["d"] = a.d;
      report.inputs["alpha"] = a.alpha;
      report.inputs["delta"] = a.alpha / a.d;
      report.inputs["n"] = a.n;
      report.inputs["mu"] = a.moments;
      report.exponent =
          t3.per_step_factor > 0.0 ? -std::log(t3.per_step_factor)
                                   : std::numeric_limits<double>::infinity();
      report.bound_raw = t3.bound.raw;
      report.bound_clamped = t3.bound.clamped;
      report.metadata.emplace_back("per_step_factor", tailbounds::format_full(t3.per_step_factor));
      if (t3.x_star) {
        report.metadata.emplace_back("x_star", tailbounds::format_full(*t3.x_star));
      }
      report.metadata.emplace_back("converged", t3.converged ? "true" : "false");
      if (t3.delta_limit_extension) {
        report.metadata.emplace_back("delta_limit_extension",
                                     "delta=1 uses the x->inf limit of the objective");
      }
      break;
    }
    case 4:
    case 5: {
      const std::string context = a.theorem == 4 ? "--theorem 4" : "--theorem 5";
      require_flag(a.has_z, "--z", context);
      require_flag(a.has_r, "--r", context);
      require_flag(a.has_d, "--d", context);
      const tailbounds::FreedmanInput in{a.z, a.r, a.d};
      const auto variant = a.theorem == 4 ? tailbounds::FreedmanVariant::tightened
                                          : tailbounds::FreedmanVariant::classical;
      const double u = a.z * a.d / a.r;
      const double factor =
          a.theorem == 4 ? tailbounds::freedman_c(u) : tailbounds::freedman_b(u);
      const double bound = tailbounds::freedman_bound(in, variant);
      report.theorem = a.theorem == 4 ? "T4" : "T5";
      report.inputs["z"] = a.z;
      report.inputs["r"] = a.r;
      report.inputs["d"] = a.d;
      report.inputs["u"] = u;
      report.exponent = a.z * a.z / (2.0 * a.r) * factor;
      report.bound_raw = bound;
      report.bound_clamped = std::min(1.0, bound);
      report.metadata.emplace_back(a.theorem == 4 ? "C_u" : "B_u",
                                   tailbounds::format_full(factor));
      break;
    }
    default:
      throw tailbounds::ValidationError("--theorem must be one of 1..5");
  }
  print_report(report, a.format);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compare

int run_compare(double gamma, bool has_gamma, const std::string& delta_grid,
                const std::string& u_grid, const std::string& out_path) {
  std::vector<std::string> lines;
  if (!u_grid.empty()) {
    const Grid grid = parse_grid(u_grid, "--u-grid");
    lines.push_back("u,C,B,ratio");
    for (double u : grid.points()) {
      const double c = tailbounds::freedman_c(u);
      const double b = tailbounds::freedman_b(u);
      std::string ratio;
      if (b != 0.0 && std::isfinite(c / b)) ratio = tailbounds::format_full(c / b);
      lines.push_back(tailbounds::format_full(u) + "," + tailbounds::format_full(c) + "," +
                      tailbounds::format_full(b) + "," + ratio);
    }
  } else {
    if (!has_gamma) throw tailbounds::ValidationError("--gamma is required with --delta-grid");
    const Grid grid = parse_grid(delta_grid, "--delta-grid");
    lines.push_back("delta,exponent_cs,exponent_kl,ratio");
    for (double delta : grid.points()) {
      const double cs = tailbounds::exponent_cs({gamma, delta}).value;
      const double kl = tailbounds::exponent_kl({gamma, delta}).value;
      std::string ratio;
      if (kl != 0.0 && std::isfinite(cs / kl)) ratio = tailbounds::format_full(cs / kl);
      lines.push_back(tailbounds::format_full(delta) + "," + tailbounds::format_full(cs) + "," +
                      tailbounds::format_full(kl) + "," + ratio);
    }
  }
  return emit_lines(out_path, lines);
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string construction;
  double gamma = 0.5, d = 1.0, alpha = 0.0, shift = 0.0, z = 0.0, r = 0.0;
  std::int64_t n = 1, trials = 100000, max_horizon = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string side = "two";
  std::string event = "tail";
  bool has_alpha = false, has_z = false, has_r = false, has_max_horizon = false;
};

tailbounds::MartingaleSpec build_spec(const SimulateArgs& a) {
  tailbounds::MartingaleSpec spec;
  if (a.construction == "extremal") {
    spec.law = tailbounds::IncrementLaw::three_point(a.gamma, a.d);
  } else if (a.construction == "mcdiarmid") {
    spec.law = tailbounds::IncrementLaw::two_point_mcdiarmid(a.gamma, a.d);
  } else if (a.construction == "shifted") {
    spec.law = tailbounds::IncrementLaw::shifted_three_point(a.gamma, a.d, a.shift);
  } else if (a.construction == "sign-weights") {
    spec.law = tailbounds::IncrementLaw::three_point(a.gamma, a.d);
    spec.weights = tailbounds::WeightRule::previous_sign_dependent;
  } else {
    throw tailbounds::ValidationError(
        "--construction must be one of extremal|mcdiarmid|shifted|sign-weights");
  }
  spec.horizon = a.n;
  spec.validate();
  return spec;
}

int run_simulate(const SimulateArgs& a) {
  const tailbounds::MartingaleSpec spec = build_spec(a);
  const bool conditionally_symmetric = a.construction != "mcdiarmid";
  BoundReport report;
  report.inputs["construction"] = a.construction;
  report.inputs["gamma"] = a.gamma;
  report.inputs["d"] = a.d;
  report.inputs["n"] = a.n;
  if (a.construction == "shifted") report.inputs["shift"] = a.shift;

  if (a.event == "freedman") {
    require_flag(a.has_z, "--z", "--event freedman");
    require_flag(a.has_r, "--r", "--event freedman");
    require_flag(a.has_max_horizon, "--max-horizon", "--event freedman");
    report.inputs["z"] = a.z;
    report.inputs["r"] = a.r;
    report.inputs["max_horizon"] = a.max_horizon;
    report.inputs["trials"] = a.trials;
    report.inputs["seed"] = a.seed;
    const tailbounds::FreedmanEstimate fe =
        tailbounds::estimate_freedman_event(spec, a.z, a.r, a.max_horizon, a.trials, a.seed,
                                            a.workers);
    const tailbounds::FreedmanInput fin{a.z, a.r, a.d};
    const auto variant = conditionally_symmetric ? tailbounds::FreedmanVariant::tightened
                                                 : tailbounds::FreedmanVariant::classical;
    const double bound = tailbounds::freedman_bound(fin, variant);
    report.theorem = conditionally_symmetric ? "T4" : "T5";
    report.exponent = -std::log(bound);
    report.bound_raw = bound;
    report.bound_clamped = std::min(1.0, bound);
    report.mc_estimate = fe.estimate;
    report.metadata.emplace_back("classical_bound",
                                 tailbounds::format_full(tailbounds::freedman_bound(
                                     fin, tailbounds::FreedmanVariant::classical)));
    report.metadata.emplace_back("ci_low_le_bound",
                                 fe.estimate.ci_low <= report.bound_raw ? "true" : "false");
    report.metadata.emplace_back("truncated_paths", std::to_string(fe.truncated_paths));
    const double truncation_rate =
        static_cast<double>(fe.truncated_paths) / static_cast<double>(a.trials);
    report.metadata.emplace_back("truncation_rate", tailbounds::format_full(truncation_rate));
    print_report(report, "json");
    if (truncation_rate > 1e-3) {
      std::cerr << "warning: " << fe.truncated_paths
                << " paths hit --max-horizon before their quadratic variation passed r; "
                   "the estimate is unreliable\n";
      return kExitTruncation;
    }
    return kExitOk;
  }

  if (a.event != "tail") throw tailbounds::ValidationError("--event must be tail or freedman");
  require_flag(a.has_alpha, "--alpha", "--event tail");
  tailbounds::TailSide side;
  if (a.side == "two") side = tailbounds::TailSide::two_sided_max;
  else if (a.side == "upper") side = tailbounds::TailSide::one_sided_max;
  else if (a.side == "lower") side = tailbounds::TailSide::one_sided_min;
  else throw tailbounds::ValidationError("--side must be two|upper|lower");

  report.inputs["alpha"] = a.alpha;
  report.inputs["side"] = a.side;
  report.inputs["trials"] = a.trials;
  report.inputs["seed"] = a.seed;

  const tailbounds::TailEstimate est =
      tailbounds::estimate_tail(spec, a.alpha, side, a.trials, a.seed, a.workers);

  const double delta = a.alpha / a.d;
  const tailbounds::ExponentInput ein{a.gamma, delta};
  const tailbounds::ExponentValue ev = conditionally_symmetric ? tailbounds::exponent_cs(ein)
                                                               : tailbounds::exponent_kl(ein);
  const double factor = side == tailbounds::TailSide::two_sided_max ? 2.0 : 1.0;
  const double raw =
      std::isinf(ev.value) ? 0.0 : factor * std::exp(-static_cast<double>(a.n) * ev.value);
  report.theorem = conditionally_symmetric ? "T1" : "T2";
  report.exponent = ev.value;
  report.bound_raw = raw;
  report.bound_clamped = std::min(1.0, raw);
  report.mc_estimate = est;
  report.metadata.emplace_back("bound_factor", factor == 2.0 ? "2" : "1");
  report.metadata.emplace_back("ci_low_le_bound", est.ci_low <= raw ? "true" : "false");
  if (a.construction == "shifted" && side != tailbounds::TailSide::one_sided_max) {
    report.metadata.emplace_back(
        "bound_note", "supermartingale guarantee covers the upper tail only; other sides are "
                      "reported without a guarantee");
  }
  print_report(report, "json");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify-optimality

int run_verify_optimality(double gamma, double delta, const std::string& n_list,
                          const std::string& law, const std::string& out_path) {
  const auto ns = parse_int_list(n_list, "--n-list");
  tailbounds::RateLaw which;
  if (law == "symmetric") which = tailbounds::RateLaw::symmetric_three_point;
  else if (law == "mcdiarmid") which = tailbounds::RateLaw::mcdiarmid_two_point;
  else throw tailbounds::ValidationError("--law must be symmetric or mcdiarmid");

  const tailbounds::RateEstimate rates = tailbounds::rate_convergence(gamma, delta, ns, which);
  std::vector<std::string> lines;
  lines.push_back("n,exact_tail,empirical_rate,target_exponent,gap");
  for (std::size_t i = 0; i < rates.n_values.size(); ++i) {
    if (rates.rounded[i]) {
      std::cerr << "note: threshold for n=" << rates.n_values[i]
                << " rounded up to the lattice point " << rates.thresholds[i] << "\n";
    }
    lines.push_back(std::to_string(rates.n_values[i]) + "," +
                    tailbounds::format_full(rates.probabilities[i]) + "," +
                    tailbounds::format_full(rates.empirical_rates[i]) + "," +
                    tailbounds::format_full(rates.target) + "," +
                    tailbounds::format_full(rates.gaps[i]));
  }
  return emit_lines(out_path, lines);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential tail bounds for conditionally symmetric martingales: "
               "closed forms, Monte Carlo verification, and exact oracles"};
  app.require_subcommand(1);

  // compute
  ComputeArgs ca;
  CLI::App* compute = app.add_subcommand("compute", "Compute one bound and print a report");
  compute->add_option("--theorem", ca.theorem, "Which bound: 1|2|3|4|5")->required();
  compute->add_option("--gamma", ca.gamma, "Normalized variance bound in [0,1]")
      ->check(CLI::Range(0.0, 1.0));
  compute->add_option("--delta", ca.delta, "Normalized deviation, >= 0")
      ->check(CLI::NonNegativeNumber);
  compute->add_option("--n", ca.n, "Horizon, >= 1")->check(CLI::PositiveNumber);
  compute->add_option("--moments", ca.moments, "Even moment ceilings mu2,mu4,...");
  compute->add_option("--d", ca.d, "Jump bound, > 0")->check(CLI::PositiveNumber);
  compute->add_option("--alpha", ca.alpha, "Deviation level per step, >= 0")
      ->check(CLI::NonNegativeNumber);
  compute->add_option("--z", ca.z, "Deviation level, > 0")->check(CLI::PositiveNumber);
  compute->add_option("--r", ca.r, "Quadratic-variation cap, > 0")->check(CLI::PositiveNumber);
  compute->add_option("--format", ca.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // compare
  double cmp_gamma = 0.0;
  std::string delta_grid, u_grid, cmp_out;
  CLI::App* compare = app.add_subcommand("compare", "Sweep a grid and emit a comparison CSV");
  CLI::Option* cmp_gamma_opt =
      compare->add_option("--gamma", cmp_gamma, "Normalized variance bound in [0,1]")
          ->check(CLI::Range(0.0, 1.0));
  CLI::Option* dg = compare->add_option("--delta-grid", delta_grid, "start:stop:step over delta");
  CLI::Option* ug = compare->add_option("--u-grid", u_grid, "start:stop:step over u");
  dg->excludes(ug);
  compare->add_option("--out", cmp_out, "Output path (default: stdout)");

  // simulate
  SimulateArgs sa;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of a tail event");
  simulate->add_option("--construction", sa.construction,
                       "extremal|mcdiarmid|shifted|sign-weights")
      ->required();
  simulate->add_option("--gamma", sa.gamma, "Normalized variance bound in (0,1]")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--d", sa.d, "Jump bound, > 0")->check(CLI::PositiveNumber);
  simulate->add_option("--n", sa.n, "Horizon, >= 1")->required()->check(CLI::PositiveNumber);
  CLI::Option* alpha_opt = simulate->add_option("--alpha", sa.alpha, "Deviation level per step")
                               ->check(CLI::NonNegativeNumber);
  simulate->add_option("--side", sa.side, "two|upper|lower")
      ->check(CLI::IsMember({"two", "upper", "lower"}));
  simulate->add_option("--trials", sa.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sa.seed, "Master seed (64-bit)");
  simulate->add_option("--shift", sa.shift, "Mean shift (<= 0), shifted construction only");
  simulate->add_option("--workers", sa.workers, "Worker threads (does not affect the result)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--event", sa.event, "tail|freedman")
      ->check(CLI::IsMember({"tail", "freedman"}));
  CLI::Option* z_opt = simulate->add_option("--z", sa.z, "Freedman deviation level, > 0")
                           ->check(CLI::PositiveNumber);
  CLI::Option* r_opt = simulate->add_option("--r", sa.r, "Freedman quadratic-variation cap, > 0")
                           ->check(CLI::PositiveNumber);
  CLI::Option* mh_opt = simulate->add_option("--max-horizon", sa.max_horizon,
                                             "Freedman simulation horizon")
                            ->check(CLI::PositiveNumber);

  // verify-optimality
  double vo_gamma = 0.5, vo_delta = 0.4;
  std::string vo_nlist, vo_law = "symmetric", vo_out;
  CLI::App* verify = app.add_subcommand(
      "verify-optimality", "Exact finite-n rate versus the asymptotic exponent");
  verify->add_option("--gamma", vo_gamma, "Normalized variance bound in (0,1]")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  verify->add_option("--delta", vo_delta, "Normalized deviation in (0,1)")->required();
  verify->add_option("--n-list", vo_nlist, "Comma-separated horizons")->required();
  verify->add_option("--law", vo_law, "symmetric|mcdiarmid")
      ->check(CLI::IsMember({"symmetric", "mcdiarmid"}));
  verify->add_option("--out", vo_out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (app.got_subcommand(compute)) {
      ca.has_gamma = compute->count("--gamma") > 0;
      ca.has_delta = compute->count("--delta") > 0;
      ca.has_n = compute->count("--n") > 0;
      ca.has_alpha = compute->count("--alpha") > 0;
      ca.has_z = compute->count("--z") > 0;
      ca.has_r = compute->count("--r") > 0;
      ca.has_d = compute->count("--d") > 0;
      ca.has_moments = compute->count("--moments") > 0;
      return run_compute(ca);
    }
    if (app.got_subcommand(compare)) {
      if (dg->count() == 0 && ug->count() == 0) {
        throw tailbounds::ValidationError("one of --delta-grid or --u-grid is required");
      }
      return run_compare(cmp_gamma, cmp_gamma_opt->count() > 0, delta_grid, u_grid, cmp_out);
    }
    if (app.got_subcommand(simulate)) {
      sa.has_alpha = alpha_opt->count() > 0;
      sa.has_z = z_opt->count() > 0;
      sa.has_r = r_opt->count() > 0;
      sa.has_max_horizon = mh_opt->count() > 0;
      return run_simulate(sa);
    }
    if (app.got_subcommand(verify)) {
      return run_verify_optimality(vo_gamma, vo_delta, vo_nlist, vo_law, vo_out);
    }
  } catch (const tailbounds::ResourceGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceGuard;
  } catch (const tailbounds::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
