#include "bessel_br/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bessel_br/brown_resnick.hpp"
#include "bessel_br/errors.hpp"
#include "bessel_br/parallel.hpp"
#include "bessel_br/report.hpp"
#include "bessel_br/rescale.hpp"
#include "bessel_br/stats.hpp"
#include "bessel_br/tails.hpp"

namespace bessel_br::cli {

namespace {

using report::ExperimentReport;
using report::Json;
namespace br = brown_resnick;

// Flags a subcommand may accept. Each subcommand binds its own instance so
// defaults can differ per command.
struct Options {
  std::string process;
  int m = 2;
  int grid_k = paths::kDefaultGridExponent;
  long long n = 0;
  std::vector<long long> ns;
  long long replicates = 0;
  std::vector<double> times;
  double t = 1.0;
  double x = 0.0;
  double s = 0.0;
  double r = 2.0;
  double p = 8.0;
  double epsilon = 1e-4;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  std::string format = "json";
  std::string config;
  bool timings = false;
  std::optional<double> threshold;
};

enum Flag : unsigned {
  kProcess = 1u << 0,
  kM = 1u << 1,
  kGridK = 1u << 2,
  kN = 1u << 3,
  kNs = 1u << 4,
  kReplicates = 1u << 5,
  kTimes = 1u << 6,
  kT = 1u << 7,
  kX = 1u << 8,
  kKk = 1u << 9,  // --s --r --p
  kEpsilon = 1u << 10,
  kSeed = 1u << 11,
  kThreshold = 1u << 12,
};

struct Command {
  std::string name;
  std::string description;
  unsigned flags;
  Options defaults;
  std::function<ExperimentReport(const Options&, std::ostream&)> body;
};

std::string real_token(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json as_real_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json as_int_array(const std::vector<long long>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

std::vector<double> to_reals(const std::vector<long long>& v) {
  return std::vector<double>(v.begin(), v.end());
}

// Experiment-defining options only: execution details (threads, output
// path and format, timing) are left out so reports stay byte-identical.
Json config_echo(const Options& o, unsigned flags) {
  Json c = Json::object();
  if (flags & kProcess) c["process"] = o.process;
  if (flags & kM) c["m"] = o.m;
  if (flags & kGridK) c["grid_k"] = o.grid_k;
  if (flags & kN) c["n"] = o.n;
  if (flags & kNs) c["ns"] = as_int_array(o.ns);
  if (flags & kReplicates) c["replicates"] = o.replicates;
  if (flags & kTimes) c["times"] = as_real_array(o.times);
  if (flags & kT) c["t"] = o.t;
  if (flags & kX) c["x"] = o.x;
  if (flags & kKk) {
    c["s"] = o.s;
    c["r"] = o.r;
    c["p"] = o.p;
  }
  if (flags & kEpsilon) c["epsilon"] = o.epsilon;
  if (flags & kSeed) c["seed"] = o.seed;
  if ((flags & kThreshold) && o.threshold) c["threshold"] = *o.threshold;
  return c;
}

// Inverse of config_echo: command-line tokens reproducing the echoed options.
std::vector<std::string> echo_tokens(const Json& config) {
  std::vector<std::string> tokens;
  for (const auto& [key, value] : config.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    tokens.push_back(flag);
    if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ',';
        joined += item.is_number_float() ? real_token(item.get<double>()) : item.dump();
      }
      tokens.push_back(joined);
    } else if (value.is_string()) {
      tokens.push_back(value.get<std::string>());
    } else if (value.is_number_float()) {
      tokens.push_back(real_token(value.get<double>()));
    } else {
      tokens.push_back(value.dump());
    }
  }
  return tokens;
}

void print_results(const ExperimentReport& rep, std::ostream& out) {
  for (const auto& r : rep.results) {
    out << r.statistic;
    if (!r.label.empty()) out << '[' << r.label << ']';
    out << " = " << real_token(r.value) << '\n';
  }
  out << (rep.pass ? "PASS" : "FAIL") << '\n';
}

std::string n_label(double n) { return "n=" + std::to_string(static_cast<long long>(n)); }

// ---------------------------------------------------------------------------
// Subcommand bodies

ExperimentReport run_constants(const Options& o, std::ostream&) {
  if (o.n < 2) throw DomainError("--n must be >= 2");
  ExperimentReport rep;
  const auto n = static_cast<double>(o.n);
  const auto kind = stats::parse_process(o.process);
  const double tol = o.threshold.value_or(1e-12);
  rep.thresholds["consistency_tol"] = tol;
  rescale::NormingConstants c{};
  std::optional<rescale::NormingConstants> generic;
  if (kind == stats::ProcessKind::bessel) {
    c = rescale::bessel_constants(n, o.m);
    const auto shape = tails::chi_square_tail_shape(o.m);
    generic = rescale::generic_constants(shape.K, shape.c, shape.beta, n);
  } else if (kind == stats::ProcessKind::scalar) {
    c = rescale::scalar_constants(n, o.m);
    const auto shape = tails::scalar_product_tail_shape(o.m);
    generic = rescale::generic_constants(shape.K, shape.c, shape.beta, n);
  } else {
    c = rescale::gaussian_constants(n);
  }
  rep.results.push_back({"a", std::string(rescale::to_string(c.kind)), c.a});
  rep.results.push_back({"b", std::string(rescale::to_string(c.kind)), c.b});
  if (generic) {
    rep.results.push_back({"a", "generic", generic->a});
    rep.results.push_back({"b", "generic", generic->b});
    const double diff = std::max(std::fabs(generic->a - c.a), std::fabs(generic->b - c.b));
    rep.results.push_back({"abs_diff", "generic", diff});
    rep.pass = diff <= tol;
  }
  return rep;
}

ExperimentReport run_tail_check(const Options& o, std::ostream&) {
  if (!(o.x > 0.0)) throw DomainError("--x must be > 0");
  ExperimentReport rep;
  const double tol = o.threshold.value_or(0.05);
  rep.thresholds["ratio_tol"] = tol;
  const auto kind = stats::parse_process(o.process);
  double exact = 0.0;
  double asymptotic = 0.0;
  if (kind == stats::ProcessKind::scalar) {
    const numerics::QuadratureSpec spec{1e-300, 1e-12, 5000};
    exact = tails::product_tail_oracle(o.m, o.x, spec);
    asymptotic = tails::scalar_product_tail_asymptotic(o.m, o.x);
    rep.results.push_back({"tail", "oracle", exact});
    if (o.m == 2) rep.results.push_back({"tail", "laplace", tails::laplace_tail(o.x)});
  } else if (kind == stats::ProcessKind::bessel) {
    exact = tails::chi_square_tail(o.m, o.x);
    asymptotic = tails::chi_square_tail_asymptotic(o.m, o.x);
    rep.results.push_back({"tail", "exact", exact});
  } else {
    throw UsageError("tail-check supports --process scalar|bessel");
  }
  const double ratio = asymptotic / exact;
  rep.results.push_back({"tail", "asymptotic", asymptotic});
  rep.results.push_back({"ratio", "asymptotic/exact", ratio});
  rep.pass = std::fabs(ratio - 1.0) <= tol;
  return rep;
}

ExperimentReport run_kk_check(const Options& o, std::ostream&) {
  ExperimentReport rep;
  const auto kind = stats::parse_process(o.process);
  if (o.ns.empty()) throw UsageError("--ns must not be empty");
  const auto ns = to_reals(o.ns);
  tails::TailFunction tail;
  std::function<double(double)> density;
  rescale::NormingConstants consts{};
  const numerics::QuadratureSpec spec{1e-300, 1e-10, 5000};
  if (kind == stats::ProcessKind::bessel) {
    const int m = o.m;
    tail = {[m](double y) { return tails::chi_square_tail(m, y); }, "chi_square", 0.0};
    density = [m](double y) { return tails::chi_square_density(m, y); };
    consts = rescale::bessel_constants(ns.front(), m);
  } else if (kind == stats::ProcessKind::scalar) {
    const int m = o.m;
    if (m == 2) {
      tail = {tails::laplace_tail, "laplace", 0.0};
      density = [](double y) { return 0.5 * std::exp(-std::fabs(y)); };
    } else {
      tail = {[m, spec](double y) { return tails::product_tail_oracle(m, y, spec); },
              "scalar_product", 0.0};
      density = [m, spec](double y) { return tails::product_density_oracle(m, y, spec); };
    }
    consts = rescale::scalar_constants(ns.front(), m);
  } else {
    throw UsageError("kk-check supports --process bessel|scalar");
  }
  const auto intensity = tails::check_gumbel_intensity(tail, consts, o.s, ns);
  const auto kk = tails::check_condition_kk(density, consts, o.r, o.p, ns, spec);
  for (std::size_t i = 0; i < ns.size(); ++i)
    rep.results.push_back({"gumbel_intensity", n_label(ns[i]), intensity[i]});
  for (std::size_t i = 0; i < ns.size(); ++i)
    rep.results.push_back({"condition_kk", n_label(ns[i]), kk[i]});

  const double factor = o.threshold.value_or(2.0);
  rep.thresholds["kk_bound_factor"] = factor;
  const double target = std::exp(-o.s);
  rep.results.push_back({"intensity_target", "exp(-s)", target});
  const bool bounded = std::all_of(kk.begin(), kk.end(),
                                   [&](double v) { return v <= factor * kk.front(); });
  const bool converging =
      std::fabs(intensity.back() - target) <= std::fabs(intensity.front() - target) + 1e-12;
  rep.pass = bounded && converging;
  return rep;
}

ExperimentReport run_marginal_sweep(const Options& o, std::ostream&) {
  ExperimentReport rep;
  if (o.replicates < 1) throw UsageError("--replicates must be >= 1");
  const double threshold = o.threshold.value_or(0.10);
  rep.thresholds["final_ks_max"] = threshold;
  const auto ns = to_reals(o.ns);
  const auto sweep = stats::marginal_gumbel_sweep(
      stats::parse_process(o.process), o.m, o.t, ns, static_cast<std::size_t>(o.replicates),
      {o.seed, 0, 0}, o.threads);
  for (const auto& r : sweep.records) rep.results.push_back({r.statistic, n_label(r.n), r.value});
  rep.results.push_back({"strictly_decreasing", "", sweep.strictly_decreasing ? 1.0 : 0.0});
  rep.pass = sweep.strictly_decreasing && sweep.final_value <= threshold;
  return rep;
}

ExperimentReport run_fdd_check(const Options& o, std::ostream&) {
  ExperimentReport rep;
  if (o.times.size() != 2) throw UsageError("--times expects two values s,t");
  if (o.replicates < 1) throw UsageError("--replicates must be >= 1");
  const double s = o.times[0];
  const double t = o.times[1];
  const auto replicates = static_cast<std::size_t>(o.replicates);
  const numerics::StreamKey key{o.seed, 0, 0};
  double diff = 0.0;
  double threshold = 0.0;
  if (o.process == "br") {
    threshold = o.threshold.value_or(0.03);
    diff = stats::br_fdd_check(s, t, {o.epsilon, 10000}, replicates, key, o.threads);
  } else {
    threshold = o.threshold.value_or(0.05);
    if (o.n < 2) throw DomainError("--n must be >= 2");
    diff = stats::fdd_check(stats::parse_process(o.process), o.m, s, t,
                            static_cast<double>(o.n), replicates, key, o.threads);
  }
  rep.thresholds["max_cdf_diff"] = threshold;
  rep.results.push_back({"hr_lambda", "", br::hr_lambda(s, t).lambda});
  rep.results.push_back({"max_cdf_diff", "levels={-1;0;1}^2", diff});
  rep.pass = diff <= threshold;
  return rep;
}

ExperimentReport run_br_sample(const Options& o, std::ostream&) {
  ExperimentReport rep;
  if (o.replicates < 1) throw UsageError("--replicates must be >= 1");
  const auto grid = paths::make_dyadic_grid(o.grid_k);
  const br::BRTruncationSpec spec{o.epsilon, 10000};
  const auto count = static_cast<std::size_t>(o.replicates);
  std::vector<std::vector<double>> values(count);
  std::vector<std::size_t> used(count);
  parallel_for(count, o.threads, [&](std::size_t r) {
    br::BRSampleInfo info;
    const auto path = br::sample_br(grid, spec, {o.seed, r, 0}, &info);
    values[r].assign(path.values().begin(), path.values().end());
    used[r] = info.points_used;
  });
  for (std::size_t r = 0; r < count; ++r) {
    rep.results.push_back({"points_used", "r=" + std::to_string(r), static_cast<double>(used[r])});
    for (std::size_t j = 0; j < grid.size(); ++j) {
      rep.results.push_back(
          {"value", "r=" + std::to_string(r) + " t=" + real_token(grid[j]), values[r][j]});
    }
  }
  return rep;
}

ExperimentReport run_br_selftest(const Options& o, std::ostream&) {
  ExperimentReport rep;
  if (o.replicates < 1) throw UsageError("--replicates must be >= 1");
  const double marginal_max = o.threshold.value_or(0.026);
  const double two_sample_max = 0.033;
  rep.thresholds["marginal_ks_max"] = marginal_max;
  rep.thresholds["two_sample_ks_max"] = two_sample_max;
  const auto result = stats::br_selftest(o.grid_k, static_cast<std::size_t>(o.replicates),
                                         o.epsilon, {o.seed, 0, 0}, o.threads);
  bool pass = true;
  for (const auto& [t, ks] : result.marginal_ks) {
    rep.results.push_back({"marginal_ks", "t=" + real_token(t), ks});
    pass = pass && ks <= marginal_max;
  }
  rep.results.push_back({"stationarity_ks", "t=0 vs t=1", result.stationarity_ks});
  rep.results.push_back({"epsilon_ks", "1e-3 vs 1e-6", result.epsilon_ks});
  rep.pass = pass && result.stationarity_ks <= two_sample_max &&
             result.epsilon_ks <= two_sample_max;
  return rep;
}

std::vector<Command> commands() {
  std::vector<Command> list;
  Options d;

  d = {};
  d.process = "bessel";
  list.push_back({"constants", "Norming constants a_n, b_n and their generic-form cross-check",
                  kProcess | kM | kN | kThreshold, d, run_constants});

  d = {};
  d.process = "scalar";
  list.push_back({"tail-check", "Exact tail vs its asymptotic formula at one point",
                  kProcess | kM | kX | kThreshold, d, run_tail_check});

  d = {};
  d.process = "bessel";
  d.ns = {1000, 10000, 100000};
  list.push_back({"kk-check", "Gumbel intensity and integrability-condition sequences over n",
                  kProcess | kM | kNs | kKk | kThreshold, d, run_kk_check});

  d = {};
  d.process = "bessel";
  d.ns = {100, 1000, 10000};
  d.replicates = 2000;
  list.push_back({"marginal-sweep", "KS distance of normalized maxima to Gumbel across n",
                  kProcess | kM | kT | kNs | kReplicates | kSeed | kThreshold, d,
                  run_marginal_sweep});

  d = {};
  d.process = "bessel";
  d.n = 10000;
  d.replicates = 2000;
  d.times = {0.0, 1.0};
  list.push_back({"fdd-check", "Bivariate maxima of local processes vs Hüsler-Reiss",
                  kProcess | kM | kN | kReplicates | kTimes | kEpsilon | kSeed | kThreshold, d,
                  run_fdd_check});

  d = {};
  d.replicates = 1;
  list.push_back({"br-sample", "Sample Brown-Resnick paths on a dyadic grid",
                  kGridK | kReplicates | kEpsilon | kSeed, d, run_br_sample});

  d = {};
  d.replicates = 5000;
  list.push_back({"br-selftest", "Marginal, stationarity and truncation checks of the simulator",
                  kGridK | kReplicates | kEpsilon | kSeed | kThreshold, d, run_br_selftest});
  return list;
}

void bind_options(CLI::App& sub, Options& o, unsigned flags) {
  auto last = CLI::MultiOptionPolicy::TakeLast;
  if (flags & kProcess)
    sub.add_option("--process", o.process, "bessel|scalar|bm (fdd-check also: br)")
        ->capture_default_str()->multi_option_policy(last);
  if (flags & kM)
    sub.add_option("--m", o.m, "process dimension")->capture_default_str()->multi_option_policy(last);
  if (flags & kGridK)
    sub.add_option("--grid-k", o.grid_k, "dyadic grid exponent (2^k + 1 points)")
        ->capture_default_str()->multi_option_policy(last);
  if (flags & kN) sub.add_option("--n", o.n, "sample count n")->capture_default_str()->multi_option_policy(last);
  if (flags & kNs)
    sub.add_option("--ns", o.ns, "comma-separated increasing n values")
        ->delimiter(',')->capture_default_str()->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  if (flags & kReplicates)
    sub.add_option("--replicates", o.replicates, "Monte Carlo replicates")
        ->capture_default_str()->multi_option_policy(last);
  if (flags & kTimes)
    sub.add_option("--times", o.times, "two times s,t in [0,1]")->delimiter(',')
        ->capture_default_str()->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  if (flags & kT) sub.add_option("--t", o.t, "evaluation time t > 0")->capture_default_str()->multi_option_policy(last);
  if (flags & kX) sub.add_option("--x", o.x, "tail argument x > 0")->required()->multi_option_policy(last);
  if (flags & kKk) {
    sub.add_option("--s", o.s, "Gumbel level s")->capture_default_str()->multi_option_policy(last);
    sub.add_option("--r", o.r, "truncation r > 0")->capture_default_str()->multi_option_policy(last);
    sub.add_option("--p", o.p, "Gaussian weight p > 0")->capture_default_str()->multi_option_policy(last);
  }
  if (flags & kEpsilon)
    sub.add_option("--epsilon", o.epsilon, "Brown-Resnick truncation budget")
        ->capture_default_str()->multi_option_policy(last);
  if (flags & kSeed) sub.add_option("--seed", o.seed, "master seed (u64)")->required()->multi_option_policy(last);
  if (flags & kThreshold)
    sub.add_option("--threshold", o.threshold, "override the pass/fail threshold")->multi_option_policy(last);
  sub.add_option("--threads", o.threads, "worker threads")->capture_default_str();
  sub.add_option("--out", o.out, "report path (written atomically)");
  sub.add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub.add_option("--config", o.config, "replay the config echo of a report (or a bare config)");
  sub.add_flag("--timings", o.timings, "include wall-clock timings in the report");
}

// Pulls --config out of the arguments and expands it into option tokens
// placed right after the subcommand, so explicit flags still take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path || rest.empty()) return args;
  std::ifstream file(*path);
  if (!file) throw UsageError("cannot read config " + *path);
  Json loaded = Json::parse(file);
  Json config = loaded.contains("config") ? loaded["config"] : loaded;
  if (loaded.contains("command") && loaded["command"].get<std::string>() != rest.front())
    throw UsageError("config was recorded for '" + loaded["command"].get<std::string>() + "'");
  std::vector<std::string> expanded = {rest.front()};
  for (auto& tok : echo_tokens(config)) expanded.push_back(std::move(tok));
  expanded.insert(expanded.end(), rest.begin() + 1, rest.end());
  return expanded;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremes of squared Bessel and Brownian scalar-product processes", "bessel-br"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::tool_version());

  auto list = commands();
  std::vector<Options> bound(list.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < list.size(); ++i) {
    bound[i] = list[i].defaults;
    auto* sub = app.add_subcommand(list[i].name, list[i].description);
    bind_options(*sub, bound[i], list[i].flags);
    subs.push_back(sub);
  }

  try {
    auto args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << report::tool_version() << '\n';
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    const Options& o = bound[i];
    try {
      const auto start = std::chrono::steady_clock::now();
      ExperimentReport rep = list[i].body(o, out);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      rep.command = list[i].name;
      rep.config = config_echo(o, list[i].flags);
      if (o.timings) rep.wall_seconds = elapsed.count();
      print_results(rep, out);
      if (!o.out.empty()) {
        const std::string body =
            o.format == "csv" ? report::to_csv(rep) : report::dump_json(report::to_json(rep));
        report::write_atomic(o.out, body);
      }
      return rep.pass ? kExitPass : kExitFail;
    } catch (const DomainError& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const UsageError& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitFail;
    }
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace bessel_br::cli
