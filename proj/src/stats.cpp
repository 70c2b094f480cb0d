#include "bessel_br/stats.hpp"

#include <algorithm>
#include <cmath>

#include "bessel_br/errors.hpp"
#include "bessel_br/parallel.hpp"
#include "bessel_br/rescale.hpp"
#include "bessel_br/special.hpp"

namespace bessel_br::stats {

namespace br = brown_resnick;
using numerics::RandomStream;

EmpiricalSample::EmpiricalSample(std::vector<double> values, bool sorted)
    : values_(std::move(values)), sorted_(sorted) {
  for (double v : values_)
    if (!std::isfinite(v)) throw UsageError("EmpiricalSample values must be finite");
  if (sorted_ && !std::is_sorted(values_.begin(), values_.end()))
    throw UsageError("EmpiricalSample flagged sorted but is not");
}

EmpiricalSample EmpiricalSample::sorted() const {
  if (sorted_) return *this;
  std::vector<double> copy = values_;
  std::sort(copy.begin(), copy.end());
  return EmpiricalSample(std::move(copy), true);
}

double ks_statistic(const EmpiricalSample& sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw UsageError("ks_statistic: empty sample");
  const auto s = sample.sorted();
  const auto& v = s.values();
  const double size = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = cdf(v[i]);
    d = std::max({d, (i + 1) / size - f, f - i / size});
  }
  return d;
}

double two_sample_ks(const EmpiricalSample& a, const EmpiricalSample& b) {
  if (a.empty() || b.empty()) throw UsageError("two_sample_ks: empty sample");
  const auto sa = a.sorted();
  const auto sb = b.sorted();
  const auto& x = sa.values();
  const auto& y = sb.values();
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double next = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == next) ++i;
    while (j < y.size() && y[j] == next) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  return d;
}

double bivariate_cdf_diff(std::span<const Pair> pairs,
                          const std::function<double(double, double)>& model,
                          std::span<const Pair> grid) {
  if (pairs.empty()) throw UsageError("bivariate_cdf_diff: no pairs");
  if (grid.empty()) throw UsageError("bivariate_cdf_diff: empty level grid");
  const double size = static_cast<double>(pairs.size());
  double d = 0.0;
  for (const auto& [x, y] : grid) {
    std::size_t count = 0;
    for (const auto& [u, v] : pairs)
      if (u <= x && v <= y) ++count;
    d = std::max(d, std::fabs(count / size - model(x, y)));
  }
  return d;
}

std::vector<Pair> default_fdd_levels() {
  std::vector<Pair> levels;
  for (double x : {-1.0, 0.0, 1.0})
    for (double y : {-1.0, 0.0, 1.0}) levels.emplace_back(x, y);
  return levels;
}

std::string_view to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::bessel: return "bessel";
    case ProcessKind::scalar: return "scalar";
    case ProcessKind::bm: return "bm";
  }
  return "unknown";
}

ProcessKind parse_process(std::string_view name) {
  if (name == "bessel") return ProcessKind::bessel;
  if (name == "scalar") return ProcessKind::scalar;
  if (name == "bm") return ProcessKind::bm;
  throw UsageError("unknown process '" + std::string(name) + "' (expected bessel|scalar|bm)");
}

namespace {

rescale::NormingConstants sweep_constants(ProcessKind process, int m, double n) {
  switch (process) {
    case ProcessKind::bessel: return rescale::bessel_constants(n, m);
    case ProcessKind::scalar: return rescale::scalar_constants(n, m);
    case ProcessKind::bm: return rescale::gaussian_constants(n);
  }
  throw UsageError("unknown process");
}

// Upper quantile of the time-1 marginal: the x with P(Y > x) = q.
double marginal_upper_quantile(ProcessKind process, int m, double q) {
  switch (process) {
    case ProcessKind::bessel: return 2.0 * numerics::reg_gamma_upper_inverse(0.5 * m, q);
    case ProcessKind::scalar:
      return q <= 0.5 ? -std::log(2.0 * q) : std::log(2.0 * (1.0 - q));
    case ProcessKind::bm: return numerics::std_normal_upper_quantile(q);
  }
  throw UsageError("unknown process");
}

double normalize(ProcessKind process, const rescale::NormingConstants& c, double value_at_one,
                 double t) {
  // The time-t marginal is t Y (bessel, scalar) or sqrt(t) Y (bm) with Y the time-1 law.
  if (process == ProcessKind::bm) {
    const double at_t = std::sqrt(t) * value_at_one;
    return (at_t / std::sqrt(t) - c.b) / c.a;
  }
  const double at_t = t * value_at_one;
  return (at_t - c.b * t) / (c.a * t);
}

void check_levels(std::span<const double> ns) {
  if (ns.empty()) throw UsageError("sweep needs at least one n");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(ns[i] >= 2.0) || ns[i] != std::floor(ns[i])) throw DomainError("sweep n must be an integer >= 2");
    if (i > 0 && !(ns[i] > ns[i - 1])) throw UsageError("sweep ns must be strictly increasing");
  }
}

std::vector<double> fdd_grid(double s, double t) {
  std::vector<double> pts = {0.0, s, t, 1.0};
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

SweepReport marginal_gumbel_sweep(ProcessKind process, int m, double t,
                                  std::span<const double> ns, std::size_t replicates,
                                  const StreamKey& key, unsigned threads) {
  if (!(t > 0.0)) throw DomainError("marginal_gumbel_sweep: t must be > 0");
  if (m < 1) throw DomainError("marginal_gumbel_sweep: m must be >= 1");
  if (replicates < 1) throw UsageError("marginal_gumbel_sweep: replicates must be >= 1");
  check_levels(ns);

  std::vector<rescale::NormingConstants> consts;
  for (double n : ns) consts.push_back(sweep_constants(process, m, n));

  // normalized[level][replicate]
  std::vector<std::vector<double>> normalized(ns.size(), std::vector<double>(replicates));
  const bool brute = process == ProcessKind::scalar && m != 2;

  parallel_for(replicates, threads, [&](std::size_t r) {
    const StreamKey rep = key.with_replicate(key.replicate_index + r);
    if (!brute) {
      const double u = RandomStream(rep).uniform();
      const double log_u = std::log(u);
      for (std::size_t l = 0; l < ns.size(); ++l) {
        const double q = -std::expm1(log_u / ns[l]);
        const double y = marginal_upper_quantile(process, m, q);
        normalized[l][r] = normalize(process, consts[l], y, t);
      }
      return;
    }
    RandomStream stream(rep);
    double running = -std::numeric_limits<double>::infinity();
    std::size_t drawn = 0;
    for (std::size_t l = 0; l < ns.size(); ++l) {
      const auto target = static_cast<std::size_t>(ns[l]);
      for (; drawn < target; ++drawn) {
        double sum = 0.0;
        for (int j = 0; j < m; ++j) sum += stream.normal() * stream.normal();
        running = std::max(running, sum);
      }
      normalized[l][r] = normalize(process, consts[l], running, t);
    }
  });

  SweepReport report;
  for (std::size_t l = 0; l < ns.size(); ++l) {
    const double ks = ks_statistic(EmpiricalSample(std::move(normalized[l])), br::gumbel_cdf);
    report.records.push_back({ns[l], replicates, "ks_gumbel", ks});
  }
  report.strictly_decreasing = true;
  for (std::size_t l = 1; l < report.records.size(); ++l)
    if (!(report.records[l].value < report.records[l - 1].value)) report.strictly_decreasing = false;
  report.final_value = report.records.back().value;
  return report;
}

std::vector<Pair> local_max_pairs(ProcessKind process, int m, double s, double t, double n,
                                  std::size_t replicates, const StreamKey& key,
                                  unsigned threads) {
  if (process == ProcessKind::bm) throw UsageError("fdd check supports bessel|scalar");
  if (s == t) throw UsageError("fdd check needs two distinct times");
  if (!(n >= 2.0)) throw DomainError("fdd check needs n >= 2");
  if (replicates < 1) throw UsageError("fdd check needs replicates >= 1");
  const double b = process == ProcessKind::bessel ? rescale::bessel_constants(n, m).b
                                                  : rescale::scalar_constants(n, m).b;
  const paths::TimeGrid grid(fdd_grid(s, t));
  const std::size_t is = grid.index_of(s);
  const std::size_t it = grid.index_of(t);
  const auto count = static_cast<std::size_t>(n);
  const auto stride = static_cast<std::uint64_t>(2 * m);

  std::vector<Pair> pairs(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    std::vector<double> values(grid.size());
    double max_s = -std::numeric_limits<double>::infinity();
    double max_t = max_s;
    const StreamKey rep = key.with_replicate(key.replicate_index + r);
    for (std::size_t i = 0; i < count; ++i) {
      const StreamKey k = rep.with_substream(i * stride);
      if (process == ProcessKind::bessel)
        rescale::local_bessel_into(grid.points(), b, m, k, values);
      else
        rescale::local_scalar_into(grid.points(), b, m, k, values);
      max_s = std::max(max_s, values[is]);
      max_t = std::max(max_t, values[it]);
    }
    pairs[r] = {max_s, max_t};
  });
  return pairs;
}

double fdd_check(ProcessKind process, int m, double s, double t, double n,
                 std::size_t replicates, const StreamKey& key, unsigned threads,
                 std::span<const Pair> levels) {
  const auto pairs = local_max_pairs(process, m, s, t, n, replicates, key, threads);
  const auto lam = br::hr_lambda(s, t);
  const auto fallback = default_fdd_levels();
  return bivariate_cdf_diff(
      pairs, [lam](double x, double y) { return br::hr_bivariate_cdf(x, y, lam); },
      levels.empty() ? std::span<const Pair>(fallback) : levels);
}

std::vector<Pair> br_pairs(double s, double t, const br::BRTruncationSpec& spec,
                           std::size_t replicates, const StreamKey& key, unsigned threads) {
  if (s == t) throw UsageError("fdd check needs two distinct times");
  const paths::TimeGrid grid(fdd_grid(s, t));
  const std::size_t indices[] = {grid.index_of(s), grid.index_of(t)};
  const auto cols = br_marginals(grid, spec, replicates, key, indices, threads);
  std::vector<Pair> pairs(replicates);
  for (std::size_t r = 0; r < replicates; ++r) pairs[r] = {cols[0][r], cols[1][r]};
  return pairs;
}

double br_fdd_check(double s, double t, const br::BRTruncationSpec& spec, std::size_t replicates,
                    const StreamKey& key, unsigned threads, std::span<const Pair> levels) {
  const auto pairs = br_pairs(s, t, spec, replicates, key, threads);
  const auto lam = br::hr_lambda(s, t);
  const auto fallback = default_fdd_levels();
  return bivariate_cdf_diff(
      pairs, [lam](double x, double y) { return br::hr_bivariate_cdf(x, y, lam); },
      levels.empty() ? std::span<const Pair>(fallback) : levels);
}

std::vector<std::vector<double>> br_marginals(const paths::TimeGrid& grid,
                                              const br::BRTruncationSpec& spec,
                                              std::size_t replicates, const StreamKey& key,
                                              std::span<const std::size_t> at, unsigned threads) {
  if (replicates < 1) throw UsageError("replicates must be >= 1");
  std::vector<std::vector<double>> out(at.size(), std::vector<double>(replicates));
  parallel_for(replicates, threads, [&](std::size_t r) {
    const auto path = br::sample_br(grid, spec, key.with_replicate(key.replicate_index + r));
    for (std::size_t c = 0; c < at.size(); ++c) out[c][r] = path[at[c]];
  });
  return out;
}

BRSelfTest br_selftest(int grid_k, std::size_t replicates, double epsilon, const StreamKey& key,
                       unsigned threads) {
  const auto grid = paths::make_dyadic_grid(grid_k);
  const std::size_t last = grid.size() - 1;
  const std::size_t indices[] = {0, last / 2, last};
  const br::BRTruncationSpec main_spec{epsilon, 10000};
  const auto main = br_marginals(grid, main_spec, replicates, key, indices, threads);

  BRSelfTest result;
  for (std::size_t c = 0; c < 3; ++c) {
    const double ks = ks_statistic(EmpiricalSample(main[c]), br::gumbel_cdf);
    result.marginal_ks.emplace_back(grid[indices[c]], ks);
  }
  result.stationarity_ks = two_sample_ks(EmpiricalSample(main[0]), EmpiricalSample(main[2]));

  const std::size_t end_only[] = {last};
  const auto coarse = br_marginals(grid, {1e-3, 10000}, replicates,
                                   key.with_replicate(key.replicate_index + (1ULL << 32)),
                                   end_only, threads);
  const auto fine = br_marginals(grid, {1e-6, 10000}, replicates,
                                 key.with_replicate(key.replicate_index + (1ULL << 33)),
                                 end_only, threads);
  result.epsilon_ks = two_sample_ks(EmpiricalSample(coarse[0]), EmpiricalSample(fine[0]));
  return result;
}

double decomposition_ks(ProcessKind process, int m, double n, double t, std::size_t replicates,
                        const StreamKey& key, unsigned threads) {
  if (process == ProcessKind::bm) throw UsageError("decomposition check supports bessel|scalar");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("decomposition check needs t in [0, 1]");
  const paths::TimeGrid grid(fdd_grid(0.0, t));
  const std::size_t it = grid.index_of(t);
  std::vector<double> direct(replicates);
  std::vector<double> pieces(replicates);
  const StreamKey other = key.with_replicate(key.replicate_index + (1ULL << 32));
  parallel_for(replicates, threads, [&](std::size_t r) {
    const StreamKey k1 = key.with_replicate(key.replicate_index + r);
    const StreamKey k2 = other.with_replicate(other.replicate_index + r);
    if (process == ProcessKind::bessel) {
      direct[r] = rescale::sample_local_bessel(grid, n, m, k1)[it];
      pieces[r] = rescale::sample_local_bessel_decomposed(grid, n, m, k2)[it];
    } else {
      direct[r] = rescale::sample_local_scalar(grid, n, m, k1)[it];
      pieces[r] = rescale::sample_local_scalar_decomposed(grid, n, m, k2)[it];
    }
  });
  return two_sample_ks(EmpiricalSample(std::move(direct)), EmpiricalSample(std::move(pieces)));
}

}  // namespace bessel_br::stats
