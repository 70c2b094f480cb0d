#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bessel_br/brown_resnick.hpp"
#include "bessel_br/rng.hpp"

namespace bessel_br::stats {

using numerics::StreamKey;

/// Finite sample values, optionally known to be sorted ascending.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(std::vector<double> values, bool sorted = false);

  const std::vector<double>& values() const { return values_; }
  bool is_sorted() const { return sorted_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  /// Sorted copy (or *this when already sorted).
  EmpiricalSample sorted() const;

 private:
  std::vector<double> values_;
  bool sorted_;
};

/// sup_x |F_N(x) - F(x)|, checked on both sides of every jump.
double ks_statistic(const EmpiricalSample& sample, const std::function<double(double)>& cdf);

/// sup_x |F_a(x) - F_b(x)|.
double two_sample_ks(const EmpiricalSample& a, const EmpiricalSample& b);

using Pair = std::pair<double, double>;

/// max over (x, y) in grid of |#{i : u_i <= x, v_i <= y}/N - model(x, y)|.
double bivariate_cdf_diff(std::span<const Pair> pairs,
                          const std::function<double(double, double)>& model,
                          std::span<const Pair> grid);

/// {-1, 0, 1} x {-1, 0, 1}.
std::vector<Pair> default_fdd_levels();

enum class ProcessKind { bessel, scalar, bm };
std::string_view to_string(ProcessKind kind);
/// Throws UsageError for unknown names.
ProcessKind parse_process(std::string_view name);

struct SweepRecord {
  double n;
  std::size_t replicates;
  std::string statistic;
  double value;
};

struct SweepReport {
  std::vector<SweepRecord> records;
  bool strictly_decreasing = false;
  double final_value = 0.0;
};

/// Replicates of (M_n(t) - b_n t) / (a_n t) (bm: (M_n(t)/sqrt(t) - b_n) / a_n)
/// for every n in ns, each scored by its KS distance to the Gumbel law.
///
/// Each replicate draws one uniform U and sets M_n = F^{-1}(U^{1/n}) for
/// every n, so all sweep levels share their randomness and the trend across
/// n is not masked by independent sampling noise. F is the exact time-t
/// marginal (t chi2_m, standard Laplace scaled by t, N(0, t)). For scalar
/// products with m != 2, where F has no closed-form inverse, replicates
/// take the running maximum over one stream of m-term product sums instead,
/// which couples the levels in the same way.
SweepReport marginal_gumbel_sweep(ProcessKind process, int m, double t,
                                  std::span<const double> ns, std::size_t replicates,
                                  const StreamKey& key, unsigned threads = 1);

/// Pairs (max_i local_i(s), max_i local_i(t)) over `replicates` maxima of n
/// local processes. Process i of replicate r draws from
/// key.with_replicate(r).with_substream(i * 2m).
std::vector<Pair> local_max_pairs(ProcessKind process, int m, double s, double t, double n,
                                  std::size_t replicates, const StreamKey& key,
                                  unsigned threads = 1);

/// bivariate_cdf_diff of local_max_pairs against the Hüsler-Reiss model
/// with lambda = hr_lambda(s, t) on `levels` (default {-1,0,1}^2).
double fdd_check(ProcessKind process, int m, double s, double t, double n,
                 std::size_t replicates, const StreamKey& key, unsigned threads = 1,
                 std::span<const Pair> levels = {});

/// Pairs (M(s), M(t)) from sample_br on the grid {0, s, t, 1}.
std::vector<Pair> br_pairs(double s, double t, const brown_resnick::BRTruncationSpec& spec,
                           std::size_t replicates, const StreamKey& key, unsigned threads = 1);

/// The fdd harness applied to the limit process itself.
double br_fdd_check(double s, double t, const brown_resnick::BRTruncationSpec& spec,
                    std::size_t replicates, const StreamKey& key, unsigned threads = 1,
                    std::span<const Pair> levels = {});

/// Values of sample_br at the grid indices `at`, laid out [index][replicate].
std::vector<std::vector<double>> br_marginals(const paths::TimeGrid& grid,
                                              const brown_resnick::BRTruncationSpec& spec,
                                              std::size_t replicates, const StreamKey& key,
                                              std::span<const std::size_t> at,
                                              unsigned threads = 1);

struct BRSelfTest {
  std::vector<std::pair<double, double>> marginal_ks;  // (t, KS vs Gumbel)
  double stationarity_ks = 0.0;                        // M(0) vs M(1)
  double epsilon_ks = 0.0;                             // eps 1e-3 vs 1e-6 at t = 1
};

/// Marginal, stationarity and truncation-insensitivity checks of sample_br.
/// The two truncation samples use replicate indices offset by 2^32 and 2^33.
BRSelfTest br_selftest(int grid_k, std::size_t replicates, double epsilon, const StreamKey& key,
                       unsigned threads = 1);

/// Two-sample KS between the directly simulated local process at time t and
/// its decomposition X + R - t/2 + delta (independent keys, replicate
/// offset 2^32 for the decomposition).
double decomposition_ks(ProcessKind process, int m, double n, double t, std::size_t replicates,
                        const StreamKey& key, unsigned threads = 1);

}  // namespace bessel_br::stats
