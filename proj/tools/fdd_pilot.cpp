// Repeats the bivariate fdd check over several seeds and reports the spread
// of the max CDF difference, to size replicate counts and thresholds.
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bessel_br/stats.hpp"

namespace {

struct Summary {
  double mean = 0.0, sd = 0.0, max = 0.0;
};

Summary summarize(const std::vector<double>& v) {
  Summary s;
  for (double x : v) {
    s.mean += x;
    s.max = std::max(s.max, x);
  }
  s.mean /= static_cast<double>(v.size());
  for (double x : v) s.sd += (x - s.mean) * (x - s.mean);
  s.sd = v.size() > 1 ? std::sqrt(s.sd / static_cast<double>(v.size() - 1)) : 0.0;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seed-spread pilot for the fdd check", "bessel-br-pilot"};
  int m = 2;
  double n = 1e4;
  std::size_t replicates = 2000;
  std::size_t br_replicates = 10000;
  int seeds = 5;
  std::uint64_t base_seed = 1;
  unsigned threads = 1;
  app.add_option("--m", m)->capture_default_str();
  app.add_option("--n", n)->capture_default_str();
  app.add_option("--replicates", replicates)->capture_default_str();
  app.add_option("--br-replicates", br_replicates)->capture_default_str();
  app.add_option("--seeds", seeds)->capture_default_str();
  app.add_option("--seed", base_seed)->capture_default_str();
  app.add_option("--threads", threads)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const char* names[] = {"bessel", "scalar", "br"};
  for (const char* name : names) {
    std::vector<double> diffs;
    for (int i = 0; i < seeds; ++i) {
      const bessel_br::stats::StreamKey key{base_seed + static_cast<std::uint64_t>(i), 0, 0};
      if (std::string(name) == "br") {
        diffs.push_back(bessel_br::stats::br_fdd_check(0.0, 1.0, {1e-4, 10000}, br_replicates, key,
                                                       threads));
      } else {
        diffs.push_back(bessel_br::stats::fdd_check(bessel_br::stats::parse_process(name), m, 0.0,
                                                    1.0, n, replicates, key, threads));
      }
    }
    const auto s = summarize(diffs);
    std::printf("%-7s mean %.4f  sd %.4f  max %.4f\n", name, s.mean, s.sd, s.max);
  }
  return 0;
}
