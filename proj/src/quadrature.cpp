#include "bessel_br/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bessel_br/errors.hpp"

namespace bessel_br::numerics {

namespace {

// Kronrod 21-point rule in QUADPACK order: abscissae descending from the
// outermost node, center last; odd indices are the embedded Gauss nodes.
struct Gk21Rule {
  std::array<double, 11> xgk;
  std::array<double, 11> wgk;
  std::array<double, 5> wg;
};

const Gk21Rule& gk21_rule() {
  static const Gk21Rule rule = [] {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    Gk21Rule r{};
    for (std::size_t i = 0; i < 11; ++i) {
      r.xgk[i] = Kronrod::abscissa()[10 - i];
      r.wgk[i] = Kronrod::weights()[10 - i];
    }
    for (std::size_t j = 0; j < 5; ++j) r.wg[j] = Gauss::weights()[4 - j];
    return r;
  }();
  return rule;
}

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

// One Gauss-Kronrod 21 panel with the QUADPACK error heuristic.
template <class F>
Segment gk21(const F& f, double lo, double hi) {
  constexpr double kEpmach = std::numeric_limits<double>::epsilon();
  constexpr double kUflow = std::numeric_limits<double>::min();
  const auto& [kXgk, kWgk, kWg] = gk21_rule();
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double abs_half = std::fabs(half);

  std::array<double, 10> fv1{};
  std::array<double, 10> fv2{};
  const double fc = f(center);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::fabs(resk);
  for (int j = 0; j < 5; ++j) {
    const int jtw = 2 * j + 1;
    const double dx = half * kXgk[jtw];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::fabs(f1) + std::fabs(f2));
  }
  for (int j = 0; j < 5; ++j) {
    const int jtwm1 = 2 * j;
    const double dx = half * kXgk[jtwm1];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::fabs(f1) + std::fabs(f2));
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::fabs(fc - reskh);
  for (int j = 0; j < 10; ++j)
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

  const double value = resk * half;
  resabs *= abs_half;
  resasc *= abs_half;
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > kUflow / (50.0 * kEpmach)) err = std::max(kEpmach * 50.0 * resabs, err);
  return {lo, hi, value, err};
}

template <class F>
QuadratureResult adapt(const F& f, double lo, double hi, const QuadratureSpec& spec) {
  std::priority_queue<Segment> heap;
  Segment first = gk21(f, lo, hi);
  double total = first.value;
  double error = first.error;
  heap.push(first);
  int subdivisions = 1;
  auto done = [&] { return error <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)); };
  while (!done()) {
    if (subdivisions >= spec.max_subdivisions) {
      throw ConvergenceError("integrate: tolerance not met within " +
                                 std::to_string(spec.max_subdivisions) + " subdivisions",
                             total, error);
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = gk21(f, worst.lo, mid);
    const Segment right = gk21(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
    // Re-sum occasionally so running updates do not accumulate rounding drift.
    if (subdivisions % 64 == 0) {
      auto copy = heap;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, error, subdivisions};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1)
    throw UsageError("QuadratureSpec requires abs_tol > 0, rel_tol > 0, max_subdivisions >= 1");
}

QuadratureResult integrate_with_error(const std::function<double(double)>& f, double lo,
                                      double hi, const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(lo)) throw UsageError("integrate: lower limit must be finite");
  if (!(lo < hi)) throw UsageError("integrate: requires lo < hi");
  if (std::isinf(hi)) {
    auto mapped = [&](double u) {
      const double y = lo + u / (1.0 - u);
      if (!std::isfinite(y)) return 0.0;
      const double jac = 1.0 / ((1.0 - u) * (1.0 - u));
      const double v = f(y);
      return v == 0.0 ? 0.0 : v * jac;
    };
    return adapt(mapped, 0.0, 1.0, spec);
  }
  return adapt(f, lo, hi, spec);
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec) {
  return integrate_with_error(f, lo, hi, spec).value;
}

}  // namespace bessel_br::numerics
