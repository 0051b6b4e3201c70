#include "frob/sample.hpp"

#include <random>

namespace frob {

std::vector<Point> draw_points(const ChartPtr& chart, const SamplePlan& plan,
                               const PointPredicate& accept) {
  std::mt19937_64 rng(plan.seed);
  auto draw_rational = [&rng]() {
    // denominator <= 16, value in [-1,1]
    uint64_t d = rng() % 16 + 1;
    uint64_t n = rng() % (2 * d + 1);
    return Rational(Integer(static_cast<long long>(n) - static_cast<long long>(d)), Integer(d));
  };
  const size_t n = chart->dimension();
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(plan.count));
  int attempts = 0;
  while (pts.size() < static_cast<size_t>(plan.count)) {
    if (++attempts > plan.count * 400) throw Error("sample rejection budget exhausted");
    std::vector<GRational> xs(n);
    for (size_t i = 0; i < n; ++i) {
      Rational re = draw_rational();
      Rational im = 0;
      if (chart->domain() == Domain::Complex && plan.complex_parts) im = draw_rational();
      if (i < plan.center.size()) {
        re += plan.center[i].re;
        im += plan.center[i].im;
      }
      xs[i] = GRational(re, im);
    }
    Point p(chart, std::move(xs));
    if (accept && !accept(p)) continue;
    pts.push_back(std::move(p));
  }
  return pts;
}
}  // namespace frob
