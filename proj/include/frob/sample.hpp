#pragma once

#include <functional>
#include <vector>

#include "frob/chart.hpp"

namespace frob {

// Deterministic sample-point policy: rational coordinates drawn from
// center + [-1,1]^n with denominator <= 16.  Points failing the caller's
// predicate (singular denominators, degenerate frames, sign constraints)
// are rejected and redrawn.
struct SamplePlan {
  uint64_t seed = 0;
  int count = 20;
  std::vector<GRational> center;  // empty = origin
  bool complex_parts = false;     // draw imaginary parts on complex charts
};

using PointPredicate = std::function<bool(const Point&)>;

std::vector<Point> draw_points(const ChartPtr& chart, const SamplePlan& plan,
                               const PointPredicate& accept = nullptr);
}  // namespace frob
