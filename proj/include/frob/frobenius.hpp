#pragma once

#include <optional>

#include "frob/tensor.hpp"

namespace frob {

// matrix of exact rational constants
using QMat = std::vector<std::vector<GRational>>;
using QVec = std::vector<GRational>;

// Frobenius structure in flat coordinates: constant metric, potential F,
// and the flat coordinate whose field is the unit.
struct PotentialFrobenius {
  ChartPtr chart;
  QMat flat_metric;
  SF potential;
  size_t unit_direction = 0;

  PotentialFrobenius() = default;
  PotentialFrobenius(ChartPtr chart, QMat metric, SF F, size_t unit_dir);
};

// semisimple structure in canonical coordinates, encoded by the metric
// potential eta: g = sum eta_k du^k (x) du^k, e_i . e_j = delta_ij e_i
struct SemisimpleData {
  ChartPtr chart;
  SF eta;

  SemisimpleData() = default;
  SemisimpleData(ChartPtr chart, SF eta_potential);
  SF eta_k(size_t k) const { return eta.derivative(k); }
};

struct AlmostFrobenius {
  Metric metric;
  MultTensor mult;
  VectorField unit;

  const ChartPtr& chart() const { return metric.chart; }
  size_t dim() const { return metric.dim(); }
};

AlmostFrobenius from_potential(const PotentialFrobenius& p);
AlmostFrobenius from_semisimple(const SemisimpleData& s);

// third derivatives of the potential, c_ijk = F_ijk
Ten3 potential_third_derivatives(const PotentialFrobenius& p);
QMat qmat_inverse(const QMat& m);

Report wdvv_residual(const PotentialFrobenius& p, const std::vector<Point>& pts, double tol);
Report check_almost_frobenius(const AlmostFrobenius& a, const std::vector<Point>& pts, double tol);
Report check_f_manifold(const AlmostFrobenius& a, const std::vector<Point>& pts, double tol);
Report check_frobenius(const AlmostFrobenius& a, const std::vector<Point>& pts, double tol);
Report check_euler(const AlmostFrobenius& a, const VectorField& e, const GRational& d,
                   const std::vector<Point>& pts, double tol);

// eta_ij != 0 at every sample point (equivalent to non-vanishing rotation
// coefficients where eta_i != 0; square roots never materialized)
bool rotation_coefficients_nonvanishing(const SemisimpleData& s, const std::vector<Point>& pts,
                                        double tol);
// leading principal minors of g at the sample points are all positive
bool metric_positive_definite(const Metric& g, const std::vector<Point>& pts);
}  // namespace frob
