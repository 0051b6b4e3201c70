#pragma once

#include "frob/frobenius.hpp"

namespace frob {

// Frobenius algebra on K^r with exact rational structure constants; the
// defining identities are checked at construction.
struct FrobeniusAlgebra {
  size_t rank = 0;
  std::vector<QMat> mult;  // mult[c][a][b]: component c of w_a . w_b
  QVec unit;
  QMat gram;

  FrobeniusAlgebra() = default;
  FrobeniusAlgebra(std::vector<QMat> mult_abc, QVec unit_vec, QMat gram_mat);

  QVec apply(const QVec& a, const QVec& b) const;

  static FrobeniusAlgebra diagonal(const QVec& gram_diagonal);
  // w_a . w_b = w_min(a,b), unit w_r, invariant grams g_ab = mu_min(a,b)
  static FrobeniusAlgebra min_algebra(const QVec& mu);
};

// lambda in (K^r)*: lambda(e_V) = 1 and lambda(v . w) = lambda(v) lambda(w)
struct LambdaFunctional {
  QVec coeff;

  LambdaFunctional() = default;
  LambdaFunctional(QVec c, const FrobeniusAlgebra& alg);
  GRational operator()(const QVec& v) const;
};

struct ExtensionResult {
  AlmostFrobenius structure;
  std::optional<SF> potential;
  std::optional<VectorField> euler;
  std::string provenance;
};

// a Legendre field is a parallel invertible vector field
Report check_legendre_field(const AlmostFrobenius& a, const VectorField& x0,
                            const std::vector<Point>& pts, double tol);

// g^{X0}(X, Y) = g(X0 . X, X0 . Y)
Metric legendre_metric(const AlmostFrobenius& a, const VectorField& x0);
AlmostFrobenius legendre_transform(const AlmostFrobenius& a, const VectorField& x0);

// the induced structure on M x K with unit d/dtau
ExtensionResult add_variable(const AlmostFrobenius& a, const VectorField& x0,
                             const std::vector<Point>& pts, double tol,
                             const std::string& tau_name = "",
                             const std::optional<PotentialFrobenius>& base_potential = std::nullopt);

// r successive extensions; fields[k] lives on the chart after k extensions
ExtensionResult iterate_extensions(const AlmostFrobenius& a,
                                   const std::vector<VectorField>& fields,
                                   const std::vector<Point>& pts, double tol,
                                   const std::optional<PotentialFrobenius>& base_potential =
                                       std::nullopt);

// direct form of the iterated structure from a Legendre field Z0 and the
// constant coefficient block g^{(r)}_ij (must satisfy the min-closure
// relation g_ij = g_ji = g_{min(i,j),r})
ExtensionResult closed_form_extension(const AlmostFrobenius& a, const VectorField& z0,
                                      const QMat& coeffs, const std::vector<Point>& pts,
                                      double tol);

// decomposition data for relating two-step iteration to the closed form:
// Z = Z^TM + c d/dtau by coordinate projection, Z0 = X0 . (Z^TM + c e)
VectorField iteration_z0(const AlmostFrobenius& base, const VectorField& x0,
                         const VectorField& z_on_extended);

// total-space structure on M x K^r from a Frobenius algebra and a
// multiplicative functional; Euler field E + R; potential assembled in flat
// coordinates when the base is potential-form
ExtensionResult extend_trivial(const AlmostFrobenius& a, const VectorField& e_euler,
                               const FrobeniusAlgebra& alg, const LambdaFunctional& lam,
                               const std::vector<Point>& pts, double tol,
                               const std::vector<std::string>& tau_names = {},
                               const std::optional<PotentialFrobenius>& base_potential =
                                   std::nullopt);

Report euler_check_extension(const ExtensionResult& res, const std::vector<Point>& pts,
                             double tol);
}  // namespace frob
