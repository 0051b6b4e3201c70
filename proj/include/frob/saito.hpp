#pragma once

#include "frob/extension.hpp"

namespace frob {

// Trivialized bundle over a chart with connection forms, Higgs field,
// pairing and the two endomorphisms of a Saito structure of weight w.
struct SaitoBundle {
  ChartPtr base;
  size_t rank = 0;
  std::vector<Mat> conn;   // A_i per base coordinate, D = d + A_i dx^i
  std::vector<Mat> higgs;  // phi_i per base coordinate
  Mat pairing;             // symmetric
  Mat r0;
  Mat rinf;
  GRational weight;

  SaitoBundle() = default;
  SaitoBundle(ChartPtr base_chart, std::vector<Mat> connection, std::vector<Mat> higgs_forms,
              Mat pairing_mat, Mat r0_mat, Mat rinf_mat, GRational w);
};

struct PrimitiveSection {
  Vec comp;
  std::optional<GRational> homogeneity;  // q with R_inf(omega) = -q omega
};

// one residual per Saito axiom, max over the sample points
Report check_saito(const SaitoBundle& s, const std::vector<Point>& pts, double tol);

// psi[a][i] = component a of -phi_i(omega), the infinitesimal period mapping
Mat period_map(const SaitoBundle& s, const Vec& omega);
Report check_primitive(const SaitoBundle& s, const Vec& omega, const std::vector<Point>& pts,
                       double tol);

struct ReconstructResult {
  AlmostFrobenius structure;
  std::optional<VectorField> euler;
  std::optional<Mat> rinf_omega;
  std::optional<GRational> q;
  Report report;
};

// Frobenius structure from a Saito bundle and a primitive section:
// X . Y = psi^{-1}(phi_X phi_Y omega), metric pulled back through psi,
// unit located from phi_e = -Id; Euler field when omega is homogeneous
ReconstructResult reconstruct(const SaitoBundle& s, const Vec& omega,
                              const std::vector<Point>& pts, double tol);

// the Saito structure on the tangent bundle of a Frobenius manifold with
// Euler field: (nabla, g, phi, R0 = -phi_E, Rinf = nabla E - (w+d)/2 Id)
SaitoBundle frobenius_saito(const AlmostFrobenius& a, const VectorField& e_euler,
                            const GRational& d, const GRational& w,
                            const std::vector<Point>& pts, double tol);

// pullback bundle over M x K realizing adding a variable; weight 0.
// Without Euler data the five connection/Higgs/pairing axioms hold but the
// R0 axiom has no reason to (R0 = tau Id only).
SaitoBundle build_add_variable_saito(const AlmostFrobenius& a,
                                     const std::optional<VectorField>& e_euler,
                                     const std::optional<GRational>& d,
                                     const std::vector<Point>& pts, double tol,
                                     const std::string& tau_name = "tau1",
                                     bool require_homogeneous = true);
// canonical primitive section pi^*(X0 + v) of the add-variable bundle
Vec add_variable_primitive(const SaitoBundle& s, const AlmostFrobenius& base,
                           const VectorField& x0);

// pullback bundle over M x K^r realizing the trivial-bundle extension;
// weight 0; canonical primitive section pi^*(e_M + e_V)
SaitoBundle build_trivial_extension_saito(const AlmostFrobenius& a, const VectorField& e_euler,
                                          const FrobeniusAlgebra& alg, const LambdaFunctional& lam,
                                          const std::vector<Point>& pts, double tol,
                                          const std::vector<std::string>& tau_names = {});
Vec trivial_extension_primitive(const SaitoBundle& s, const AlmostFrobenius& base,
                                const FrobeniusAlgebra& alg);
}  // namespace frob
