#include "frob/saito.hpp"

namespace frob {

SaitoBundle::SaitoBundle(ChartPtr base_chart, std::vector<Mat> connection,
                         std::vector<Mat> higgs_forms, Mat pairing_mat, Mat r0_mat, Mat rinf_mat,
                         GRational w)
    : base(std::move(base_chart)), rank(pairing_mat.size()), conn(std::move(connection)),
      higgs(std::move(higgs_forms)), pairing(std::move(pairing_mat)), r0(std::move(r0_mat)),
      rinf(std::move(rinf_mat)), weight(std::move(w)) {
  const size_t n = base->dimension();
  if (conn.size() != n || higgs.size() != n) throw Error("one form matrix per base coordinate");
  for (const auto& m : conn)
    if (m.size() != rank) throw Error("connection form rank mismatch");
  for (const auto& m : higgs)
    if (m.size() != rank) throw Error("higgs form rank mismatch");
  if (r0.size() != rank || rinf.size() != rank) throw Error("endomorphism rank mismatch");
  for (size_t a = 0; a < rank; ++a)
    for (size_t b = a + 1; b < rank; ++b)
      if (!field_equal(pairing[a][b], pairing[b][a])) throw Error("pairing not symmetric");
}

namespace {

// covariant derivative of an endomorphism: d_i M + [A_i, M]
Mat cov_endo(const SaitoBundle& s, size_t i, const Mat& m) {
  return mat_add(mat_derivative(m, i), commutator(s.conn[i], m));
}
}  // namespace

Report check_saito(const SaitoBundle& s, const std::vector<Point>& pts, double tol) {
  const size_t n = s.base->dimension();
  Report rep;
  rep.points = pts;

  double flat = 0, dphi = 0, dg = 0, wedge = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      Mat r = mat_add(mat_sub(mat_derivative(s.conn[j], i), mat_derivative(s.conn[i], j)),
                      commutator(s.conn[i], s.conn[j]));
      flat = std::max(flat, max_abs(r, pts));
      Mat dp = mat_sub(cov_endo(s, i, s.higgs[j]), cov_endo(s, j, s.higgs[i]));
      dphi = std::max(dphi, max_abs(dp, pts));
      wedge = std::max(wedge, max_abs(commutator(s.higgs[i], s.higgs[j]), pts));
    }
    // (nabla g)_i = d_i G - A_i^T G - G A_i
    Mat ng = mat_sub(mat_derivative(s.pairing, i),
                     mat_add(mat_mul(mat_transpose(s.conn[i]), s.pairing),
                             mat_mul(s.pairing, s.conn[i])));
    dg = std::max(dg, max_abs(ng, pts));
  }
  rep.add("connection_flat", flat, tol);
  rep.add("higgs_potentiality", dphi, tol);
  rep.add("pairing_parallel", dg, tol);
  rep.add("higgs_commute", wedge, tol);

  // adjointness residuals use the pairing at sample points
  auto adjoint_residual = [&](const Mat& m, const Mat& target) {
    // g(M v, w) - g(v, target w): M^T G - G target
    return max_abs(mat_sub(mat_mul(mat_transpose(m), s.pairing), mat_mul(s.pairing, target)), pts);
  };
  double selfadj = 0;
  for (size_t i = 0; i < n; ++i) selfadj = std::max(selfadj, adjoint_residual(s.higgs[i], s.higgs[i]));
  rep.add("higgs_self_adjoint", selfadj, tol);

  double r0ax = 0, r0comm = 0;
  for (size_t i = 0; i < n; ++i) {
    Mat lhs = mat_add(cov_endo(s, i, s.r0), s.higgs[i]);
    Mat rhs = commutator(s.higgs[i], s.rinf);
    r0ax = std::max(r0ax, max_abs(mat_sub(lhs, rhs), pts));
    r0comm = std::max(r0comm, max_abs(commutator(s.r0, s.higgs[i]), pts));
  }
  rep.add("r0_axiom", r0ax, tol);
  rep.add("r0_commute", r0comm, tol);
  rep.add("r0_self_adjoint", adjoint_residual(s.r0, s.r0), tol);

  double rinfpar = 0;
  for (size_t i = 0; i < n; ++i) rinfpar = std::max(rinfpar, max_abs(cov_endo(s, i, s.rinf), pts));
  rep.add("rinf_parallel", rinfpar, tol);
  // Rinf^* + Rinf = -w Id: Rinf^T G + G Rinf + w G
  Mat ra = mat_add(mat_add(mat_mul(mat_transpose(s.rinf), s.pairing), mat_mul(s.pairing, s.rinf)),
                   mat_scale(s.pairing, SF(s.base, s.weight)));
  rep.add("rinf_adjoint", max_abs(ra, pts), tol);
  return rep;
}

Mat period_map(const SaitoBundle& s, const Vec& omega) {
  const size_t n = s.base->dimension();
  if (s.rank != n) throw PreconditionError("period map needs rank equal to base dimension");
  Mat psi = zero_mat(s.base, s.rank, n);
  for (size_t i = 0; i < n; ++i) {
    Vec col = mat_vec(s.higgs[i], omega);
    for (size_t a = 0; a < s.rank; ++a) psi[a][i] = -col[a];
  }
  return psi;
}

Report check_primitive(const SaitoBundle& s, const Vec& omega, const std::vector<Point>& pts,
                       double tol) {
  const size_t n = s.base->dimension();
  Report rep;
  rep.points = pts;
  double par = 0;
  for (size_t i = 0; i < n; ++i) {
    Vec der = vec_derivative(omega, i);
    Vec corr = mat_vec(s.conn[i], omega);
    for (size_t a = 0; a < s.rank; ++a) par = std::max(par, max_abs(der[a] + corr[a], pts));
  }
  rep.add("primitive_parallel", par, tol);

  Mat psi = period_map(s, omega);
  SF det = determinant(psi);
  double min_det = -1;
  for (const auto& p : pts) {
    double v = abs_double(det.eval(p));
    min_det = min_det < 0 ? v : std::min(min_det, v);
  }
  rep.add_info("period_min_abs_det", min_det);
  rep.add_flag("period_isomorphism", min_det > tol);
  return rep;
}

namespace {

Rational rationalize(const Real50& x, const Integer& max_den) {
  // continued fractions with a denominator bound
  Real50 v = x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    Real50 fl = floor(v);
    Integer a = fl.convert_to<Integer>();
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Real50 frac = v - fl;
    if (frac < Real50(1) / Real50(1e45)) break;
    v = Real50(1) / frac;
  }
  if (q1 == 0) return Rational(0);
  return Rational(p1, q1);
}

GRational rationalize(const Complex50& z) {
  Integer max_den = Integer(1) << 32;
  return GRational(rationalize(z.real(), max_den), rationalize(z.imag(), max_den));
}

// solve for constant e with sum_i e^i phi_i = -Id at a base point, by least
// squares over the coordinate-direction span; validated symbolically after
QVec locate_unit(const SaitoBundle& s, const std::vector<Point>& pts, double tol) {
  const size_t n = s.base->dimension();
  const size_t m = s.rank;
  Point p0 = pts.at(0);
  // prefer the chart origin when it is a regular point
  try {
    std::vector<GRational> zero(s.base->dimension(), GRational(0));
    Point origin(s.base, zero);
    for (size_t i = 0; i < n; ++i) max_abs(s.higgs[i], {origin});
    p0 = origin;
  } catch (const SingularPoint&) {
  }
  std::vector<std::vector<Complex50>> phi_at(n);
  for (size_t i = 0; i < n; ++i) {
    phi_at[i].reserve(m * m);
    for (size_t a = 0; a < m; ++a)
      for (size_t b = 0; b < m; ++b) phi_at[i].push_back(s.higgs[i][a][b].eval(p0));
  }
  // normal equations M e = rhs
  std::vector<std::vector<Complex50>> M(n, std::vector<Complex50>(n, Complex50(0)));
  std::vector<Complex50> rhs(n, Complex50(0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j)
      for (size_t ab = 0; ab < m * m; ++ab) M[i][j] += conj(phi_at[i][ab]) * phi_at[j][ab];
    for (size_t a = 0; a < m; ++a) rhs[i] += conj(phi_at[i][a * m + a]) * Complex50(-1);
  }
  // gaussian elimination with partial pivoting
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (abs(M[r][col]) > abs(M[piv][col])) piv = r;
    if (abs(M[piv][col]) == 0) throw PreconditionError("no field e with phi_e = -Id (singular)");
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      Complex50 f = M[r][col] / M[col][col];
      for (size_t j = 0; j < n; ++j) M[r][j] -= f * M[col][j];
      rhs[r] -= f * rhs[col];
    }
  }
  QVec e(n);
  for (size_t i = 0; i < n; ++i) e[i] = rationalize(rhs[i] / M[i][i]);
  // verify the residual of phi_e + Id at the sample points
  Mat sum = zero_mat(s.base, m, m);
  for (size_t i = 0; i < n; ++i)
    if (!e[i].is_zero()) sum = mat_add(sum, mat_scale(s.higgs[i], SF(s.base, e[i])));
  for (size_t a = 0; a < m; ++a) sum[a][a] += one_field(s.base);
  if (max_abs(sum, pts) > tol)
    throw PreconditionError("no field e with phi_e = -Id within tolerance");
  return e;
}
}  // namespace

ReconstructResult reconstruct(const SaitoBundle& s, const Vec& omega,
                              const std::vector<Point>& pts, double tol) {
  const size_t n = s.base->dimension();
  auto prim = check_primitive(s, omega, pts, tol);
  if (!prim.pass()) throw PreconditionError("omega is not a primitive section");

  QVec e = locate_unit(s, pts, tol);
  Mat psi = period_map(s, omega);
  Mat psi_inv = mat_inverse(psi);

  Ten3 c = zero_ten3(s.base, n, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      Vec v = mat_vec(s.higgs[i], mat_vec(s.higgs[j], omega));
      Vec up = mat_vec(psi_inv, v);
      for (size_t k = 0; k < n; ++k) {
        c[k][i][j] = up[k];
        c[k][j][i] = up[k];
      }
    }

  // g^omega = psi^T G psi
  Mat g = mat_mul(mat_transpose(psi), mat_mul(s.pairing, psi));

  Vec unit_vec = zero_vec(s.base, n);
  for (size_t i = 0; i < n; ++i) unit_vec[i] = SF(s.base, e[i]);
  VectorField unit(s.base, unit_vec);

  ReconstructResult res{AlmostFrobenius{Metric(s.base, g), MultTensor(s.base, c, unit), unit},
                        std::nullopt,
                        std::nullopt,
                        std::nullopt,
                        Report{}};
  res.report.points = pts;
  res.report.absorb(prim, "");

  // R_inf^omega = psi^{-1} Rinf psi
  res.rinf_omega = mat_mul(psi_inv, mat_mul(s.rinf, psi));

  // homogeneity: Rinf(omega) = -q omega for a constant q
  Vec rw = mat_vec(s.rinf, omega);
  std::optional<GRational> q;
  if (vec_is_zero(rw)) {
    q = GRational(0);
  } else {
    for (size_t a = 0; a < n && !q; ++a) {
      if (omega[a].is_zero()) continue;
      SF ratio = -(rw[a] / omega[a]);
      if (auto v = ratio.constant_value()) q = *v;
    }
    if (q) {
      double res_q = 0;
      for (size_t a = 0; a < n; ++a) res_q = std::max(res_q, max_abs(rw[a] + omega[a].scaled(*q), pts));
      if (res_q > tol) q.reset();
    }
  }
  if (q) {
    res.q = q;
    Vec r0w = mat_vec(psi_inv, mat_vec(s.r0, omega));
    res.euler = VectorField(s.base, r0w);
    // L_{E^omega}(g^omega) = (2(1+q) - w) g^omega
    GRational factor = GRational(2) * (GRational(1) + *q) - s.weight;
    Mat lg = lie_derivative_metric(*res.euler, Metric(s.base, g));
    double scaling = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        scaling = std::max(scaling, max_abs(lg[i][j] - g[i][j].scaled(factor), pts));
    res.report.add("euler_conformal_scaling", scaling, tol);
    // Rinf^omega = nabla^omega(E^omega) - (1+q) Id
    Mat ne = covariant_derivative(Metric(s.base, g), *res.euler);
    Mat want = *res.rinf_omega;
    for (size_t i = 0; i < n; ++i) want[i][i] += SF(s.base, GRational(1) + *q);
    res.report.add("rinf_matches_nabla_euler", max_abs(mat_sub(ne, want), pts), tol);
  } else {
    res.report.add_info("omega_not_homogeneous", 1.0);
  }
  return res;
}

SaitoBundle frobenius_saito(const AlmostFrobenius& a, const VectorField& e_euler,
                            const GRational& d, const GRational& w,
                            const std::vector<Point>& pts, double tol) {
  if (!check_euler(a, e_euler, d, pts, tol).pass())
    throw PreconditionError("E is not an Euler field with the stated d");
  const size_t n = a.dim();
  const ChartPtr& ch = a.chart();
  Ten3 gamma = christoffel(a.metric);
  std::vector<Mat> conn(n), higgs(n);
  for (size_t i = 0; i < n; ++i) {
    conn[i] = zero_mat(ch, n, n);
    higgs[i] = zero_mat(ch, n, n);
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) {
        conn[i][k][j] = gamma[k][i][j];
        higgs[i][k][j] = -a.mult.c[k][i][j];
      }
  }
  // R0 = -phi_E = E . ;  Rinf = nabla E - (w+d)/2 Id
  Mat r0 = zero_mat(ch, n, n);
  for (size_t k = 0; k < n; ++k)
    for (size_t j = 0; j < n; ++j) {
      SF acc(ch);
      for (size_t m = 0; m < n; ++m)
        if (!a.mult.c[k][j][m].is_zero() && !e_euler.comp[m].is_zero())
          acc += a.mult.c[k][j][m] * e_euler.comp[m];
      r0[k][j] = acc;
    }
  Mat rinf = covariant_derivative(a.metric, e_euler);
  GRational shift = (w + d) / GRational(2);
  for (size_t k = 0; k < n; ++k) rinf[k][k] -= SF(ch, shift);
  return SaitoBundle(ch, conn, higgs, a.metric.g, r0, rinf, w);
}

SaitoBundle build_add_variable_saito(const AlmostFrobenius& a,
                                     const std::optional<VectorField>& e_euler,
                                     const std::optional<GRational>& d,
                                     const std::vector<Point>& pts, double tol,
                                     const std::string& tau_name, bool require_homogeneous) {
  const size_t n = a.dim();
  if (e_euler.has_value() != d.has_value())
    throw PreconditionError("Euler data needs both E and d");
  if (e_euler && require_homogeneous && *d != GRational(2))
    throw PreconditionError("homogeneity of the canonical section needs d = 2");
  if (e_euler && !check_euler(a, *e_euler, *d, pts, tol).pass())
    throw PreconditionError("E is not an Euler field with the stated d");

  ChartPtr big = product_chart(a.chart(), {tau_name});
  const size_t m = n + 1;
  Ten3 gamma = christoffel(a.metric);

  std::vector<Mat> conn(n + 1, zero_mat(big, m, m)), higgs(n + 1, zero_mat(big, m, m));
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) {
        conn[i][k][j] = gamma[k][i][j].on_chart(big);
        higgs[i][k][j] = (-a.mult.c[k][i][j]).on_chart(big);
      }
  }
  // phi'_{d/dtau} = -Id
  for (size_t k = 0; k < m; ++k) higgs[n][k][k] = -one_field(big);

  Mat pairing = zero_mat(big, m, m);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) pairing[i][j] = a.metric.g[i][j].on_chart(big);
  pairing[n][n] = one_field(big);  // gtilde(v, v) = 1

  Mat r0 = zero_mat(big, m, m);
  if (e_euler) {
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) {
        SF acc(a.chart());
        for (size_t l = 0; l < n; ++l)
          if (!a.mult.c[k][j][l].is_zero() && !e_euler->comp[l].is_zero())
            acc += a.mult.c[k][j][l] * e_euler->comp[l];
        r0[k][j] = acc.on_chart(big);
      }
  }
  SF tau = ScalarField::variable(big, tau_name);
  for (size_t k = 0; k < m; ++k) r0[k][k] += tau;

  Mat rinf = zero_mat(big, m, m);
  if (e_euler) {
    Mat ne = covariant_derivative(a.metric, *e_euler);
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) rinf[k][j] = ne[k][j].on_chart(big);
    GRational half_d = *d / GRational(2);
    for (size_t k = 0; k < n; ++k) rinf[k][k] -= SF(big, half_d);
  }
  return SaitoBundle(big, conn, higgs, pairing, r0, rinf, GRational(0));
}

Vec add_variable_primitive(const SaitoBundle& s, const AlmostFrobenius& base,
                           const VectorField& x0) {
  const size_t n = base.dim();
  Vec omega = zero_vec(s.base, n + 1);
  for (size_t i = 0; i < n; ++i) omega[i] = x0.comp[i].on_chart(s.base);
  omega[n] = one_field(s.base);
  return omega;
}

SaitoBundle build_trivial_extension_saito(const AlmostFrobenius& a, const VectorField& e_euler,
                                          const FrobeniusAlgebra& alg, const LambdaFunctional& lam,
                                          const std::vector<Point>& pts, double tol,
                                          const std::vector<std::string>& tau_names) {
  const size_t n = a.dim();
  const size_t r = alg.rank;
  if (!check_euler(a, e_euler, GRational(2), pts, tol).pass())
    throw PreconditionError("base Euler field fails L_E(g) = 2g");

  std::vector<std::string> taus = tau_names;
  if (taus.empty())
    for (size_t k = 1; k <= r; ++k) taus.push_back("tau" + std::to_string(k));
  ChartPtr big = product_chart(a.chart(), taus);
  const size_t m = n + r;
  Ten3 gamma = christoffel(a.metric);

  // connection pi^*(nabla^M (+) D): base Christoffels on the TM block
  std::vector<Mat> conn(n + r, zero_mat(big, m, m));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) conn[i][k][j] = gamma[k][i][j].on_chart(big);

  // Higgs phi^{M,V}
  std::vector<Mat> higgs(n + r, zero_mat(big, m, m));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) higgs[i][k][j] = (-a.mult.c[k][i][j]).on_chart(big);
  for (size_t s = 0; s < r; ++s) {
    // on pi^* TM: -lambda(v) Id
    for (size_t k = 0; k < n; ++k) higgs[n + s][k][k] = SF(big, -lam.coeff[s]);
    // on pi^* V: -v .V w
    for (size_t cc = 0; cc < r; ++cc)
      for (size_t b = 0; b < r; ++b)
        if (alg.mult[cc][s][b] != GRational(0)) higgs[n + s][n + cc][n + b] = SF(big, -alg.mult[cc][s][b]);
  }

  // pairing pi^*(g_M (+) g_{M,V})
  SF gee(a.chart());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (!a.metric.g[i][j].is_zero()) gee += a.metric.g[i][j] * a.unit.comp[i] * a.unit.comp[j];
  GRational gee_val;
  if (auto v = gee.constant_value())
    gee_val = *v;
  else
    gee_val = gee.eval_exact(pts.at(0));
  Mat pairing = zero_mat(big, m, m);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) pairing[i][j] = a.metric.g[i][j].on_chart(big);
  for (size_t s = 0; s < r; ++s)
    for (size_t k = 0; k < r; ++k)
      pairing[n + s][n + k] = SF(big, alg.gram[s][k] - gee_val * lam.coeff[s] * lam.coeff[k]);

  // R'_0: on pi^*X: X . E + lambda(tau) X; on pi^*v: v .V tau
  Mat r0 = zero_mat(big, m, m);
  for (size_t k = 0; k < n; ++k)
    for (size_t j = 0; j < n; ++j) {
      SF acc(a.chart());
      for (size_t l = 0; l < n; ++l)
        if (!a.mult.c[k][j][l].is_zero() && !e_euler.comp[l].is_zero())
          acc += a.mult.c[k][j][l] * e_euler.comp[l];
      r0[k][j] = acc.on_chart(big);
    }
  SF lam_tau(big);
  for (size_t s = 0; s < r; ++s)
    lam_tau += ScalarField::variable(big, taus[s]).scaled(lam.coeff[s]);
  for (size_t k = 0; k < n; ++k) r0[k][k] += lam_tau;
  for (size_t cc = 0; cc < r; ++cc)
    for (size_t bb = 0; bb < r; ++bb) {
      SF acc(big);
      for (size_t s = 0; s < r; ++s)
        if (alg.mult[cc][bb][s] != GRational(0))
          acc += ScalarField::variable(big, taus[s]).scaled(alg.mult[cc][bb][s]);
      r0[n + cc][n + bb] = acc;
    }

  // R'_inf: pi^*(nabla^M E - Id) on pi^*TM, zero on pi^*V
  Mat rinf = zero_mat(big, m, m);
  Mat ne = covariant_derivative(a.metric, e_euler);
  for (size_t k = 0; k < n; ++k)
    for (size_t j = 0; j < n; ++j) rinf[k][j] = ne[k][j].on_chart(big);
  for (size_t k = 0; k < n; ++k) rinf[k][k] -= one_field(big);

  return SaitoBundle(big, conn, higgs, pairing, r0, rinf, GRational(0));
}

Vec trivial_extension_primitive(const SaitoBundle& s, const AlmostFrobenius& base,
                                const FrobeniusAlgebra& alg) {
  const size_t n = base.dim();
  Vec omega = zero_vec(s.base, n + alg.rank);
  for (size_t i = 0; i < n; ++i) omega[i] = base.unit.comp[i].on_chart(s.base);
  for (size_t a = 0; a < alg.rank; ++a) omega[n + a] = SF(s.base, alg.unit[a]);
  return omega;
}
}  // namespace frob
