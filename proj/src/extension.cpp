#include "frob/extension.hpp"

namespace frob {

FrobeniusAlgebra::FrobeniusAlgebra(std::vector<QMat> mult_abc, QVec unit_vec, QMat gram_mat)
    : rank(unit_vec.size()), mult(std::move(mult_abc)), unit(std::move(unit_vec)),
      gram(std::move(gram_mat)) {
  const size_t r = rank;
  if (mult.size() != r || gram.size() != r) throw Error("algebra dimension mismatch");
  auto c = [&](size_t cc, size_t a, size_t b) { return mult[cc][a][b]; };
  for (size_t cc = 0; cc < r; ++cc)
    for (size_t a = 0; a < r; ++a)
      for (size_t b = 0; b < r; ++b) {
        if (c(cc, a, b) != c(cc, b, a)) throw Error("fiber multiplication not commutative");
      }
  // associativity
  for (size_t a = 0; a < r; ++a)
    for (size_t b = 0; b < r; ++b)
      for (size_t d = 0; d < r; ++d)
        for (size_t l = 0; l < r; ++l) {
          GRational acc(0);
          for (size_t m = 0; m < r; ++m) acc += c(m, a, b) * c(l, m, d) - c(m, b, d) * c(l, a, m);
          if (!acc.is_zero()) throw Error("fiber multiplication not associative");
        }
  // unit
  for (size_t a = 0; a < r; ++a)
    for (size_t l = 0; l < r; ++l) {
      GRational acc(0);
      for (size_t b = 0; b < r; ++b) acc += c(l, a, b) * unit[b];
      if (acc != (l == a ? GRational(1) : GRational(0))) throw Error("fiber unit axiom fails");
    }
  // invariance of the gram
  for (size_t a = 0; a < r; ++a)
    for (size_t b = 0; b < r; ++b) {
      if (gram[a][b] != gram[b][a]) throw Error("fiber metric not symmetric");
      for (size_t d = 0; d < r; ++d) {
        GRational lhs(0), rhs(0);
        for (size_t m = 0; m < r; ++m) {
          lhs += c(m, a, b) * gram[m][d];
          rhs += c(m, b, d) * gram[a][m];
        }
        if (lhs != rhs) throw Error("fiber metric not invariant");
      }
    }
}

QVec FrobeniusAlgebra::apply(const QVec& a, const QVec& b) const {
  QVec out(rank, GRational(0));
  for (size_t cc = 0; cc < rank; ++cc)
    for (size_t i = 0; i < rank; ++i)
      for (size_t j = 0; j < rank; ++j) out[cc] += mult[cc][i][j] * a[i] * b[j];
  return out;
}

FrobeniusAlgebra FrobeniusAlgebra::diagonal(const QVec& gram_diagonal) {
  const size_t r = gram_diagonal.size();
  std::vector<QMat> c(r, QMat(r, QVec(r, GRational(0))));
  for (size_t a = 0; a < r; ++a) c[a][a][a] = GRational(1);
  QVec e(r, GRational(1));
  QMat g(r, QVec(r, GRational(0)));
  for (size_t a = 0; a < r; ++a) g[a][a] = gram_diagonal[a];
  return FrobeniusAlgebra(std::move(c), std::move(e), std::move(g));
}

FrobeniusAlgebra FrobeniusAlgebra::min_algebra(const QVec& mu) {
  const size_t r = mu.size();
  std::vector<QMat> c(r, QMat(r, QVec(r, GRational(0))));
  for (size_t a = 0; a < r; ++a)
    for (size_t b = 0; b < r; ++b) c[std::min(a, b)][a][b] = GRational(1);
  QVec e(r, GRational(0));
  e[r - 1] = GRational(1);
  QMat g(r, QVec(r, GRational(0)));
  for (size_t a = 0; a < r; ++a)
    for (size_t b = 0; b < r; ++b) g[a][b] = mu[std::min(a, b)];
  return FrobeniusAlgebra(std::move(c), std::move(e), std::move(g));
}

LambdaFunctional::LambdaFunctional(QVec c, const FrobeniusAlgebra& alg) : coeff(std::move(c)) {
  if (coeff.size() != alg.rank) throw Error("lambda dimension mismatch");
  GRational on_unit(0);
  for (size_t a = 0; a < alg.rank; ++a) on_unit += coeff[a] * alg.unit[a];
  if (on_unit != GRational(1)) throw Error("lambda(e_V) != 1");
  for (size_t a = 0; a < alg.rank; ++a)
    for (size_t b = 0; b < alg.rank; ++b) {
      GRational lhs(0);
      for (size_t cc = 0; cc < alg.rank; ++cc) lhs += coeff[cc] * alg.mult[cc][a][b];
      if (lhs != coeff[a] * coeff[b]) throw Error("lambda not multiplicative");
    }
}

GRational LambdaFunctional::operator()(const QVec& v) const {
  GRational acc(0);
  for (size_t a = 0; a < coeff.size(); ++a) acc += coeff[a] * v[a];
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

// multiplication-by-X0 operator matrix: op[k][i] = c^k_{i m} X0^m
Mat mult_operator(const AlmostFrobenius& a, const VectorField& x0) {
  const size_t n = a.dim();
  Mat op = zero_mat(a.chart(), n, n);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) {
      SF acc(a.chart());
      for (size_t m = 0; m < n; ++m)
        if (!a.mult.c[k][i][m].is_zero() && !x0.comp[m].is_zero())
          acc += a.mult.c[k][i][m] * x0.comp[m];
      op[k][i] = acc;
    }
  return op;
}

std::string fresh_tau_name(const ChartPtr& chart, const std::string& wanted, size_t ordinal) {
  if (!wanted.empty()) {
    if (chart->index_of(wanted) >= 0) throw Error("tau name collides with chart variable");
    return wanted;
  }
  for (size_t k = ordinal; k < ordinal + 100; ++k) {
    std::string cand = "tau" + std::to_string(k);
    if (chart->index_of(cand) < 0) return cand;
  }
  throw Error("could not generate a fresh fiber coordinate name");
}
}  // namespace

Report check_legendre_field(const AlmostFrobenius& a, const VectorField& x0,
                            const std::vector<Point>& pts, double tol) {
  require_same_chart(a.chart(), x0.chart, "check_legendre_field");
  Report rep;
  rep.points = pts;
  rep.add("legendre_parallel", max_abs(covariant_derivative(a.metric, x0), pts), tol);
  SF det = determinant(mult_operator(a, x0));
  double min_det = -1.0;
  for (const auto& p : pts) {
    double v = abs_double(det.eval(p));
    min_det = min_det < 0 ? v : std::min(min_det, v);
  }
  rep.add_info("legendre_operator_min_abs_det", min_det);
  rep.add_flag("legendre_invertible", min_det > tol);
  return rep;
}

Metric legendre_metric(const AlmostFrobenius& a, const VectorField& x0) {
  const size_t n = a.dim();
  Mat op = mult_operator(a, x0);  // op[l][i] = (X0 . e_i)^l
  Mat g = zero_mat(a.chart(), n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      SF acc(a.chart());
      for (size_t l = 0; l < n; ++l)
        for (size_t m = 0; m < n; ++m)
          if (!a.metric.g[l][m].is_zero() && !op[l][i].is_zero() && !op[m][j].is_zero())
            acc += a.metric.g[l][m] * op[l][i] * op[m][j];
      g[i][j] = acc;
      g[j][i] = acc;
    }
  return Metric(a.chart(), g);
}

AlmostFrobenius legendre_transform(const AlmostFrobenius& a, const VectorField& x0) {
  return AlmostFrobenius{legendre_metric(a, x0), a.mult, a.unit};
}

ExtensionResult add_variable(const AlmostFrobenius& a, const VectorField& x0,
                             const std::vector<Point>& pts, double tol,
                             const std::string& tau_name,
                             const std::optional<PotentialFrobenius>& base_potential) {
  auto leg = check_legendre_field(a, x0, pts, tol);
  if (!leg.pass()) throw PreconditionError("X0 is not a Legendre field");

  const size_t n = a.dim();
  std::string tau = fresh_tau_name(a.chart(), tau_name, 1);
  ChartPtr big = product_chart(a.chart(), {tau});

  Metric gx = legendre_metric(a, x0);
  Mat g1 = zero_mat(big, n + 1, n + 1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) g1[i][j] = gx.g[i][j].on_chart(big);
  // i_e(g^{X0}) and g^{X0}(e,e)
  for (size_t i = 0; i < n; ++i) {
    SF acc(a.chart());
    for (size_t m = 0; m < n; ++m)
      if (!gx.g[i][m].is_zero() && !a.unit.comp[m].is_zero()) acc += gx.g[i][m] * a.unit.comp[m];
    g1[i][n] = acc.on_chart(big);
    g1[n][i] = g1[i][n];
  }
  {
    SF acc(a.chart());
    for (size_t i = 0; i < n; ++i)
      for (size_t m = 0; m < n; ++m)
        if (!gx.g[i][m].is_zero() && !a.unit.comp[i].is_zero() && !a.unit.comp[m].is_zero())
          acc += gx.g[i][m] * a.unit.comp[i] * a.unit.comp[m];
    g1[n][n] = acc.on_chart(big) + one_field(big);
  }

  Ten3 c1 = zero_ten3(big, n + 1, n + 1, n + 1);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) c1[k][i][j] = a.mult.c[k][i][j].on_chart(big);
  for (size_t i = 0; i < n; ++i) {
    c1[i][i][n] = one_field(big);  // X . d/dtau = X
    c1[i][n][i] = one_field(big);
  }
  c1[n][n][n] = one_field(big);  // d/dtau . d/dtau = d/dtau

  Vec e1 = zero_vec(big, n + 1);
  e1[n] = one_field(big);
  VectorField unit(big, e1);

  ExtensionResult res;
  res.structure = AlmostFrobenius{Metric(big, g1), MultTensor(big, c1, unit), unit};
  res.provenance = "add_variable";

  // potential in the (t, tau) coordinates; available when the base is
  // potential-form and X0 is the unit (then g^{X0} = g stays constant)
  if (base_potential) {
    bool x0_is_unit = true;
    for (size_t i = 0; i < n; ++i)
      if (!field_equal(x0.comp[i], a.unit.comp[i])) x0_is_unit = false;
    if (x0_is_unit) {
      const auto& bp = *base_potential;
      SF t_tau = ScalarField::variable(big, tau);
      SF f1 = bp.potential.on_chart(big);
      f1 += t_tau * bp.potential.derivative(bp.unit_direction).on_chart(big);
      SF lin(big);
      for (size_t i = 0; i < n; ++i)
        if (bp.flat_metric[bp.unit_direction][i] != GRational(0))
          lin += ScalarField::variable(big, i).scaled(bp.flat_metric[bp.unit_direction][i]);
      f1 += t_tau * t_tau * lin.scaled(GRational(Rational(1, 2)));
      GRational guu = bp.flat_metric[bp.unit_direction][bp.unit_direction] + GRational(1);
      f1 += t_tau.pow(3).scaled(guu / GRational(6));
      res.potential = f1;
    }
  }
  return res;
}

ExtensionResult iterate_extensions(const AlmostFrobenius& a,
                                   const std::vector<VectorField>& fields,
                                   const std::vector<Point>& pts, double tol,
                                   const std::optional<PotentialFrobenius>& base_potential) {
  if (fields.empty()) throw Error("iterate needs at least one Legendre field");
  ExtensionResult cur;
  std::optional<PotentialFrobenius> pot = base_potential;
  AlmostFrobenius acc = a;
  std::vector<Point> cur_pts = pts;
  for (size_t step = 0; step < fields.size(); ++step) {
    std::string tau = "tau" + std::to_string(step + 1);
    cur = add_variable(acc, fields[step], cur_pts, tol, tau, pot);
    acc = cur.structure;
    // carry the potential forward when the step preserved flat coordinates
    if (cur.potential && pot) {
      const size_t m = acc.dim();
      QMat g(m, QVec(m, GRational(0)));
      bool constant = true;
      for (size_t i = 0; i < m && constant; ++i)
        for (size_t j = 0; j < m && constant; ++j) {
          auto v = acc.metric.g[i][j].constant_value();
          if (!v)
            constant = false;
          else
            g[i][j] = *v;
        }
      if (constant)
        pot = PotentialFrobenius(acc.chart(), g, *cur.potential, acc.dim() - 1);
      else
        pot.reset();
    } else {
      pot.reset();
    }
    // extend the sample points by tau = 0
    for (auto& p : cur_pts) {
      auto xs = p.coords;
      xs.push_back(GRational(0));
      p = Point(acc.chart(), xs);
    }
  }
  cur.provenance = "iterate";
  return cur;
}

ExtensionResult closed_form_extension(const AlmostFrobenius& a, const VectorField& z0,
                                      const QMat& coeffs, const std::vector<Point>& pts,
                                      double tol) {
  const size_t r = coeffs.size();
  if (r == 0) throw Error("closed form needs r >= 1");
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      if (coeffs[i][j] != coeffs[j][i] || coeffs[i][j] != coeffs[std::min(i, j)][r - 1])
        throw PreconditionError(
            "coefficients violate the relation g_ij = g_ji = g_{min(i,j),r}");
    }
  auto leg = check_legendre_field(a, z0, pts, tol);
  if (!leg.pass()) throw PreconditionError("Z0 is not a Legendre field");

  const size_t n = a.dim();
  std::vector<std::string> taus;
  for (size_t k = 1; k <= r; ++k) taus.push_back("tau" + std::to_string(k));
  ChartPtr big = product_chart(a.chart(), taus);

  Metric gz = legendre_metric(a, z0);
  Mat g = zero_mat(big, n + r, n + r);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) g[i][j] = gz.g[i][j].on_chart(big);
  for (size_t i = 0; i < n; ++i) {
    SF acc(a.chart());
    for (size_t m = 0; m < n; ++m)
      if (!gz.g[i][m].is_zero() && !a.unit.comp[m].is_zero()) acc += gz.g[i][m] * a.unit.comp[m];
    SF lifted = acc.on_chart(big);
    for (size_t k = 0; k < r; ++k) {
      g[i][n + k] = lifted;
      g[n + k][i] = lifted;
    }
  }
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) g[n + i][n + j] = SF(big, coeffs[i][j]);

  Ten3 c = zero_ten3(big, n + r, n + r, n + r);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) c[k][i][j] = a.mult.c[k][i][j].on_chart(big);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < r; ++k) {
      c[i][i][n + k] = one_field(big);
      c[i][n + k][i] = one_field(big);
    }
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) c[n + std::min(i, j)][n + i][n + j] = one_field(big);

  Vec e = zero_vec(big, n + r);
  e[n + r - 1] = one_field(big);
  VectorField unit(big, e);

  ExtensionResult res;
  res.structure = AlmostFrobenius{Metric(big, g), MultTensor(big, c, unit), unit};
  res.provenance = "closed_form";
  return res;
}

VectorField iteration_z0(const AlmostFrobenius& base, const VectorField& x0,
                         const VectorField& z_on_extended) {
  const size_t n = base.dim();
  if (z_on_extended.dim() != n + 1) throw Error("Z must live on the one-step extension");
  // coordinate projection Z = Z^TM + c d/dtau
  SF c_field = z_on_extended.comp[n];
  auto c_const = c_field.constant_value();
  if (!c_const) throw PreconditionError("the d/dtau component of Z must be constant");
  if (c_const->is_zero()) throw PreconditionError("the d/dtau component of Z vanishes (c = 0)");
  Vec w = zero_vec(base.chart(), n);
  for (size_t i = 0; i < n; ++i) {
    SF zi = z_on_extended.comp[i];
    if (!zi.derivative(n).is_zero()) throw PreconditionError("Z^TM depends on tau");
    w[i] = zi.on_chart(base.chart()) + base.unit.comp[i].scaled(*c_const);
  }
  // Z0 = X0 . (Z^TM + c e)
  Vec z0 = zero_vec(base.chart(), n);
  for (size_t k = 0; k < n; ++k) {
    SF acc(base.chart());
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (!base.mult.c[k][i][j].is_zero()) acc += base.mult.c[k][i][j] * x0.comp[i] * w[j];
    z0[k] = acc;
  }
  return VectorField(base.chart(), z0);
}

ExtensionResult extend_trivial(const AlmostFrobenius& a, const VectorField& e_euler,
                               const FrobeniusAlgebra& alg, const LambdaFunctional& lam,
                               const std::vector<Point>& pts, double tol,
                               const std::vector<std::string>& tau_names,
                               const std::optional<PotentialFrobenius>& base_potential) {
  if (!check_frobenius(a, pts, tol).pass())
    throw PreconditionError("base structure is not Frobenius");
  if (!check_euler(a, e_euler, GRational(2), pts, tol).pass())
    throw PreconditionError("base Euler field fails L_E(g) = 2g");

  const size_t n = a.dim();
  const size_t r = alg.rank;
  const ChartPtr& ch = a.chart();

  // g(e,e) is constant for a Frobenius base (e parallel, g flat); checked
  SF gee(ch);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (!a.metric.g[i][j].is_zero()) gee += a.metric.g[i][j] * a.unit.comp[i] * a.unit.comp[j];
  for (size_t m = 0; m < n; ++m)
    if (max_abs(gee.derivative(m), pts) > tol)
      throw PreconditionError("g(e,e) is not constant on the base");
  GRational gee_val;
  if (auto v = gee.constant_value())
    gee_val = *v;
  else
    gee_val = gee.eval_exact(pts.at(0));

  // g_{M,V} = g_V - g(e,e) lambda (x) lambda must be nondegenerate
  QMat gmv(r, QVec(r, GRational(0)));
  for (size_t s = 0; s < r; ++s)
    for (size_t k = 0; k < r; ++k)
      gmv[s][k] = alg.gram[s][k] - gee_val * lam.coeff[s] * lam.coeff[k];
  try {
    qmat_inverse(gmv);
  } catch (const DegenerateInput&) {
    throw PreconditionError("g_V - g(e,e) lambda (x) lambda is degenerate");
  }

  std::vector<std::string> taus = tau_names;
  if (taus.empty())
    for (size_t k = 1; k <= r; ++k) taus.push_back("tau" + std::to_string(k));
  if (taus.size() != r) throw Error("fiber coordinate count mismatch");
  ChartPtr big = product_chart(ch, taus);

  Ten3 c = zero_ten3(big, n + r, n + r, n + r);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) c[k][i][j] = a.mult.c[k][i][j].on_chart(big);
  for (size_t i = 0; i < n; ++i)
    for (size_t s = 0; s < r; ++s) {
      c[i][i][n + s] = SF(big, lam.coeff[s]);  // X . v = lambda(v) X
      c[i][n + s][i] = c[i][i][n + s];
    }
  for (size_t s = 0; s < r; ++s)
    for (size_t k = 0; k < r; ++k)
      for (size_t m = 0; m < r; ++m)
        if (alg.mult[m][s][k] != GRational(0)) c[n + m][n + s][n + k] = SF(big, alg.mult[m][s][k]);

  Mat g = zero_mat(big, n + r, n + r);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) g[i][j] = a.metric.g[i][j].on_chart(big);
  // g(X, v) = lambda(v) g_M(X, e_M)
  Vec eps(n, SF(ch));
  for (size_t i = 0; i < n; ++i) {
    SF acc(ch);
    for (size_t m = 0; m < n; ++m)
      if (!a.metric.g[i][m].is_zero() && !a.unit.comp[m].is_zero())
        acc += a.metric.g[i][m] * a.unit.comp[m];
    eps[i] = acc;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t s = 0; s < r; ++s) {
      g[i][n + s] = eps[i].on_chart(big).scaled(lam.coeff[s]);
      g[n + s][i] = g[i][n + s];
    }
  for (size_t s = 0; s < r; ++s)
    for (size_t k = 0; k < r; ++k) g[n + s][n + k] = SF(big, alg.gram[s][k]);

  Vec e = zero_vec(big, n + r);
  for (size_t s = 0; s < r; ++s) e[n + s] = SF(big, alg.unit[s]);
  VectorField unit(big, e);

  ExtensionResult res;
  res.structure = AlmostFrobenius{Metric(big, g), MultTensor(big, c, unit), unit};
  res.provenance = "extend_trivial";

  // Euler field E + R with R the radial fiber field
  Vec eu = zero_vec(big, n + r);
  for (size_t i = 0; i < n; ++i) eu[i] = e_euler.comp[i].on_chart(big);
  for (size_t s = 0; s < r; ++s) eu[n + s] = ScalarField::variable(big, taus[s]);
  res.euler = VectorField(big, eu);

  // potential in flat coordinates (t, tau)
  if (base_potential) {
    const auto& bp = *base_potential;
    SF f = bp.potential.on_chart(big);
    SF lam_tau(big);
    for (size_t s = 0; s < r; ++s)
      lam_tau += ScalarField::variable(big, taus[s]).scaled(lam.coeff[s]);
    SF quad_t(big);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (bp.flat_metric[i][j] != GRational(0))
          quad_t += (ScalarField::variable(big, i) * ScalarField::variable(big, j))
                        .scaled(bp.flat_metric[i][j]);
    f += (lam_tau * quad_t).scaled(GRational(Rational(1, 2)));

    SF lam2(big);  // sum over lambda(d_s . d_k) tau^s tau^k
    for (size_t s = 0; s < r; ++s)
      for (size_t k = 0; k < r; ++k) {
        GRational lsk(0);
        for (size_t m = 0; m < r; ++m) lsk += lam.coeff[m] * alg.mult[m][s][k];
        if (!lsk.is_zero())
          lam2 += (ScalarField::variable(big, taus[s]) * ScalarField::variable(big, taus[k]))
                      .scaled(lsk);
      }
    SF eps_t(big);
    for (size_t j = 0; j < n; ++j)
      if (bp.flat_metric[bp.unit_direction][j] != GRational(0))
        eps_t += ScalarField::variable(big, j).scaled(bp.flat_metric[bp.unit_direction][j]);
    f += (lam2 * eps_t).scaled(GRational(Rational(1, 2)));

    for (size_t s = 0; s < r; ++s)
      for (size_t k = 0; k < r; ++k)
        for (size_t j = 0; j < r; ++j) {
          GRational gskj(0);
          for (size_t m = 0; m < r; ++m) gskj += alg.mult[m][s][k] * alg.gram[m][j];
          if (!gskj.is_zero())
            f += (ScalarField::variable(big, taus[s]) * ScalarField::variable(big, taus[k]) *
                  ScalarField::variable(big, taus[j]))
                     .scaled(gskj / GRational(6));
        }
    res.potential = f;
  }
  return res;
}

Report euler_check_extension(const ExtensionResult& res, const std::vector<Point>& pts,
                             double tol) {
  if (!res.euler) throw PreconditionError("extension result carries no Euler field");
  return check_euler(res.structure, *res.euler, GRational(2), pts, tol);
}
}  // namespace frob
