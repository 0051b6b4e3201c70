#include "frob/frobenius.hpp"

namespace frob {

PotentialFrobenius::PotentialFrobenius(ChartPtr ch, QMat metric, SF F, size_t unit_dir)
    : chart(std::move(ch)), flat_metric(std::move(metric)), potential(std::move(F)),
      unit_direction(unit_dir) {
  const size_t n = chart->dimension();
  if (flat_metric.size() != n) throw Error("flat metric dimension mismatch");
  for (size_t i = 0; i < n; ++i) {
    if (flat_metric[i].size() != n) throw Error("flat metric dimension mismatch");
    for (size_t j = 0; j < n; ++j)
      if (flat_metric[i][j] != flat_metric[j][i]) throw Error("flat metric not symmetric");
  }
  if (unit_direction >= n) throw Error("unit direction out of range");
  require_same_chart(chart, potential.chart(), "PotentialFrobenius");
}

SemisimpleData::SemisimpleData(ChartPtr ch, SF eta_potential)
    : chart(std::move(ch)), eta(std::move(eta_potential)) {
  require_same_chart(chart, eta.chart(), "SemisimpleData");
  for (size_t k = 0; k < chart->dimension(); ++k)
    if (eta.derivative(k).is_zero())
      throw DegenerateInput("metric potential has identically vanishing eta_" +
                            std::to_string(k + 1));
}

QMat qmat_inverse(const QMat& m) {
  const size_t n = m.size();
  // Gauss-Jordan over exact Gaussian rationals
  std::vector<std::vector<GRational>> a(n, std::vector<GRational>(2 * n, GRational(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = GRational(1);
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw DegenerateInput("constant matrix not invertible");
    std::swap(a[piv], a[col]);
    GRational inv = GRational(1) / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      GRational f = a[r][col];
      for (size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  QMat out(n, QVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return out;
}

Ten3 potential_third_derivatives(const PotentialFrobenius& p) {
  const size_t n = p.chart->dimension();
  Ten3 f3 = zero_ten3(p.chart, n, n, n);
  std::vector<SF> d1(n);
  for (size_t i = 0; i < n; ++i) d1[i] = p.potential.derivative(i);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      SF d2 = d1[i].derivative(j);
      for (size_t k = j; k < n; ++k) {
        SF d3 = d2.derivative(k);
        f3[i][j][k] = d3;
        f3[i][k][j] = d3;
        f3[j][i][k] = d3;
        f3[j][k][i] = d3;
        f3[k][i][j] = d3;
        f3[k][j][i] = d3;
      }
    }
  return f3;
}

AlmostFrobenius from_potential(const PotentialFrobenius& p) {
  const size_t n = p.chart->dimension();
  const ChartPtr& ch = p.chart;
  Ten3 f3 = potential_third_derivatives(p);
  QMat ginv = qmat_inverse(p.flat_metric);
  Ten3 c = zero_ten3(ch, n, n, n);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i; j < n; ++j) {
        SF acc(ch);
        for (size_t m = 0; m < n; ++m)
          if (ginv[k][m] != GRational(0)) acc += f3[i][j][m].scaled(ginv[k][m]);
        c[k][i][j] = acc;
        c[k][j][i] = acc;
      }
  Mat g = zero_mat(ch, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) g[i][j] = SF(ch, p.flat_metric[i][j]);
  Vec e = zero_vec(ch, n);
  e[p.unit_direction] = one_field(ch);
  VectorField unit(ch, std::move(e));
  return AlmostFrobenius{Metric(ch, std::move(g)), MultTensor(ch, std::move(c), unit), unit};
}

AlmostFrobenius from_semisimple(const SemisimpleData& s) {
  const size_t n = s.chart->dimension();
  const ChartPtr& ch = s.chart;
  Mat g = zero_mat(ch, n, n);
  for (size_t k = 0; k < n; ++k) g[k][k] = s.eta_k(k);
  Ten3 c = zero_ten3(ch, n, n, n);
  for (size_t k = 0; k < n; ++k) c[k][k][k] = one_field(ch);
  Vec e(n, one_field(ch));
  VectorField unit(ch, std::move(e));
  return AlmostFrobenius{Metric(ch, std::move(g)), MultTensor(ch, std::move(c), unit), unit};
}

Report wdvv_residual(const PotentialFrobenius& p, const std::vector<Point>& pts, double tol) {
  const size_t n = p.chart->dimension();
  const ChartPtr& ch = p.chart;
  Ten3 f3 = potential_third_derivatives(p);
  QMat ginv = qmat_inverse(p.flat_metric);
  double worst = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        for (size_t r = 0; r < n; ++r) {
          if (i == k) continue;
          SF lhs(ch), rhs(ch);
          for (size_t s = 0; s < n; ++s)
            for (size_t m = 0; m < n; ++m) {
              if (ginv[s][m] == GRational(0)) continue;
              lhs += (f3[i][j][s] * f3[m][k][r]).scaled(ginv[s][m]);
              rhs += (f3[k][j][s] * f3[m][i][r]).scaled(ginv[s][m]);
            }
          worst = std::max(worst, max_abs(lhs - rhs, pts));
        }
  Report rep;
  rep.points = pts;
  rep.add("wdvv", worst, tol);
  return rep;
}

Report check_almost_frobenius(const AlmostFrobenius& a, const std::vector<Point>& pts,
                              double tol) {
  const size_t n = a.dim();
  const ChartPtr& ch = a.chart();
  const Ten3& c = a.mult.c;
  Report rep;
  rep.points = pts;

  // associativity: (e_i . e_j) . e_k - e_i . (e_j . e_k)
  double assoc = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) {
          SF acc(ch);
          for (size_t m = 0; m < n; ++m) {
            if (!c[m][i][j].is_zero() && !c[l][m][k].is_zero()) acc += c[m][i][j] * c[l][m][k];
            if (!c[m][j][k].is_zero() && !c[l][i][m].is_zero()) acc -= c[m][j][k] * c[l][i][m];
          }
          assoc = std::max(assoc, max_abs(acc, pts));
        }
  rep.add("associativity", assoc, tol);

  // unit axiom: e . e_i = e_i
  double unit_res = 0.0;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) {
      SF acc(ch);
      for (size_t j = 0; j < n; ++j)
        if (!c[k][i][j].is_zero() && !a.unit.comp[j].is_zero()) acc += c[k][i][j] * a.unit.comp[j];
      if (k == i) acc -= one_field(ch);
      unit_res = std::max(unit_res, max_abs(acc, pts));
    }
  rep.add("unit", unit_res, tol);

  // invariance: lowered tensor totally symmetric
  double inv_res = 0.0;
  Ten3 low = zero_ten3(ch, n, n, n);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        SF acc(ch);
        for (size_t m = 0; m < n; ++m)
          if (!a.metric.g[k][m].is_zero() && !c[m][i][j].is_zero())
            acc += a.metric.g[k][m] * c[m][i][j];
        low[k][i][j] = acc;
      }
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        inv_res = std::max(inv_res, max_abs(low[k][i][j] - low[i][k][j], pts));
        inv_res = std::max(inv_res, max_abs(low[k][i][j] - low[k][j][i], pts));
      }
  rep.add("invariance", inv_res, tol);

  rep.add("commutativity", 0.0, tol);  // structural
  return rep;
}

Report check_f_manifold(const AlmostFrobenius& a, const std::vector<Point>& pts, double tol) {
  const size_t n = a.dim();
  const ChartPtr& ch = a.chart();
  Report rep;
  rep.points = pts;

  // Lie derivatives along the coordinate fields, reused across pairs
  std::vector<Ten3> lie_coord(n);
  for (size_t i = 0; i < n; ++i) {
    Vec e = zero_vec(ch, n);
    e[i] = one_field(ch);
    lie_coord[i] = lie_derivative_mult(VectorField(ch, e), a.mult);
  }

  double worst = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      Vec w(n, SF(ch));
      for (size_t k = 0; k < n; ++k) w[k] = a.mult.c[k][i][j];
      Ten3 lhs = lie_derivative_mult(VectorField(ch, w), a.mult);
      for (size_t z = 0; z < n; ++z)
        for (size_t t = z; t < n; ++t)
          for (size_t l = 0; l < n; ++l) {
            SF acc = lhs[l][z][t];
            for (size_t m = 0; m < n; ++m) {
              if (!a.mult.c[l][i][m].is_zero() && !lie_coord[j][m][z][t].is_zero())
                acc -= a.mult.c[l][i][m] * lie_coord[j][m][z][t];
              if (!a.mult.c[l][j][m].is_zero() && !lie_coord[i][m][z][t].is_zero())
                acc -= a.mult.c[l][j][m] * lie_coord[i][m][z][t];
            }
            worst = std::max(worst, max_abs(acc, pts));
          }
    }
  rep.add("f_manifold", worst, tol);
  return rep;
}

Report check_frobenius(const AlmostFrobenius& a, const std::vector<Point>& pts, double tol) {
  Report rep;
  rep.points = pts;
  rep.absorb(check_almost_frobenius(a, pts, tol), "");
  rep.absorb(check_f_manifold(a, pts, tol), "");
  rep.add("unit_parallel", max_abs(covariant_derivative(a.metric, a.unit), pts), tol);
  rep.add("curvature", riemann_max_residual(a.metric, pts), tol);
  return rep;
}

Report check_euler(const AlmostFrobenius& a, const VectorField& e, const GRational& d,
                   const std::vector<Point>& pts, double tol) {
  require_same_chart(a.chart(), e.chart, "check_euler");
  Report rep;
  rep.points = pts;
  Ten3 lc = lie_derivative_mult(e, a.mult);
  const size_t n = a.dim();
  double mres = 0.0;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        mres = std::max(mres, max_abs(lc[k][i][j] - a.mult.c[k][i][j], pts));
  rep.add("euler_mult", mres, tol);

  Mat lg = lie_derivative_metric(e, a.metric);
  double gres = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      gres = std::max(gres, max_abs(lg[i][j] - a.metric.g[i][j].scaled(d), pts));
  rep.add("euler_metric", gres, tol);

  // the paper pins d = 2 when g(e,e) != 0; reported, not enforced
  SF gee(a.chart());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (!a.metric.g[i][j].is_zero()) gee += a.metric.g[i][j] * a.unit.comp[i] * a.unit.comp[j];
  double gee_abs = max_abs(gee, pts);
  rep.add_info("g_unit_unit_nonzero_expects_d2", gee_abs > tol && d != GRational(2) ? 1.0 : 0.0);
  return rep;
}

bool rotation_coefficients_nonvanishing(const SemisimpleData& s, const std::vector<Point>& pts,
                                        double tol) {
  const size_t n = s.chart->dimension();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      SF eij = s.eta.derivative(i).derivative(j);
      for (const auto& p : pts)
        if (abs_double(eij.eval(p)) <= tol) return false;
    }
  return true;
}

bool metric_positive_definite(const Metric& g, const std::vector<Point>& pts) {
  const size_t n = g.dim();
  for (size_t k = 1; k <= n; ++k) {
    Mat minor(k, Vec(k, SF(g.chart)));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) minor[i][j] = g.g[i][j];
    SF det = determinant(minor);
    for (const auto& p : pts) {
      Complex50 v = det.eval(p);
      if (!(v.real() > 0) || abs(v.imag()) > 1e-30) return false;
    }
  }
  return true;
}
}  // namespace frob
