#include "frob/tensor.hpp"

namespace frob {

SF zero_field(const ChartPtr& c) { return SF(c); }
SF one_field(const ChartPtr& c) { return SF(c, GRational(1)); }

Vec zero_vec(const ChartPtr& c, size_t n) { return Vec(n, SF(c)); }

Mat zero_mat(const ChartPtr& c, size_t n, size_t m) { return Mat(n, Vec(m, SF(c))); }

Mat identity_mat(const ChartPtr& c, size_t n) {
  Mat a = zero_mat(c, n, n);
  for (size_t i = 0; i < n; ++i) a[i][i] = one_field(c);
  return a;
}

Ten3 zero_ten3(const ChartPtr& c, size_t n0, size_t n1, size_t n2) {
  return Ten3(n0, zero_mat(c, n1, n2));
}

Mat mat_add(const Mat& a, const Mat& b) {
  Mat r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  Mat r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  const size_t n = a.size(), m = b[0].size(), k = b.size();
  const ChartPtr& c = a[0][0].chart();
  Mat r = zero_mat(c, n, m);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) {
      SF acc(c);
      for (size_t l = 0; l < k; ++l)
        if (!a[i][l].is_zero() && !b[l][j].is_zero()) acc += a[i][l] * b[l][j];
      r[i][j] = acc;
    }
  return r;
}

Mat mat_scale(const Mat& a, const SF& s) {
  Mat r = a;
  for (auto& row : r)
    for (auto& e : row) e = e * s;
  return r;
}

Mat mat_transpose(const Mat& a) {
  Mat r(a[0].size(), Vec(a.size(), a[0][0]));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
  return r;
}

Mat commutator(const Mat& a, const Mat& b) { return mat_sub(mat_mul(a, b), mat_mul(b, a)); }

Vec mat_vec(const Mat& a, const Vec& v) {
  const ChartPtr& c = v.empty() ? a[0][0].chart() : v[0].chart();
  Vec r(a.size(), SF(c));
  for (size_t i = 0; i < a.size(); ++i) {
    SF acc(c);
    for (size_t j = 0; j < v.size(); ++j)
      if (!a[i][j].is_zero() && !v[j].is_zero()) acc += a[i][j] * v[j];
    r[i] = acc;
  }
  return r;
}

SF dot(const Vec& a, const Vec& b) {
  SF acc(a[0].chart());
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
  return acc;
}

Mat mat_derivative(const Mat& a, size_t var) {
  Mat r = a;
  for (auto& row : r)
    for (auto& e : row) e = e.derivative(var);
  return r;
}

Vec vec_derivative(const Vec& a, size_t var) {
  Vec r = a;
  for (auto& e : r) e = e.derivative(var);
  return r;
}

namespace {
SF minor_det(const Mat& a, const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
  const size_t n = rows.size();
  const ChartPtr& c = a[0][0].chart();
  if (n == 0) return one_field(c);
  if (n == 1) return a[rows[0]][cols[0]];
  SF acc(c);
  int sign = 1;
  for (size_t j = 0; j < n; ++j) {
    const SF& pivot = a[rows[0]][cols[j]];
    if (!pivot.is_zero()) {
      std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
      std::vector<size_t> sub_cols;
      sub_cols.reserve(n - 1);
      for (size_t l = 0; l < n; ++l)
        if (l != j) sub_cols.push_back(cols[l]);
      SF term = pivot * minor_det(a, sub_rows, sub_cols);
      acc = (sign > 0) ? acc + term : acc - term;
    }
    sign = -sign;
  }
  return acc;
}
}  // namespace

SF determinant(const Mat& a) {
  std::vector<size_t> idx(a.size());
  for (size_t i = 0; i < a.size(); ++i) idx[i] = i;
  return minor_det(a, idx, idx);
}

Mat mat_inverse(const Mat& a) {
  const size_t n = a.size();
  SF det = determinant(a);
  if (det.is_zero()) throw DegenerateInput("matrix of fields is singular");
  const ChartPtr& c = a[0][0].chart();
  Mat inv = zero_mat(c, n, n);
  std::vector<size_t> all(n);
  for (size_t i = 0; i < n; ++i) all[i] = i;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      std::vector<size_t> rows, cols;
      for (size_t l = 0; l < n; ++l) {
        if (l != j) rows.push_back(l);
        if (l != i) cols.push_back(l);
      }
      SF cof = minor_det(a, rows, cols);
      if ((i + j) % 2) cof = -cof;
      inv[i][j] = cof / det;
    }
  }
  return inv;
}

Mat lift_mat(const Mat& a, const ChartPtr& target) {
  Mat r = a;
  for (auto& row : r)
    for (auto& e : row) e = e.on_chart(target);
  return r;
}

Vec lift_vec(const Vec& a, const ChartPtr& target) {
  Vec r = a;
  for (auto& e : r) e = e.on_chart(target);
  return r;
}

Ten3 lift_ten3(const Ten3& a, const ChartPtr& target) {
  Ten3 r = a;
  for (auto& m : r) m = lift_mat(m, target);
  return r;
}

bool vec_is_zero(const Vec& a) {
  for (const auto& e : a)
    if (!e.is_zero()) return false;
  return true;
}

bool mat_is_zero(const Mat& a) {
  for (const auto& row : a)
    if (!vec_is_zero(row)) return false;
  return true;
}

bool ten3_is_zero(const Ten3& a) {
  for (const auto& m : a)
    if (!mat_is_zero(m)) return false;
  return true;
}

bool mat_equal(const Mat& a, const Mat& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (!field_equal(a[i][j], b[i][j])) return false;
  }
  return true;
}

bool ten3_equal(const Ten3& a, const Ten3& b) {
  if (a.size() != b.size()) return false;
  for (size_t k = 0; k < a.size(); ++k)
    if (!mat_equal(a[k], b[k])) return false;
  return true;
}

double max_abs(const SF& f, const std::vector<Point>& pts) {
  if (f.is_zero()) return 0.0;
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, abs_double(f.eval(p)));
  return m;
}

double max_abs(const Vec& v, const std::vector<Point>& pts) {
  double m = 0.0;
  for (const auto& e : v) m = std::max(m, max_abs(e, pts));
  return m;
}

double max_abs(const Mat& a, const std::vector<Point>& pts) {
  double m = 0.0;
  for (const auto& row : a) m = std::max(m, max_abs(row, pts));
  return m;
}

double max_abs(const Ten3& t, const std::vector<Point>& pts) {
  double m = 0.0;
  for (const auto& a : t) m = std::max(m, max_abs(a, pts));
  return m;
}

double max_abs(const std::vector<Ten3>& t, const std::vector<Point>& pts) {
  double m = 0.0;
  for (const auto& a : t) m = std::max(m, max_abs(a, pts));
  return m;
}

// ---------------------------------------------------------------------------

Metric::Metric(ChartPtr c, Mat components) : chart(std::move(c)), g(std::move(components)) {
  const size_t n = chart->dimension();
  if (g.size() != n) throw Error("metric dimension mismatch");
  for (size_t i = 0; i < n; ++i) {
    if (g[i].size() != n) throw Error("metric dimension mismatch");
    for (size_t j = i + 1; j < n; ++j)
      if (!field_equal(g[i][j], g[j][i])) throw Error("metric is not symmetric");
  }
}

VectorField::VectorField(ChartPtr c, Vec components)
    : chart(std::move(c)), comp(std::move(components)) {
  if (comp.size() != chart->dimension()) throw Error("vector field dimension mismatch");
}

MultTensor::MultTensor(ChartPtr ch, Ten3 components, VectorField unit_field)
    : chart(std::move(ch)), c(std::move(components)), unit(std::move(unit_field)) {
  const size_t n = chart->dimension();
  require_same_chart(chart, unit.chart, "MultTensor");
  if (c.size() != n) throw Error("multiplication tensor dimension mismatch");
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (!field_equal(c[k][i][j], c[k][j][i]))
          throw Error("multiplication tensor is not commutative");
}

Ten3 christoffel(const Metric& g) {
  const size_t n = g.dim();
  const ChartPtr& c = g.chart;
  SF det = determinant(g.g);
  if (det.is_zero()) throw DegenerateInput("metric degenerate as a field (det identically zero)");
  Mat ginv = mat_inverse(g.g);
  // dg[l][i][j] = d_l g_ij
  Ten3 dg = zero_ten3(c, n, n, n);
  for (size_t l = 0; l < n; ++l)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) dg[l][i][j] = g.g[i][j].derivative(l);
  Ten3 gamma = zero_ten3(c, n, n, n);
  GRational half(Rational(1, 2));
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i; j < n; ++j) {
        SF acc(c);
        for (size_t l = 0; l < n; ++l) {
          if (ginv[k][l].is_zero()) continue;
          acc += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        }
        gamma[k][i][j] = acc.scaled(half);
        gamma[k][j][i] = gamma[k][i][j];
      }
  return gamma;
}

Ten4 riemann(const Metric& g) {
  const size_t n = g.dim();
  const ChartPtr& c = g.chart;
  Ten3 gamma = christoffel(g);
  // R[l][i][j][k]: component l of R(e_i, e_j) e_k
  Ten4 r(n, zero_ten3(c, n, n, n));
  for (size_t l = 0; l < n; ++l)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (size_t k = 0; k < n; ++k) {
          SF acc = gamma[l][j][k].derivative(i) - gamma[l][i][k].derivative(j);
          for (size_t m = 0; m < n; ++m) {
            if (!gamma[l][i][m].is_zero() && !gamma[m][j][k].is_zero())
              acc += gamma[l][i][m] * gamma[m][j][k];
            if (!gamma[l][j][m].is_zero() && !gamma[m][i][k].is_zero())
              acc -= gamma[l][j][m] * gamma[m][i][k];
          }
          r[l][i][j][k] = acc;
        }
      }
  return r;
}

double riemann_max_residual(const Metric& g, const std::vector<Point>& pts) {
  Ten4 r = riemann(g);
  double m = 0.0;
  bool any = false;
  for (const auto& p : pts) {
    try {
      for (const auto& t : r) m = std::max(m, max_abs(t, {p}));
      any = true;
    } catch (const SingularPoint&) {
      continue;  // singular sample point skipped
    }
  }
  if (!any) throw SingularPoint("all sample points singular for curvature");
  return m;
}

Ten3 lie_derivative_mult(const VectorField& x, const MultTensor& ct) {
  require_same_chart(x.chart, ct.chart, "lie_derivative_mult");
  const size_t n = ct.dim();
  const ChartPtr& ch = ct.chart;
  // dX[m][k] = d_m X^k
  Mat dX = zero_mat(ch, n, n);
  for (size_t m = 0; m < n; ++m)
    for (size_t k = 0; k < n; ++k) dX[m][k] = x.comp[k].derivative(m);
  Ten3 r = zero_ten3(ch, n, n, n);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i; j < n; ++j) {
        SF acc(ch);
        for (size_t m = 0; m < n; ++m) {
          if (!x.comp[m].is_zero()) acc += x.comp[m] * ct.c[k][i][j].derivative(m);
          if (!ct.c[m][i][j].is_zero() && !dX[m][k].is_zero()) acc -= ct.c[m][i][j] * dX[m][k];
          if (!ct.c[k][m][j].is_zero() && !dX[i][m].is_zero()) acc += ct.c[k][m][j] * dX[i][m];
          if (!ct.c[k][i][m].is_zero() && !dX[j][m].is_zero()) acc += ct.c[k][i][m] * dX[j][m];
        }
        r[k][i][j] = acc;
        r[k][j][i] = acc;
      }
  return r;
}

Mat lie_derivative_metric(const VectorField& x, const Metric& g) {
  require_same_chart(x.chart, g.chart, "lie_derivative_metric");
  const size_t n = g.dim();
  const ChartPtr& ch = g.chart;
  Mat r = zero_mat(ch, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      SF acc(ch);
      for (size_t m = 0; m < n; ++m) {
        if (!x.comp[m].is_zero()) acc += x.comp[m] * g.g[i][j].derivative(m);
        if (!g.g[m][j].is_zero()) acc += g.g[m][j] * x.comp[m].derivative(i);
        if (!g.g[i][m].is_zero()) acc += g.g[i][m] * x.comp[m].derivative(j);
      }
      r[i][j] = acc;
      r[j][i] = acc;
    }
  return r;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart, y.chart, "lie_bracket");
  const size_t n = x.dim();
  Vec r = zero_vec(x.chart, n);
  for (size_t k = 0; k < n; ++k) {
    SF acc(x.chart);
    for (size_t m = 0; m < n; ++m) {
      if (!x.comp[m].is_zero()) acc += x.comp[m] * y.comp[k].derivative(m);
      if (!y.comp[m].is_zero()) acc -= y.comp[m] * x.comp[k].derivative(m);
    }
    r[k] = acc;
  }
  return VectorField(x.chart, std::move(r));
}

Mat covariant_derivative(const Metric& g, const VectorField& x) {
  require_same_chart(g.chart, x.chart, "covariant_derivative");
  const size_t n = g.dim();
  Ten3 gamma = christoffel(g);
  Mat r = zero_mat(g.chart, n, n);  // r[k][i] = (nabla_i X)^k
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) {
      SF acc = x.comp[k].derivative(i);
      for (size_t m = 0; m < n; ++m)
        if (!gamma[k][i][m].is_zero() && !x.comp[m].is_zero()) acc += gamma[k][i][m] * x.comp[m];
      r[k][i] = acc;
    }
  return r;
}

bool is_parallel(const Metric& g, const VectorField& x, const std::vector<Point>& pts,
                 double tol) {
  return max_abs(covariant_derivative(g, x), pts) <= tol;
}

Mat exterior_derivative(const ChartPtr& chart, const Vec& beta) {
  const size_t n = beta.size();
  Mat r = zero_mat(chart, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      r[i][j] = beta[j].derivative(i) - beta[i].derivative(j);
    }
  return r;
}
}  // namespace frob
