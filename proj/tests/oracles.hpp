#pragma once

// Test-only numeric oracles, independent of the symbolic implementation paths
// they check: central finite differences of evaluations and flow transport
// for Lie derivatives.

#include "frob/tensor.hpp"

namespace frob::oracle {

inline Point shifted(const Point& p, size_t var, const Rational& dt) {
  auto xs = p.coords;
  xs[var].re += dt;
  return Point(p.chart, xs);
}

// central finite difference of a field evaluation
inline Complex50 fd_partial(const SF& f, const Point& p, size_t var,
                            const Rational& h = Rational(1, 10000)) {
  return (f.eval(shifted(p, var, h)) - f.eval(shifted(p, var, -h))) / Complex50(2 * Real50(h));
}

// Christoffel symbols from finite differences of the metric evaluations only
inline std::vector<std::vector<std::vector<Complex50>>> fd_christoffel(const Metric& g,
                                                                       const Point& p) {
  const size_t n = g.dim();
  std::vector<std::vector<Complex50>> gv(n, std::vector<Complex50>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) gv[i][j] = g.g[i][j].eval(p);
  // numeric inverse (Gauss-Jordan, 50-digit)
  std::vector<std::vector<Complex50>> inv(n, std::vector<Complex50>(n, Complex50(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = Complex50(1);
  auto a = gv;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Complex50 d = a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      Complex50 f = a[r][col];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  std::vector<std::vector<std::vector<Complex50>>> dgv(
      n, std::vector<std::vector<Complex50>>(n, std::vector<Complex50>(n)));
  for (size_t l = 0; l < n; ++l)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) dgv[l][i][j] = fd_partial(g.g[i][j], p, l);
  std::vector<std::vector<std::vector<Complex50>>> gamma(
      n, std::vector<std::vector<Complex50>>(n, std::vector<Complex50>(n, Complex50(0))));
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Complex50 acc(0);
        for (size_t l = 0; l < n; ++l)
          acc += inv[k][l] * (dgv[i][j][l] + dgv[j][i][l] - dgv[l][i][j]);
        gamma[k][i][j] = acc / Complex50(2);
      }
  return gamma;
}

// flow of X from p for time s (RK4)
inline std::vector<Complex50> flow(const VectorField& x, const Point& p, const Real50& s,
                                   int steps = 4) {
  const size_t n = x.dim();
  std::vector<Complex50> y(n);
  for (size_t i = 0; i < n; ++i) y[i] = p.coords[i].to_complex();
  auto rhs = [&](const std::vector<Complex50>& v) {
    std::vector<Complex50> out(n);
    std::vector<Complex50> vals;
    vals.reserve(x.chart->var_count());
    for (auto& z : v) vals.push_back(z);
    if (x.chart->domain() == Domain::Complex)
      for (auto& z : v) vals.push_back(conj(z));
    for (size_t i = 0; i < n; ++i) out[i] = x.comp[i].num().eval(vals) / x.comp[i].den().eval(vals);
    return out;
  };
  Real50 h = s / steps;
  for (int st = 0; st < steps; ++st) {
    auto k1 = rhs(y);
    std::vector<Complex50> t(n);
    for (size_t i = 0; i < n; ++i) t[i] = y[i] + Complex50(h / 2) * k1[i];
    auto k2 = rhs(t);
    for (size_t i = 0; i < n; ++i) t[i] = y[i] + Complex50(h / 2) * k2[i];
    auto k3 = rhs(t);
    for (size_t i = 0; i < n; ++i) t[i] = y[i] + Complex50(h) * k3[i];
    auto k4 = rhs(t);
    for (size_t i = 0; i < n; ++i)
      y[i] += Complex50(h / 6) * (k1[i] + Complex50(2) * (k2[i] + k3[i]) + k4[i]);
  }
  return y;
}

// evaluate a (1,2)-tensor numerically at complex coordinates
inline std::vector<std::vector<std::vector<Complex50>>> eval_ten3(
    const Ten3& c, const ChartPtr& chart, const std::vector<Complex50>& at) {
  std::vector<Complex50> vals = at;
  if (chart->domain() == Domain::Complex)
    for (auto& z : at) vals.push_back(conj(z));
  const size_t n = c.size();
  std::vector<std::vector<std::vector<Complex50>>> out(
      n, std::vector<std::vector<Complex50>>(n, std::vector<Complex50>(n)));
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        out[k][i][j] = c[k][i][j].num().eval(vals) / c[k][i][j].den().eval(vals);
  return out;
}

// Lie derivative of a (1,2)-tensor along X by flow transport:
//   (L_X c)(p) = d/ds|_0 [ (phi_s)^* c ](p)
// with the pullback computed from finite-difference Jacobians of the flow.
inline std::vector<std::vector<std::vector<Complex50>>> flow_lie_mult(const VectorField& x,
                                                                      const Ten3& c,
                                                                      const Point& p) {
  const size_t n = x.dim();
  const Rational h_jac(1, 100000);
  Real50 s = Real50(1) / 1000;

  auto pullback_at = [&](const Real50& time) {
    // flow the base point
    auto q = flow(x, p, time);
    // Jacobian D phi_time at p by central differences
    std::vector<std::vector<Complex50>> jac(n, std::vector<Complex50>(n));
    for (size_t j = 0; j < n; ++j) {
      auto qp = flow(x, shifted(p, j, h_jac), time);
      auto qm = flow(x, shifted(p, j, -h_jac), time);
      for (size_t i = 0; i < n; ++i) jac[i][j] = (qp[i] - qm[i]) / Complex50(2 * Real50(h_jac));
    }
    // numeric inverse of jac
    std::vector<std::vector<Complex50>> inv(n, std::vector<Complex50>(n, Complex50(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = Complex50(1);
    auto a = jac;
    for (size_t col = 0; col < n; ++col) {
      size_t piv = col;
      for (size_t r = col + 1; r < n; ++r)
        if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
      std::swap(a[piv], a[col]);
      std::swap(inv[piv], inv[col]);
      Complex50 d = a[col][col];
      for (size_t jj = 0; jj < n; ++jj) {
        a[col][jj] /= d;
        inv[col][jj] /= d;
      }
      for (size_t r = 0; r < n; ++r) {
        if (r == col) continue;
        Complex50 f = a[r][col];
        for (size_t jj = 0; jj < n; ++jj) {
          a[r][jj] -= f * a[col][jj];
          inv[r][jj] -= f * inv[col][jj];
        }
      }
    }
    auto cv = eval_ten3(c, x.chart, q);
    // (phi^* c)^k_ij = inv[k][a] c^a_bc jac[b][i] jac[c][j]
    std::vector<std::vector<std::vector<Complex50>>> out(
        n, std::vector<std::vector<Complex50>>(n, std::vector<Complex50>(n, Complex50(0))));
    for (size_t k = 0; k < n; ++k)
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          Complex50 acc(0);
          for (size_t a1 = 0; a1 < n; ++a1)
            for (size_t b = 0; b < n; ++b)
              for (size_t cc = 0; cc < n; ++cc)
                acc += inv[k][a1] * cv[a1][b][cc] * jac[b][i] * jac[cc][j];
          out[k][i][j] = acc;
        }
    return out;
  };

  auto plus = pullback_at(s);
  auto minus = pullback_at(-s);
  std::vector<std::vector<std::vector<Complex50>>> out(
      n, std::vector<std::vector<Complex50>>(n, std::vector<Complex50>(n)));
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        out[k][i][j] = (plus[k][i][j] - minus[k][i][j]) / Complex50(2 * s);
  return out;
}

// same idea for a (0,2)-tensor (metric)
inline std::vector<std::vector<Complex50>> flow_lie_metric(const VectorField& x, const Mat& g,
                                                           const Point& p) {
  const size_t n = x.dim();
  const Rational h_jac(1, 100000);
  Real50 s = Real50(1) / 1000;

  auto pullback_at = [&](const Real50& time) {
    auto q = flow(x, p, time);
    std::vector<std::vector<Complex50>> jac(n, std::vector<Complex50>(n));
    for (size_t j = 0; j < n; ++j) {
      auto qp = flow(x, shifted(p, j, h_jac), time);
      auto qm = flow(x, shifted(p, j, -h_jac), time);
      for (size_t i = 0; i < n; ++i) jac[i][j] = (qp[i] - qm[i]) / Complex50(2 * Real50(h_jac));
    }
    std::vector<Complex50> vals = q;
    if (x.chart->domain() == Domain::Complex)
      for (auto& z : q) vals.push_back(conj(z));
    std::vector<std::vector<Complex50>> gv(n, std::vector<Complex50>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) gv[i][j] = g[i][j].num().eval(vals) / g[i][j].den().eval(vals);
    std::vector<std::vector<Complex50>> out(n, std::vector<Complex50>(n, Complex50(0)));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Complex50 acc(0);
        for (size_t a1 = 0; a1 < n; ++a1)
          for (size_t b = 0; b < n; ++b) acc += gv[a1][b] * jac[a1][i] * jac[b][j];
        out[i][j] = acc;
      }
    return out;
  };

  auto plus = pullback_at(s);
  auto minus = pullback_at(-s);
  std::vector<std::vector<Complex50>> out(n, std::vector<Complex50>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = (plus[i][j] - minus[i][j]) / Complex50(2 * s);
  return out;
}
}  // namespace frob::oracle
