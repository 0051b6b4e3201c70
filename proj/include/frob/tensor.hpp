#pragma once

#include "frob/report.hpp"
#include "frob/sample.hpp"
#include "frob/scalar.hpp"

namespace frob {

using SF = ScalarField;
using Vec = std::vector<SF>;
using Mat = std::vector<Vec>;
using Ten3 = std::vector<Mat>;  // [k][i][j]

// ---- small dense helpers over ScalarField ---------------------------------
SF zero_field(const ChartPtr& c);
SF one_field(const ChartPtr& c);
Vec zero_vec(const ChartPtr& c, size_t n);
Mat zero_mat(const ChartPtr& c, size_t n, size_t m);
Mat identity_mat(const ChartPtr& c, size_t n);
Ten3 zero_ten3(const ChartPtr& c, size_t n0, size_t n1, size_t n2);

Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_scale(const Mat& a, const SF& s);
Mat mat_transpose(const Mat& a);
Mat commutator(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& v);
SF dot(const Vec& a, const Vec& b);
Mat mat_derivative(const Mat& a, size_t var);
Vec vec_derivative(const Vec& a, size_t var);

SF determinant(const Mat& a);
// exact inverse via adjugate / determinant
Mat mat_inverse(const Mat& a);

Mat lift_mat(const Mat& a, const ChartPtr& target);
Vec lift_vec(const Vec& a, const ChartPtr& target);
Ten3 lift_ten3(const Ten3& a, const ChartPtr& target);

bool mat_is_zero(const Mat& a);
bool vec_is_zero(const Vec& a);
bool ten3_is_zero(const Ten3& a);
bool mat_equal(const Mat& a, const Mat& b);
bool ten3_equal(const Ten3& a, const Ten3& b);

// max |component| over the sample points (non-finite evaluations rethrown)
double max_abs(const SF& f, const std::vector<Point>& pts);
double max_abs(const Vec& v, const std::vector<Point>& pts);
double max_abs(const Mat& m, const std::vector<Point>& pts);
double max_abs(const Ten3& t, const std::vector<Point>& pts);
double max_abs(const std::vector<Ten3>& t, const std::vector<Point>& pts);

// ---- chart-level tensor objects -------------------------------------------

struct Metric {
  ChartPtr chart;
  Mat g;  // symmetric, checked

  Metric() = default;
  Metric(ChartPtr c, Mat components);
  size_t dim() const { return g.size(); }
};

struct VectorField {
  ChartPtr chart;
  Vec comp;

  VectorField() = default;
  VectorField(ChartPtr c, Vec components);
  size_t dim() const { return comp.size(); }
};

struct MultTensor {
  ChartPtr chart;
  Ten3 c;  // c[k][i][j] = component k of e_i . e_j; symmetric in (i,j), checked
  VectorField unit;

  MultTensor() = default;
  MultTensor(ChartPtr chart, Ten3 components, VectorField unit_field);
  size_t dim() const { return c.size(); }
};

// Levi-Civita symbols of g, exact.  Throws DegenerateInput when det g == 0
// identically.
Ten3 christoffel(const Metric& g);

// curvature R(e_i,e_j)e_k = riemann[l][i][j][k] e_l with the convention
// R(X,Y) = D_X D_Y - D_Y D_X - D_[X,Y]
using Ten4 = std::vector<Ten3>;
Ten4 riemann(const Metric& g);
double riemann_max_residual(const Metric& g, const std::vector<Point>& pts);

// Lie derivatives along X, exact
Ten3 lie_derivative_mult(const VectorField& x, const MultTensor& c);
Mat lie_derivative_metric(const VectorField& x, const Metric& g);
// commutator [X, Y]
VectorField lie_bracket(const VectorField& x, const VectorField& y);

// (nabla X)^k_i with the Levi-Civita symbols of g
Mat covariant_derivative(const Metric& g, const VectorField& x);
bool is_parallel(const Metric& g, const VectorField& x, const std::vector<Point>& pts, double tol);

// exterior derivative of a 1-form: (d beta)_{ij} = d_i beta_j - d_j beta_i
Mat exterior_derivative(const ChartPtr& chart, const Vec& beta);
}  // namespace frob
