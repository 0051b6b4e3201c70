#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frob/chart.hpp"
#include "frob/numbers.hpp"

namespace frob {

// Rational linear form in the chart variables; the only admissible argument
// of exp.  No constant term (e^c would leave the rational coefficient ring).
struct LinForm {
  std::vector<GRational> coeff;  // size = chart var_count

  bool is_zero() const {
    for (const auto& c : coeff)
      if (!c.is_zero()) return false;
    return true;
  }
  friend bool operator<(const LinForm& a, const LinForm& b) { return a.coeff < b.coeff; }
  friend bool operator==(const LinForm& a, const LinForm& b) { return a.coeff == b.coeff; }
};

struct TermKey {
  std::vector<uint32_t> mono;  // exponent per variable
  LinForm ell;                 // term carries x^mono * exp(ell(x))

  friend bool operator<(const TermKey& a, const TermKey& b) {
    if (a.mono != b.mono) return a.mono < b.mono;
    return a.ell < b.ell;
  }
  friend bool operator==(const TermKey& a, const TermKey& b) {
    return a.mono == b.mono && a.ell == b.ell;
  }
};

// Finite sum of coeff * x^mono * exp(ell(x)) with exact Gaussian-rational
// coefficients.  Closed under +,-,* and partial differentiation.
class ExpPolynomial {
 public:
  ExpPolynomial() = default;
  explicit ExpPolynomial(ChartPtr chart) : chart_(std::move(chart)) {}
  ExpPolynomial(ChartPtr chart, const GRational& c);

  static ExpPolynomial variable(const ChartPtr& chart, size_t var);
  static ExpPolynomial exponential(const ChartPtr& chart, const LinForm& ell);

  const ChartPtr& chart() const { return chart_; }
  const std::map<TermKey, GRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool has_exp() const;
  // constant value if the polynomial is a constant
  std::optional<GRational> constant_value() const;

  void add_term(const TermKey& k, const GRational& c);

  ExpPolynomial operator-() const;
  friend ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b);
  friend ExpPolynomial operator-(const ExpPolynomial& a, const ExpPolynomial& b);
  friend ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b);
  ExpPolynomial scaled(const GRational& c) const;

  ExpPolynomial derivative(size_t var) const;
  // swap conjugate variable slots and conjugate all coefficients
  ExpPolynomial conjugated() const;
  // same terms on a chart containing this chart's variables
  ExpPolynomial on_chart(const ChartPtr& target) const;

  GRational eval_exact(const std::vector<GRational>& values) const;
  Complex50 eval(const std::vector<Complex50>& values) const;

  friend bool operator==(const ExpPolynomial& a, const ExpPolynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  ChartPtr chart_;
  std::map<TermKey, GRational> terms_;
};

// Exact fraction of exp-polynomials, normalized to a monic denominator
// (leading canonical term 1).  Equality is decided by cross-multiplication,
// never by representation.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(ChartPtr chart)
      : chart_(chart), num_(chart), den_(ExpPolynomial(chart, GRational(1))) {}
  ScalarField(ChartPtr chart, const GRational& c)
      : chart_(chart), num_(chart, c), den_(ExpPolynomial(chart, GRational(1))) {}
  ScalarField(ExpPolynomial num, ExpPolynomial den);

  static ScalarField variable(const ChartPtr& chart, size_t var);
  static ScalarField variable(const ChartPtr& chart, const std::string& name);
  static ScalarField exponential(const ChartPtr& chart, const LinForm& ell);
  static ScalarField constant(const ChartPtr& chart, const GRational& c) {
    return ScalarField(chart, c);
  }

  const ChartPtr& chart() const { return chart_; }
  const ExpPolynomial& num() const { return num_; }
  const ExpPolynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool has_exp() const { return num_.has_exp() || den_.has_exp(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  std::optional<GRational> constant_value() const;

  ScalarField operator-() const;
  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator/(const ScalarField& a, const ScalarField& b);
  ScalarField& operator+=(const ScalarField& o) { return *this = *this + o; }
  ScalarField& operator-=(const ScalarField& o) { return *this = *this - o; }
  ScalarField& operator*=(const ScalarField& o) { return *this = *this * o; }
  ScalarField& operator/=(const ScalarField& o) { return *this = *this / o; }
  ScalarField scaled(const GRational& c) const;
  ScalarField pow(unsigned k) const;

  ScalarField derivative(size_t var) const;
  ScalarField derivative(const std::string& var_name) const;
  ScalarField conjugated() const;
  ScalarField on_chart(const ChartPtr& target) const;

  // exact value; throws if any exp term is present or the denominator
  // vanishes at the point
  GRational eval_exact(const Point& p) const;
  // high-precision value (>= 50 significant digits); conjugate slots bound
  Complex50 eval(const Point& p) const;

  // structural identity (same normalized representation)
  friend bool operator==(const ScalarField& a, const ScalarField& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize();
  ChartPtr chart_;
  ExpPolynomial num_, den_;
};

// value equality by cross-multiplication
bool field_equal(const ScalarField& a, const ScalarField& b);

std::string to_string(const ScalarField& f);
std::string to_string(const ExpPolynomial& p);
}  // namespace frob
