#include "frob/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace frob {

ExpPolynomial::ExpPolynomial(ChartPtr chart, const GRational& c) : chart_(std::move(chart)) {
  if (!c.is_zero()) {
    TermKey k;
    k.mono.assign(chart_->var_count(), 0);
    k.ell.coeff.assign(chart_->var_count(), GRational(0));
    terms_.emplace(std::move(k), c);
  }
}

ExpPolynomial ExpPolynomial::variable(const ChartPtr& chart, size_t var) {
  if (var >= chart->var_count()) throw Error("variable index out of range");
  ExpPolynomial p(chart);
  TermKey k;
  k.mono.assign(chart->var_count(), 0);
  k.mono[var] = 1;
  k.ell.coeff.assign(chart->var_count(), GRational(0));
  p.terms_.emplace(std::move(k), GRational(1));
  return p;
}

ExpPolynomial ExpPolynomial::exponential(const ChartPtr& chart, const LinForm& ell) {
  if (ell.coeff.size() != chart->var_count()) throw Error("linear form size mismatch");
  ExpPolynomial p(chart);
  TermKey k;
  k.mono.assign(chart->var_count(), 0);
  k.ell = ell;
  p.terms_.emplace(std::move(k), GRational(1));
  return p;
}

bool ExpPolynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const TermKey& k = terms_.begin()->first;
  return std::all_of(k.mono.begin(), k.mono.end(), [](uint32_t e) { return e == 0; }) &&
         k.ell.is_zero();
}

bool ExpPolynomial::has_exp() const {
  for (const auto& [k, c] : terms_)
    if (!k.ell.is_zero()) return true;
  return false;
}

std::optional<GRational> ExpPolynomial::constant_value() const {
  if (terms_.empty()) return GRational(0);
  if (!is_constant()) return std::nullopt;
  return terms_.begin()->second;
}

void ExpPolynomial::add_term(const TermKey& k, const GRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExpPolynomial ExpPolynomial::operator-() const {
  ExpPolynomial r(chart_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b) {
  require_same_chart(a.chart_, b.chart_, "ExpPolynomial +");
  ExpPolynomial r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, c);
  return r;
}

ExpPolynomial operator-(const ExpPolynomial& a, const ExpPolynomial& b) {
  require_same_chart(a.chart_, b.chart_, "ExpPolynomial -");
  ExpPolynomial r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, -c);
  return r;
}

ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b) {
  require_same_chart(a.chart_, b.chart_, "ExpPolynomial *");
  ExpPolynomial r(a.chart_);
  const size_t nv = a.chart_->var_count();
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      TermKey k;
      k.mono.resize(nv);
      k.ell.coeff.resize(nv);
      for (size_t i = 0; i < nv; ++i) {
        k.mono[i] = ka.mono[i] + kb.mono[i];
        k.ell.coeff[i] = ka.ell.coeff[i] + kb.ell.coeff[i];
      }
      r.add_term(k, ca * cb);
    }
  }
  return r;
}

ExpPolynomial ExpPolynomial::scaled(const GRational& c) const {
  ExpPolynomial r(chart_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
  return r;
}

ExpPolynomial ExpPolynomial::derivative(size_t var) const {
  if (var >= chart_->var_count()) throw Error("unknown variable in derivative");
  ExpPolynomial r(chart_);
  for (const auto& [k, c] : terms_) {
    if (k.mono[var] > 0) {
      TermKey k2 = k;
      k2.mono[var] -= 1;
      r.add_term(k2, c * GRational(Rational(k.mono[var])));
    }
    const GRational& lc = k.ell.coeff[var];
    if (!lc.is_zero()) r.add_term(k, c * lc);
  }
  return r;
}

ExpPolynomial ExpPolynomial::conjugated() const {
  const size_t nv = chart_->var_count();
  ExpPolynomial r(chart_);
  for (const auto& [k, c] : terms_) {
    TermKey k2;
    k2.mono.resize(nv);
    k2.ell.coeff.resize(nv);
    for (size_t i = 0; i < nv; ++i) {
      size_t j = chart_->conj_index(i);
      k2.mono[j] = k.mono[i];
      k2.ell.coeff[j] = k.ell.coeff[i].conj();
    }
    r.add_term(k2, c.conj());
  }
  return r;
}

ExpPolynomial ExpPolynomial::on_chart(const ChartPtr& target) const {
  if (chart_ && target && *chart_ == *target) return *this;
  // variables absent from the target are allowed as long as they are unused
  std::vector<int> map(chart_->var_count());
  for (size_t i = 0; i < chart_->var_count(); ++i) map[i] = target->index_of(chart_->var_name(i));
  const size_t nv = target->var_count();
  ExpPolynomial r(target);
  for (const auto& [k, c] : terms_) {
    TermKey k2;
    k2.mono.assign(nv, 0);
    k2.ell.coeff.assign(nv, GRational(0));
    for (size_t i = 0; i < chart_->var_count(); ++i) {
      if (map[i] < 0) {
        if (k.mono[i] != 0 || !k.ell.coeff[i].is_zero())
          throw Error("target chart lacks variable " + chart_->var_name(i));
        continue;
      }
      k2.mono[map[i]] = k.mono[i];
      k2.ell.coeff[map[i]] = k.ell.coeff[i];
    }
    r.add_term(k2, c);
  }
  return r;
}

GRational ExpPolynomial::eval_exact(const std::vector<GRational>& values) const {
  GRational acc(0);
  for (const auto& [k, c] : terms_) {
    if (!k.ell.is_zero()) throw Error("exact evaluation of an exp term requested");
    GRational t = c;
    for (size_t i = 0; i < k.mono.size(); ++i)
      for (uint32_t e = 0; e < k.mono[i]; ++e) t *= values[i];
    acc += t;
  }
  return acc;
}

Complex50 ExpPolynomial::eval(const std::vector<Complex50>& values) const {
  Complex50 acc(0);
  for (const auto& [k, c] : terms_) {
    Complex50 t = c.to_complex();
    for (size_t i = 0; i < k.mono.size(); ++i) {
      if (k.mono[i] == 0) continue;
      Complex50 p = values[i];
      uint32_t e = k.mono[i];
      Complex50 acc_p(1);
      while (e) {  // binary powering
        if (e & 1) acc_p *= p;
        p *= p;
        e >>= 1;
      }
      t *= acc_p;
    }
    if (!k.ell.is_zero()) {
      Complex50 arg(0);
      for (size_t i = 0; i < k.ell.coeff.size(); ++i)
        if (!k.ell.coeff[i].is_zero()) arg += k.ell.coeff[i].to_complex() * values[i];
      t *= cexp(arg);
    }
    acc += t;
  }
  return acc;
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(ExpPolynomial num, ExpPolynomial den)
    : chart_(num.chart()), num_(std::move(num)), den_(std::move(den)) {
  require_same_chart(chart_, den_.chart(), "ScalarField");
  if (den_.is_zero()) throw Error("zero denominator");
  normalize();
}

ScalarField ScalarField::variable(const ChartPtr& chart, size_t var) {
  return ScalarField(ExpPolynomial::variable(chart, var), ExpPolynomial(chart, GRational(1)));
}

ScalarField ScalarField::variable(const ChartPtr& chart, const std::string& name) {
  int i = chart->index_of(name);
  if (i < 0) throw Error("unknown variable " + name);
  return variable(chart, static_cast<size_t>(i));
}

ScalarField ScalarField::exponential(const ChartPtr& chart, const LinForm& ell) {
  return ScalarField(ExpPolynomial::exponential(chart, ell), ExpPolynomial(chart, GRational(1)));
}

void ScalarField::normalize() {
  if (num_.is_zero()) {
    den_ = ExpPolynomial(chart_, GRational(1));
    return;
  }
  // monic denominator: divide both sides by the leading canonical
  // coefficient of the denominator
  const auto& last = std::prev(den_.terms().end());
  GRational lc = last->second;
  if (lc == GRational(1)) return;
  num_ = num_.scaled(GRational(1) / lc);
  den_ = den_.scaled(GRational(1) / lc);
}

std::optional<GRational> ScalarField::constant_value() const {
  auto n = num_.constant_value();
  auto d = den_.constant_value();
  if (!n || !d) return std::nullopt;
  return *n / *d;
}

ScalarField ScalarField::operator-() const {
  ScalarField r = *this;
  r.num_ = -r.num_;
  return r;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  require_same_chart(a.chart_, b.chart_, "ScalarField +");
  if (a.den_ == b.den_) return ScalarField(a.num_ + b.num_, a.den_);
  return ScalarField(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  require_same_chart(a.chart_, b.chart_, "ScalarField -");
  if (a.den_ == b.den_) return ScalarField(a.num_ - b.num_, a.den_);
  return ScalarField(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  require_same_chart(a.chart_, b.chart_, "ScalarField *");
  if (a.is_zero() || b.is_zero()) return ScalarField(a.chart_);
  return ScalarField(a.num_ * b.num_, a.den_ * b.den_);
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  require_same_chart(a.chart_, b.chart_, "ScalarField /");
  if (b.is_zero()) throw Error("division by zero field");
  if (a.is_zero()) return ScalarField(a.chart_);
  return ScalarField(a.num_ * b.den_, a.den_ * b.num_);
}

ScalarField ScalarField::scaled(const GRational& c) const {
  if (c.is_zero()) return ScalarField(chart_);
  return ScalarField(num_.scaled(c), den_);
}

ScalarField ScalarField::pow(unsigned k) const {
  ScalarField r(chart_, GRational(1));
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

ScalarField ScalarField::derivative(size_t var) const {
  // quotient rule; stays inside the class
  ExpPolynomial dn = num_.derivative(var);
  ExpPolynomial dd = den_.derivative(var);
  if (dd.is_zero()) return ScalarField(dn, den_);
  return ScalarField(dn * den_ - num_ * dd, den_ * den_);
}

ScalarField ScalarField::derivative(const std::string& var_name) const {
  int i = chart_->index_of(var_name);
  if (i < 0) throw Error("unknown variable " + var_name);
  return derivative(static_cast<size_t>(i));
}

ScalarField ScalarField::conjugated() const {
  return ScalarField(num_.conjugated(), den_.conjugated());
}

ScalarField ScalarField::on_chart(const ChartPtr& target) const {
  if (chart_ && *chart_ == *target) return *this;
  return ScalarField(num_.on_chart(target), den_.on_chart(target));
}

GRational ScalarField::eval_exact(const Point& p) const {
  require_same_chart(chart_, p.chart, "eval_exact");
  std::vector<GRational> vals = p.full_values();
  GRational d = den_.eval_exact(vals);
  if (d.is_zero()) throw SingularPoint("denominator vanishes at evaluation point");
  return num_.eval_exact(vals) / d;
}

Complex50 ScalarField::eval(const Point& p) const {
  require_same_chart(chart_, p.chart, "eval");
  std::vector<GRational> exact = p.full_values();
  std::vector<Complex50> vals;
  vals.reserve(exact.size());
  for (const auto& v : exact) vals.push_back(v.to_complex());
  Complex50 d = den_.eval(vals);
  if (abs(d) == 0) throw SingularPoint("denominator vanishes at evaluation point");
  return num_.eval(vals) / d;
}

bool field_equal(const ScalarField& a, const ScalarField& b) {
  require_same_chart(a.chart(), b.chart(), "field_equal");
  return (a.num() * b.den() - b.num() * a.den()).is_zero();
}

// ----------------------------- printing -----------------------------------

namespace {

std::string coeff_string(const GRational& c) {
  if (c.im == 0) return to_string(c.re);
  if (c.re == 0) {
    if (c.im == 1) return "i";
    if (c.im == -1) return "-i";
    return to_string(c.im) + "*i";
  }
  std::string s = "(" + to_string(c.re);
  if (c.im > 0) s += "+";
  if (c.im == 1)
    s += "i";
  else if (c.im == -1)
    s += "-i";
  else
    s += to_string(c.im) + "*i";
  return s + ")";
}

std::string linform_string(const Chart& chart, const LinForm& ell) {
  std::string s;
  for (size_t i = 0; i < ell.coeff.size(); ++i) {
    const GRational& c = ell.coeff[i];
    if (c.is_zero()) continue;
    std::string part;
    if (c == GRational(1))
      part = chart.var_name(i);
    else if (c == GRational(-1))
      part = "-" + chart.var_name(i);
    else
      part = coeff_string(c) + "*" + chart.var_name(i);
    if (!s.empty() && part[0] != '-') s += "+";
    s += part;
  }
  return s.empty() ? "0" : s;
}

std::string term_string(const Chart& chart, const TermKey& k, const GRational& c) {
  std::vector<std::string> factors;
  for (size_t i = 0; i < k.mono.size(); ++i) {
    if (k.mono[i] == 0) continue;
    std::string f = chart.var_name(i);
    if (k.mono[i] > 1) f += "^" + std::to_string(k.mono[i]);
    factors.push_back(f);
  }
  if (!k.ell.is_zero()) factors.push_back("exp(" + linform_string(chart, k.ell) + ")");
  std::string body;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) body += "*";
    body += factors[i];
  }
  if (body.empty()) return coeff_string(c);
  if (c == GRational(1)) return body;
  if (c == GRational(-1)) return "-" + body;
  return coeff_string(c) + "*" + body;
}
}  // namespace

std::string to_string(const ExpPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  // reverse canonical order: leading monomial first
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    std::string t = term_string(*p.chart(), it->first, it->second);
    if (!s.empty() && t[0] != '-') s += "+";
    s += t;
  }
  return s;
}

std::string to_string(const ScalarField& f) {
  if (f.is_zero()) return "0";
  std::string n = to_string(f.num());
  if (f.den().is_constant()) return n;
  bool multi = f.num().terms().size() > 1;
  std::string s = multi ? "(" + n + ")" : n;
  return s + "/(" + to_string(f.den()) + ")";
}
}  // namespace frob
