#include "frob/parser.hpp"

#include <cctype>

namespace frob {
namespace {

class Parser {
 public:
  Parser(const std::string& src, ChartPtr chart) : src_(src), chart_(std::move(chart)) {}

  ScalarField run() {
    ScalarField f = expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ScalarField expr() {
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    ScalarField acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  ScalarField term() {
    ScalarField acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        size_t at = pos_;
        ScalarField d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  ScalarField factor() {
    ScalarField base = atom();
    if (accept('^')) {
      size_t at = pos_;
      if (peek() == '-') throw ParseError("exponent must be a nonnegative integer", at);
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("exponent must be a nonnegative integer", at);
      unsigned long e = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        e = e * 10 + static_cast<unsigned long>(src_[pos_] - '0');
        if (e > 10000) throw ParseError("exponent too large", at);
        ++pos_;
      }
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  ScalarField atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (c == '(') {
      ++pos_;
      ScalarField f = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return f;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  ScalarField number() {
    Integer v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + (src_[pos_] - '0');
      ++pos_;
    }
    if (pos_ < src_.size() && src_[pos_] == '.')
      throw ParseError("decimal literals are not part of the grammar; use a/b", pos_);
    return ScalarField(chart_, GRational(Rational(v)));
  }

  ScalarField identifier() {
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name = src_.substr(start, pos_ - start);
    if (name == "exp") {
      if (!accept('(')) throw ParseError("expected '(' after exp", pos_);
      size_t at = pos_;
      ScalarField arg = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return exponential_of(arg, at);
    }
    int idx = chart_->index_of(name);
    if (idx >= 0) return ScalarField::variable(chart_, static_cast<size_t>(idx));
    if (name == "i") return ScalarField(chart_, GRational(Rational(0), Rational(1)));
    throw ParseError("unknown variable '" + name + "'", start);
  }

  // the exp argument must denote a linear form with no constant term
  ScalarField exponential_of(const ScalarField& arg, size_t at) {
    if (!arg.den().is_constant()) throw ParseError("exp argument not a linear form", at);
    LinForm ell;
    ell.coeff.assign(chart_->var_count(), GRational(0));
    for (const auto& [k, c] : arg.num().terms()) {
      if (!k.ell.is_zero()) throw ParseError("exp argument not a linear form", at);
      uint32_t total = 0;
      int var = -1;
      for (size_t i = 0; i < k.mono.size(); ++i) {
        total += k.mono[i];
        if (k.mono[i] > 0) var = static_cast<int>(i);
      }
      if (total == 0) throw ParseError("exp argument not a linear form", at);
      if (total > 1) throw ParseError("exp argument not a linear form", at);
      ell.coeff[var] = ell.coeff[var] + c;
    }
    // divide by the (constant) denominator
    GRational d = *arg.den().constant_value();
    for (auto& c : ell.coeff) c = c / d;
    return ScalarField::exponential(chart_, ell);
  }

  const std::string& src_;
  ChartPtr chart_;
  size_t pos_ = 0;
};
}  // namespace

ScalarField parse_field(const std::string& source, const ChartPtr& chart) {
  return Parser(source, chart).run();
}
}  // namespace frob
