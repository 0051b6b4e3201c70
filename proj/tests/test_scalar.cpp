#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frob/parser.hpp"
#include "frob/sample.hpp"
#include "frob/scalar.hpp"

#include <random>

using namespace frob;

namespace {

ChartPtr t2() { return make_chart({"t1", "t2"}); }

Point pt(const ChartPtr& c, std::vector<Rational> xs) {
  std::vector<GRational> v;
  for (auto& x : xs) v.emplace_back(x);
  return Point(c, v);
}

// random normalized fields for round-trip / calculus properties
ScalarField random_field(const ChartPtr& chart, std::mt19937_64& rng, bool allow_exp = true,
                         bool allow_fraction = true) {
  const size_t nv = chart->var_count();
  auto rnd_coeff = [&]() {
    long n = static_cast<long>(rng() % 13) - 6;
    long d = static_cast<long>(rng() % 4) + 1;
    return GRational(Rational(n, d));
  };
  auto rnd_poly = [&]() {
    ExpPolynomial p(chart);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      TermKey k;
      k.mono.assign(nv, 0);
      k.ell.coeff.assign(nv, GRational(0));
      for (size_t i = 0; i < nv; ++i) k.mono[i] = rng() % 3;
      if (allow_exp && rng() % 3 == 0) {
        size_t i = rng() % nv;
        long c = static_cast<long>(rng() % 5) - 2;
        k.ell.coeff[i] = GRational(Rational(c));
      }
      p.add_term(k, rnd_coeff());
    }
    return p;
  };
  ExpPolynomial num = rnd_poly();
  if (num.is_zero()) num = ExpPolynomial(chart, GRational(1));
  ExpPolynomial den(chart, GRational(1));
  if (allow_fraction && rng() % 2 == 0) {
    den = rnd_poly();
    if (den.is_zero()) den = ExpPolynomial(chart, GRational(1));
  }
  return ScalarField(num, den);
}
}  // namespace

TEST_CASE("parse: direct denotations") {
  auto c = t2();
  ScalarField f = parse_field("t1^2*t2/2", c);
  CHECK(f.den().is_constant());
  CHECK(f.num().terms().size() == 1);
  CHECK(f.eval_exact(pt(c, {2, 3})) == GRational(Rational(6)));

  ScalarField g = parse_field("exp(t2)+1", c);
  CHECK(g.num().terms().size() == 2);
  CHECK(g.num().has_exp());

  ScalarField h = parse_field("t1/(t1+1)", c);
  CHECK(!h.den().is_constant());
  CHECK(field_equal(h, parse_field("(2*t1)/(2*t1+2)", c)));
}

TEST_CASE("parse: errors carry positions") {
  auto c = t2();
  CHECK_THROWS_AS(parse_field("t1 + t3", c), ParseError);
  CHECK_THROWS_AS(parse_field("t1^-2", c), ParseError);
  CHECK_THROWS_AS(parse_field("t1^(1/2)", c), ParseError);
  CHECK_THROWS_AS(parse_field("exp(t1^2)", c), ParseError);
  CHECK_THROWS_AS(parse_field("exp(t1+1)", c), ParseError);
  CHECK_THROWS_AS(parse_field("exp(exp(t1))", c), ParseError);
  CHECK_THROWS_AS(parse_field("t1 +", c), ParseError);
  CHECK_THROWS_AS(parse_field("(t1", c), ParseError);
  try {
    parse_field("t1 + t9", c);
  } catch (const ParseError& e) {
    CHECK(e.pos == 5);
  }
}

TEST_CASE("evaluate: exact, singular, exp") {
  auto c = t2();
  ScalarField f = parse_field("1/(t1+1)", c);
  CHECK_THROWS_AS(f.eval_exact(pt(c, {-1, 0})), SingularPoint);
  CHECK(f.eval_exact(pt(c, {1, 0})) == GRational(Rational(1, 2)));

  ScalarField e = parse_field("exp(t2)", c);
  CHECK_THROWS_AS(e.eval_exact(pt(c, {0, 1})), Error);
  Complex50 v = e.eval(pt(c, {0, 1}));
  Real50 err = abs(v.real() - Real50("2.718281828459045235360287471352662497757247093699959574966968"));
  CHECK(static_cast<double>(err) < 1e-12);
  CHECK(static_cast<double>(abs(v.imag())) == 0.0);
}

TEST_CASE("differentiate: rules") {
  auto c = t2();
  CHECK(field_equal(parse_field("exp(t2)", c).derivative(1), parse_field("exp(t2)", c)));
  CHECK(field_equal(parse_field("t1^2*t2/2", c).derivative(0), parse_field("t1*t2", c)));
  CHECK_THROWS_AS(parse_field("t1", c).derivative("zz"), Error);
  // exp reproduces itself times the linear-form coefficient
  CHECK(field_equal(parse_field("exp(3*t1)", c).derivative(0), parse_field("3*exp(3*t1)", c)));
}

TEST_CASE("print/parse round-trip on random fields") {
  auto c = t2();
  std::mt19937_64 rng(7);
  for (int it = 0; it < 400; ++it) {
    ScalarField f = random_field(c, rng);
    ScalarField g = parse_field(to_string(f), c);
    CHECK(f == g);  // identical normalized representation
  }
}

TEST_CASE("mixed partials commute exactly; Leibniz exact") {
  auto c = t2();
  std::mt19937_64 rng(11);
  for (int it = 0; it < 60; ++it) {
    ScalarField f = random_field(c, rng);
    ScalarField g = random_field(c, rng);
    CHECK(field_equal(f.derivative(0).derivative(1), f.derivative(1).derivative(0)));
    CHECK(field_equal((f * g).derivative(0), f.derivative(0) * g + f * g.derivative(0)));
  }
}

TEST_CASE("derivative matches central finite differences") {
  auto c = t2();
  std::mt19937_64 rng(23);
  SamplePlan plan;
  plan.seed = 5;
  plan.count = 20;
  Rational h(1, 10000);
  for (int it = 0; it < 12; ++it) {
    ScalarField f = random_field(c, rng);
    ScalarField df = f.derivative(0);
    auto ok = [&](const Point& p) {
      try {
        auto shift = [&](const Rational& dt) {
          auto xs = p.coords;
          xs[0].re += dt;
          return Point(p.chart, xs);
        };
        f.eval(shift(h));
        f.eval(shift(-h));
        df.eval(p);
        return true;
      } catch (const SingularPoint&) {
        return false;
      }
    };
    auto pts = draw_points(c, plan, ok);
    for (const auto& p : pts) {
      auto xs_p = p.coords;
      xs_p[0].re += h;
      auto xs_m = p.coords;
      xs_m[0].re -= h;
      Complex50 fd =
          (f.eval(Point(c, xs_p)) - f.eval(Point(c, xs_m))) / Complex50(2 * Real50(h));
      double err = abs_double(fd - df.eval(p));
      // scale-aware: fields can be large near poles
      double scale = std::max(1.0, abs_double(df.eval(p)));
      CHECK(err / scale < 1e-6);
    }
  }
}

TEST_CASE("complex charts: polarization and conjugation") {
  auto c = make_chart({"z1", "z2"}, Domain::Complex);
  CHECK(c->dimension() == 2);
  CHECK(c->var_count() == 4);
  ScalarField f = parse_field("z1^2*z2_bar", c);
  // holomorphy: no z_bar dependence after d/d z1_bar
  CHECK(f.derivative("z1_bar").is_zero());
  CHECK(!f.derivative("z2_bar").is_zero());
  // conjugation swaps slots and conjugates coefficients
  ScalarField g = parse_field("i*z1", c);
  CHECK(field_equal(g.conjugated(), parse_field("-i*z1_bar", c)));
  // evaluation binds conjugate slots to numeric conjugates
  Point p(c, {GRational(Rational(1), Rational(2)), GRational(Rational(3), Rational(0))});
  ScalarField zbar = parse_field("z1_bar", c);
  Complex50 v = zbar.eval(p);
  CHECK(static_cast<double>(v.real()) == doctest::Approx(1.0));
  CHECK(static_cast<double>(v.imag()) == doctest::Approx(-2.0));
}

TEST_CASE("normalization: monic denominator, zero collapses") {
  auto c = t2();
  ScalarField f = parse_field("(2*t1)/(2*t2+4)", c);
  CHECK(to_string(f) == "t1/(t2+2)");
  ScalarField z = parse_field("t1-t1", c);
  CHECK(z.is_zero());
  CHECK(to_string(z) == "0");
  CHECK(to_string(parse_field("1/2*t1", c)) == "1/2*t1");
}

TEST_CASE("field equality by cross-multiplication, not representation") {
  auto c = t2();
  ScalarField a = parse_field("(t1^2-1)/(t1-1)", c);
  ScalarField b = parse_field("t1+1", c);
  CHECK(field_equal(a, b));
  CHECK(!(a == b));
}
