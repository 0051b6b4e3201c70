#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frob/parser.hpp"
#include "frob/tensor.hpp"
#include "oracles.hpp"

#include <random>

using namespace frob;

namespace {

Metric parse_metric(const ChartPtr& c, const std::vector<std::vector<std::string>>& rows) {
  Mat g;
  for (const auto& row : rows) {
    Vec r;
    for (const auto& e : row) r.push_back(parse_field(e, c));
    g.push_back(r);
  }
  return Metric(c, g);
}

VectorField parse_vf(const ChartPtr& c, const std::vector<std::string>& comps) {
  Vec v;
  for (const auto& e : comps) v.push_back(parse_field(e, c));
  return VectorField(c, v);
}
}  // namespace

TEST_CASE("christoffel: euclidean and constant-metric cases vanish") {
  auto c = make_chart({"t1", "t2"});
  auto g = parse_metric(c, {{"1", "0"}, {"0", "1"}});
  CHECK(ten3_is_zero(christoffel(g)));
  auto g2 = parse_metric(c, {{"0", "1"}, {"1", "0"}});  // potential-form flat metric
  CHECK(ten3_is_zero(christoffel(g2)));
}

TEST_CASE("christoffel: degenerate metric rejected") {
  auto c = make_chart({"t1", "t2"});
  auto g = parse_metric(c, {{"1", "1"}, {"1", "1"}});
  CHECK_THROWS_AS(christoffel(g), DegenerateInput);
}

TEST_CASE("christoffel: diagonal semisimple metric matches finite-difference oracle") {
  auto c = make_chart({"u1", "u2"});
  // eta = u1^2 u2 + u2^2/2: eta_1 = 2 u1 u2, eta_2 = u1^2 + u2
  ScalarField eta = parse_field("u1^2*u2+u2^2/2", c);
  Mat gm = zero_mat(c, 2, 2);
  gm[0][0] = eta.derivative(0);
  gm[1][1] = eta.derivative(1);
  Metric g(c, gm);
  Ten3 gamma = christoffel(g);
  SamplePlan plan;
  plan.seed = 3;
  plan.count = 10;
  plan.center = {GRational(Rational(2)), GRational(Rational(2))};
  auto ok = [&](const Point& p) {
    try {
      for (size_t k = 0; k < 2; ++k)
        for (size_t i = 0; i < 2; ++i)
          for (size_t j = 0; j < 2; ++j) gamma[k][i][j].eval(p);
      oracle::fd_christoffel(g, p);
      return true;
    } catch (const SingularPoint&) {
      return false;
    }
  };
  auto pts = draw_points(c, plan, ok);
  for (const auto& p : pts) {
    auto fd = oracle::fd_christoffel(g, p);
    for (size_t k = 0; k < 2; ++k)
      for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
          CHECK(abs_double(fd[k][i][j] - gamma[k][i][j].eval(p)) < 1e-6);
  }
}

TEST_CASE("riemann: flat and curved detection") {
  auto c = make_chart({"t1", "t2"});
  SamplePlan plan;
  plan.seed = 1;
  plan.count = 10;
  plan.center = {GRational(Rational(2)), GRational(Rational(0))};

  // euclidean: identically zero
  auto ge = parse_metric(c, {{"1", "0"}, {"0", "1"}});
  for (const auto& t : riemann(ge))
    CHECK(ten3_is_zero(t));

  // polar-type metric diag(1, t1^2): flat on t1 > 0
  auto gp = parse_metric(c, {{"1", "0"}, {"0", "t1^2"}});
  auto pts = draw_points(c, plan, [&](const Point& p) { return !p.coords[0].re.is_zero(); });
  CHECK(riemann_max_residual(gp, pts) < 1e-9);

  // diag(1, exp(2 t1)): curvature detected, R(e1,e2)e2 component = -exp(2 t1)
  auto gc = parse_metric(c, {{"1", "0"}, {"0", "exp(2*t1)"}});
  Ten4 r = riemann(gc);
  CHECK(field_equal(r[0][0][1][1], parse_field("-exp(2*t1)", c)));
  Point origin(c, {GRational(0), GRational(0)});
  CHECK(abs_double(r[0][0][1][1].eval(origin)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("riemann: metricity and first Bianchi hold exactly on a random metric") {
  auto c = make_chart({"t1", "t2"});
  // a non-trivial symmetric invertible metric
  auto g = parse_metric(c, {{"t2^2+1", "t1*t2"}, {"t1*t2", "t1^2+2"}});
  Ten3 gamma = christoffel(g);

  // nabla g = 0 exactly
  for (size_t l = 0; l < 2; ++l)
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) {
        SF acc = g.g[i][j].derivative(l);
        for (size_t m = 0; m < 2; ++m)
          acc -= gamma[m][l][i] * g.g[m][j] + gamma[m][l][j] * g.g[i][m];
        CHECK(acc.is_zero());
      }

  // first Bianchi identity, exactly
  Ten4 r = riemann(g);
  for (size_t l = 0; l < 2; ++l)
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j)
        for (size_t k = 0; k < 2; ++k) {
          SF acc = r[l][i][j][k] + r[l][j][k][i] + r[l][k][i][j];
          CHECK(acc.is_zero());
        }
}

TEST_CASE("lie_derivative_mult: trivial weights and flow oracle") {
  auto c = make_chart({"t1", "t2"});
  // constant multiplication: unit e1, e2.e2 = 0 (potential t1^2 t2 / 2 pattern)
  Ten3 ct = zero_ten3(c, 2, 2, 2);
  ct[0][0][0] = one_field(c);
  ct[1][0][1] = one_field(c);
  ct[1][1][0] = one_field(c);
  Vec e = zero_vec(c, 2);
  e[0] = one_field(c);
  MultTensor mult(c, ct, VectorField(c, e));

  // constant X on constant c: zero
  auto l0 = lie_derivative_mult(parse_vf(c, {"3", "-2"}), mult);
  CHECK(ten3_is_zero(l0));

  // radial E on constant c: L_E(c) = +c (one lower index net weight)
  auto lr = lie_derivative_mult(parse_vf(c, {"t1", "t2"}), mult);
  for (size_t k = 0; k < 2; ++k)
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) CHECK(field_equal(lr[k][i][j], mult.c[k][i][j]));

  // random cubic-coefficient tensor vs flow-pullback oracle
  Ten3 cc = zero_ten3(c, 2, 2, 2);
  cc[0][0][0] = parse_field("t1^3/3+t2", c);
  cc[1][0][0] = parse_field("t1*t2^2", c);
  cc[0][0][1] = parse_field("t2^3-t1", c);
  cc[0][1][0] = cc[0][0][1];
  cc[1][0][1] = parse_field("1+t1^2*t2", c);
  cc[1][1][0] = cc[1][0][1];
  cc[0][1][1] = parse_field("t1^2", c);
  cc[1][1][1] = parse_field("t2^2-t1^3", c);
  MultTensor mc(c, cc, VectorField(c, e));
  VectorField x = parse_vf(c, {"t2^2/2-t1", "t1*t2/4+1"});
  Ten3 lx = lie_derivative_mult(x, mc);
  Point p(c, {GRational(Rational(1, 3)), GRational(Rational(-1, 2))});
  auto fl = oracle::flow_lie_mult(x, mc.c, p);
  for (size_t k = 0; k < 2; ++k)
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j)
        CHECK(abs_double(fl[k][i][j] - lx[k][i][j].eval(p)) < 1e-5);
}

TEST_CASE("lie_derivative_metric: weights, Killing field, flow oracle") {
  auto c = make_chart({"t1", "t2"});
  auto g = parse_metric(c, {{"1", "0"}, {"0", "1"}});

  auto lr = lie_derivative_metric(parse_vf(c, {"t1", "t2"}), g);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j)
      CHECK(field_equal(lr[i][j], g.g[i][j].scaled(GRational(2))));

  // rotation generator is Killing for the euclidean metric
  auto lk = lie_derivative_metric(parse_vf(c, {"-t2", "t1"}), g);
  CHECK(mat_is_zero(lk));

  auto grand = parse_metric(c, {{"t2^2+1", "t1*t2"}, {"t1*t2", "t1^2+2"}});
  VectorField x = parse_vf(c, {"t1*t2", "t2^2-t1"});
  Mat lx = lie_derivative_metric(x, grand);
  Point p(c, {GRational(Rational(1, 4)), GRational(Rational(2, 3))});
  auto fl = oracle::flow_lie_metric(x, grand.g, p);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) CHECK(abs_double(fl[i][j] - lx[i][j].eval(p)) < 1e-5);
}

TEST_CASE("lie derivatives satisfy L_[X,Y] = L_X L_Y - L_Y L_X at sample points") {
  // checked on metrics where both sides stay in the class: use the identity
  // on vector fields through the bracket itself (Jacobi)
  auto c = make_chart({"t1", "t2"});
  VectorField x = parse_vf(c, {"t1*t2", "t2-1"});
  VectorField y = parse_vf(c, {"t2^2", "t1"});
  VectorField z = parse_vf(c, {"t1+t2", "t1*t1"});
  // Jacobi identity exactly
  auto j1 = lie_bracket(x, lie_bracket(y, z));
  auto j2 = lie_bracket(y, lie_bracket(z, x));
  auto j3 = lie_bracket(z, lie_bracket(x, y));
  for (size_t k = 0; k < 2; ++k) CHECK((j1.comp[k] + j2.comp[k] + j3.comp[k]).is_zero());

  // L_[X,Y] g = (L_X L_Y - L_Y L_X) g, exactly (stronger than the sampled claim)
  auto g = parse_metric(c, {{"t2^2+1", "0"}, {"0", "t1^2+2"}});
  auto lhs = lie_derivative_metric(lie_bracket(x, y), g);
  // nested Lie derivative of a metric via formula on the (0,2)-tensor:
  auto lie_of_mat = [&](const VectorField& v, const Mat& m) {
    Metric tmp(c, m);
    return lie_derivative_metric(v, tmp);
  };
  auto rhs = mat_sub(lie_of_mat(x, lie_derivative_metric(y, g)),
                     lie_of_mat(y, lie_derivative_metric(x, g)));
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) CHECK(field_equal(lhs[i][j], rhs[i][j]));
}

TEST_CASE("covariant_derivative and is_parallel") {
  auto c = make_chart({"t1", "t2"});
  auto g = parse_metric(c, {{"1", "0"}, {"0", "1"}});
  SamplePlan plan;
  plan.seed = 9;
  auto pts = draw_points(c, plan);

  CHECK(is_parallel(g, parse_vf(c, {"2", "5"}), pts, 1e-12));

  auto nx = covariant_derivative(g, parse_vf(c, {"t1", "0"}));
  CHECK(field_equal(nx[0][0], one_field(c)));
  CHECK(!is_parallel(g, parse_vf(c, {"t1", "0"}), pts, 1e-9));
}

TEST_CASE("matrix helpers: exact inverse via adjugate") {
  auto c = make_chart({"t1", "t2"});
  Mat a = zero_mat(c, 3, 3);
  a[0][0] = parse_field("t1", c);
  a[0][1] = parse_field("1", c);
  a[1][1] = parse_field("t2", c);
  a[1][2] = parse_field("t1+1", c);
  a[2][0] = parse_field("2", c);
  a[2][2] = parse_field("t1*t2+1", c);
  Mat inv = mat_inverse(a);
  Mat prod = mat_mul(a, inv);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      CHECK(field_equal(prod[i][j], i == j ? one_field(c) : zero_field(c)));
}
