#include <doctest.h>

#include <cmath>
#include <random>

#include "gbt/riemann.hpp"
#include "reference_forms.hpp"

using namespace gbt;

namespace {

std::string sys(const char* name) { return std::string(GBT_SYSTEMS_DIR) + "/" + name; }

BigRational at(const RationalFunction& f, BigRational x, BigRational y) {
  std::vector<BigRational> p{x, y};
  return f.evaluate(p);
}

VectorField random_system(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  auto rhs = [&] {
    std::string out = "-s2";
    const char* monos[] = {"s1", "s2", "s1^2", "s1*s2", "s2^2", "s1^3"};
    for (const char* m : monos) {
      int c = coef(rng);
      if (c) out += (c > 0 ? "+" : "") + std::to_string(c) + "*" + m;
    }
    return out;
  };
  return parse_system("ds1/dt = " + rhs() + "\nds2/dt = s1 + " + rhs() + "\n");
}

}  // namespace

TEST_CASE("metric construction") {
  VectorField ex03 = load_system(sys("ex03.sys"));
  MetricTensor g = gbt_metric(ex03);
  auto expect11 = reference::parse_expr("2*(4*s1^2+(s2+1)^2)");
  auto expect22 = reference::parse_expr("2*(s1^2+1)");
  CHECK(g.g[0][0] == RationalFunction(expect11));
  CHECK(g.g[1][1] == RationalFunction(expect22));
  CHECK(g.g[0][1].is_zero());

  MetricTensor g1 = gbt_metric(load_system(sys("ex01.sys")));
  CHECK(g1.g[0][0] == RationalFunction(reference::parse_expr("2*((3*s1^2+s2^2-1)^2+(2*s1*s2+1)^2)")));
  CHECK(g1.g[1][1] == RationalFunction(reference::parse_expr("2*((2*s1*s2-1)^2+(s1^2+3*s2^2-1)^2)")));

  MetricTensor flat = gbt_metric(load_system(sys("rotation.sys")));
  CHECK(flat.g[0][0] == RationalFunction::constant(2, {"s1", "s2"}));
  CHECK(flat.g[1][1] == RationalFunction::constant(2, {"s1", "s2"}));

  CHECK_THROWS_AS(gbt_metric(parse_system("params: k\nds1/dt = s1\nds2/dt = s1"), {"s1", "s2"}), MetricError);
  CHECK_THROWS_AS(gbt_metric(ex03, {"s1", "zz"}), MetricError);
}

TEST_CASE("metric inverse") {
  MetricTensor g = gbt_metric(load_system(sys("ex03.sys")));
  MetricTensor inv = metric_inverse(g);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      RationalFunction acc = g.g[i][0] * inv.g[0][j] + g.g[i][1] * inv.g[1][j];
      CHECK(acc == RationalFunction::constant(i == j ? 1 : 0, {"s1", "s2"}));
    }

  // Non-diagonal symmetric sample, verified by product.
  std::mt19937 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    VectorField vf = random_system(rng);
    MetricTensor m = gbt_metric(vf);
    m.diagonal = false;
    m.g[0][1] = m.g[1][0] = RationalFunction(reference::parse_expr("s1*s2 + 1"));
    MetricTensor mi;
    try {
      mi = metric_inverse(m);
    } catch (const MetricError&) {
      continue;
    }
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(m.g[i][0] * mi.g[0][j] + m.g[i][1] * mi.g[1][j] ==
              RationalFunction::constant(i == j ? 1 : 0, {"s1", "s2"}));
  }

  MetricTensor singular;
  singular.coords = {"s1", "s2"};
  auto one = RationalFunction::constant(1, {"s1", "s2"});
  singular.g = {{one, one}, {one, one}};
  CHECK_THROWS_AS(metric_inverse(singular), MetricError);
}

TEST_CASE("Christoffel symbols") {
  ChristoffelSet flat = christoffel(gbt_metric(load_system(sys("rotation.sys"))));
  for (const auto& c : flat.data) CHECK(c.is_zero());

  MetricTensor g = gbt_metric(load_system(sys("ex03.sys")));
  ChristoffelSet gamma = christoffel(g);
  const auto& e = g.g[0][0];
  CHECK(gamma(0, 0, 0) == e.derivative("s1") / (RationalFunction::constant(2, {"s1", "s2"}) * e));
  // Gamma^2_11 = -d_2 G_11 / (2 G_22) = -1 at the origin.
  CHECK(at(gamma(1, 0, 0), 0, 0) == -1);
}

TEST_CASE("closed-form curvature of the center system") {
  MetricTensor g = gbt_metric(load_system(sys("ex03.sys")));
  ScalarCurvature r = curvature_of(g);
  CHECK(r.value == reference::example03_curvature());
  CHECK(at(r.value, 0, 0) == 1);
  CHECK(at(r.value, 1, 0) == BigRational(1, 20));
  ScalarCurvature shortcut = scalar_curvature_2d_diagonal(g);
  CHECK(shortcut.value == r.value);
  // K(0,0) = -1/2
  CHECK(at(scalar_curvature_2d_diagonal(g, CurvatureConvention::standard).value, 0, 0) == -1);
}

TEST_CASE("ex01 curvature at the origin") {
  MetricTensor g = gbt_metric(load_system(sys("ex01.sys")));
  ScalarCurvature r = curvature_of(g);
  CHECK(at(r.value, 0, 0) == -1);
  CHECK(at(reference::example01_curvature(), 0, 0) == -1);
  CHECK(scalar_curvature_2d_diagonal(g).value == r.value);
}

TEST_CASE("flat metric has zero curvature") {
  MetricTensor g = gbt_metric(load_system(sys("rotation.sys")));
  CHECK(curvature_of(g).value.is_zero());
  CHECK(scalar_curvature_2d_diagonal(g).value.is_zero());
  RiemannTensor rm = riemann_tensor(christoffel(g));
  for (const auto& c : rm.data) CHECK(c.is_zero());
}

TEST_CASE("tensor symmetries on random GBT metrics") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    MetricTensor g = gbt_metric(random_system(rng));
    ChristoffelSet gamma = christoffel(g);
    RiemannTensor rm = riemann_tensor(gamma);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t s = 0; s < 2; ++s) {
          CHECK(gamma(a, x, s) == gamma(a, s, x));
          for (std::size_t l = 0; l < 2; ++l) CHECK(rm(a, x, s, l) == -rm(a, x, l, s));
        }
    ScalarCurvature paper = scalar_curvature(g, rm);
    ScalarCurvature standard = scalar_curvature(g, riemann_tensor(gamma, CurvatureConvention::standard));
    CHECK(standard.value == -paper.value);
    CHECK(scalar_curvature_2d_diagonal(g).value == paper.value);
  }
}

TEST_CASE("three coordinates: state plus control parameter") {
  VectorField vf = load_system(sys("ex01a.sys"));
  MetricTensor g = gbt_metric(vf, {"s1", "s2", "m"});
  CHECK(g.g[2][2] == RationalFunction(reference::parse_expr("2*(s1^2+s2^2)").with_variables({"s1", "s2", "m"})));
  ChristoffelSet gamma = christoffel(g);
  RiemannTensor rm = riemann_tensor(gamma);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t l = 0; l < 3; ++l) CHECK(rm(a, x, s, l) == -rm(a, x, l, s));
  ScalarCurvature r = scalar_curvature(g, rm);
  CHECK_FALSE(r.value.is_zero());
}

TEST_CASE("sign convention on a round sphere (float Liouville route)") {
  const double a = 1.7;
  for (int i = 1; i <= 10; ++i) {
    const double th = 0.25 + 0.25 * i;
    const double e = a * a, g = a * a * std::sin(th) * std::sin(th);
    const double g_u = 2 * a * a * std::sin(th) * std::cos(th);
    const double g_uu = 2 * a * a * std::cos(2 * th);
    const double k = liouville_gaussian_curvature(e, 0.0, 0.0, 0.0, g, g_u, 0.0, g_uu);
    const double r_std = 2 * k, r_paper = -2 * k;
    CHECK(std::abs(r_std * a * a - 2) <= 1e-9);
    CHECK(r_paper < 0);
  }
}
