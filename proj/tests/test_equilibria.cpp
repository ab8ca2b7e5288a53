#include <doctest.h>

#include <cmath>
#include <random>

#include "gbt/equilibria.hpp"

using namespace gbt;

namespace {

std::string sys(const char* name) { return std::string(GBT_SYSTEMS_DIR) + "/" + name; }

const Box kBox = Box::square(-3, 3, 2);

}  // namespace

TEST_CASE("interval arithmetic encloses exact results") {
  Interval a(0.1, 0.3), b(-0.2, 0.7);
  Interval s = a + b, p = a * b, d = a - b;
  CHECK(s.lo <= -0.1);
  CHECK(s.hi >= 1.0);
  CHECK(p.lo <= 0.3 * -0.2);
  CHECK(p.hi >= 0.3 * 0.7);
  CHECK(d.lo <= 0.1 - 0.7);
  CHECK(Interval::enclose(BigRational(1, 3)).contains(1.0 / 3));
  CHECK(Interval::enclose(BigRational(1, 2)).width() == 0);
}

TEST_CASE("quadratic and cubic examples have a single equilibrium at the origin") {
  for (const char* name : {"ex01.sys", "ex02.sys", "ex03.sys"}) {
    auto eqs = find_equilibria(load_system(sys(name)), kBox);
    REQUIRE(eqs.size() == 1);
    CHECK(eqs[0].certified);
    CHECK(std::abs(eqs[0].point[0]) <= 1e-10);
    CHECK(std::abs(eqs[0].point[1]) <= 1e-10);
    CHECK(eqs[0].residual <= 1e-10);
  }
  auto e1 = find_equilibria(load_system(sys("ex01.sys")), kBox);
  CHECK(e1[0].kind == EquilibriumKind::sink_focus);
  CHECK(e1[0].index == 1);
  auto e2 = find_equilibria(load_system(sys("ex02.sys")), kBox);
  CHECK(e2[0].kind == EquilibriumKind::source_focus);
  auto e3 = find_equilibria(load_system(sys("ex03.sys")), kBox);
  CHECK(e3[0].kind == EquilibriumKind::linear_center);
}

TEST_CASE("two saddles and nodes") {
  auto eqs = find_equilibria(parse_system("ds1/dt = s1^2 - 1\nds2/dt = s2\n"), kBox);
  REQUIRE(eqs.size() == 2);
  CHECK(std::abs(eqs[0].point[0] + 1) <= 1e-12);
  CHECK(std::abs(eqs[1].point[0] - 1) <= 1e-12);
  CHECK(eqs[0].kind == EquilibriumKind::saddle);
  CHECK(eqs[1].kind == EquilibriumKind::source_node);
  TopologyReport t = euler_characteristic(eqs);
  CHECK(t.chi == 0);
  CHECK(t.sign == GbtSign::nonpositive);

  // Irrational zeros: s1^2 = 2, s2 = s1.
  auto irr = find_equilibria(parse_system("ds1/dt = s1^2 - 2\nds2/dt = s2 - s1\n"), kBox);
  REQUIRE(irr.size() == 2);
  CHECK(std::abs(irr[1].point[0] - std::sqrt(2.0)) <= 1e-12);
  CHECK(irr[1].certified);
}

TEST_CASE("many equilibria") {
  // Zeros at (i, j) for i, j in {-2..2}.
  auto vf = parse_system(
      "ds1/dt = s1*(s1^2-1)*(s1^2-4)\n"
      "ds2/dt = s2*(s2^2-1)*(s2^2-4)\n");
  auto eqs = find_equilibria(vf, Box::square(-2.7, 2.9, 2));
  CHECK(eqs.size() == 25);
  TopologyReport t = euler_characteristic(eqs);
  CHECK(t.chi == 1);  // (sum of sign f'(k))^2 = 1
  CHECK(t.sign == GbtSign::positive);
}

TEST_CASE("boundary contact is an error") {
  auto vf = parse_system("ds1/dt = s1 - 3\nds2/dt = s2\n");
  CHECK_THROWS_AS(find_equilibria(vf, kBox), BoundaryContactError);
  CHECK_NOTHROW(find_equilibria(vf, Box::square(-4, 4, 2)));
}

TEST_CASE("degenerate equilibrium is reported, index undetermined") {
  auto eqs = find_equilibria(parse_system("ds1/dt = s1^2\nds2/dt = s2\n"), kBox);
  REQUIRE(eqs.size() == 1);
  CHECK(eqs[0].kind == EquilibriumKind::degenerate);
  CHECK_FALSE(eqs[0].index.has_value());
  CHECK_THROWS_AS(poincare_index(eqs[0]), DegenerateIndexError);
  TopologyReport t = euler_characteristic(eqs);
  CHECK(t.sign == GbtSign::undetermined);
  CHECK_FALSE(t.notes.empty());
}

TEST_CASE("unspecialized or non-planar input is rejected") {
  CHECK_THROWS_AS(find_equilibria(load_system(sys("ex01a.sys")), kBox), std::invalid_argument);
  CHECK_THROWS_AS(find_equilibria(parse_system("dx/dt = x\n"), Box::square(-1, 1, 1)), std::invalid_argument);
}

TEST_CASE("classification is invariant under positive rescaling") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-4, 4);
  std::uniform_real_distribution<double> c(0.01, 100);
  for (int i = 0; i < 500; ++i) {
    Matrix2 j{{{u(rng), u(rng)}, {u(rng), u(rng)}}};
    const double k = c(rng);
    Matrix2 s{{{k * j[0][0], k * j[0][1]}, {k * j[1][0], k * j[1][1]}}};
    CHECK(classify(j) == classify(s));
  }
  CHECK(classify(Matrix2{{{0, -1}, {1, 0}}}) == EquilibriumKind::linear_center);
  CHECK(classify(Matrix2{{{1, 0}, {0, -1}}}) == EquilibriumKind::saddle);
  CHECK(classify(Matrix2{{{1, 1}, {-1, 1}}}) == EquilibriumKind::source_focus);
  CHECK(classify(Matrix2{{{-2, 0}, {0, -1}}}) == EquilibriumKind::sink_node);
  CHECK(classify(Matrix2{{{0, 0}, {0, 1}}}) == EquilibriumKind::degenerate);
}

TEST_CASE("linearized index agrees with the winding number") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coef(-4, 4);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
    if (a * d - b * c == 0) continue;
    std::string text = "ds1/dt = " + std::to_string(a) + "*s1 + " + std::to_string(b) + "*s2 + s1^2\n" +
                       "ds2/dt = " + std::to_string(c) + "*s1 + " + std::to_string(d) + "*s2 - s1*s2\n";
    auto vf = parse_system(text);
    auto eqs = find_equilibria(vf, Box::square(-0.5, 0.5, 2));
    for (const auto& e : eqs) {
      if (!e.index) continue;
      CHECK(winding_number(vf, e.point, 1e-4) == *e.index);
      ++checked;
    }
  }
  CHECK(checked >= 30);
}
