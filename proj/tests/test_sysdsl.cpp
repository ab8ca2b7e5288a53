#include <doctest.h>

#include "gbt/sysdsl.hpp"

using namespace gbt;

namespace {

std::string sys(const char* name) { return std::string(GBT_SYSTEMS_DIR) + "/" + name; }

Polynomial parse_rhs(const std::string& rhs) { return parse_system("ds1/dt = " + rhs).components[0]; }

BigRational eval_at(const Polynomial& p, std::vector<BigRational> point) { return p.evaluate(point); }

}  // namespace

TEST_CASE("parse ex01") {
  VectorField vf = load_system(sys("ex01.sys"));
  CHECK(vf.name == "example01");
  CHECK(vf.states == std::vector<std::string>{"s1", "s2"});
  CHECK(vf.params.empty());
  CHECK(vf.degree() == 3);
  CHECK(vf.components[0].to_string() == "s1^3+s1*s2^2-s1-s2");
  CHECK(vf.components[1].to_string() == "s1^2*s2+s2^3+s1-s2");
}

TEST_CASE("parameterized families") {
  VectorField a = load_system(sys("ex02a.sys"));
  CHECK(a.params == std::vector<std::string>{"m1", "m2"});
  CHECK(a.degree() == 5);
  VectorField b = load_system(sys("ex01a.sys"));
  CHECK(b.params == std::vector<std::string>{"m"});
}

TEST_CASE("undeclared symbols become parameters without a header") {
  VectorField vf = parse_system("dx/dt = -y + a*x\ndy/dt = x + b*y\n");
  CHECK(vf.states == std::vector<std::string>{"x", "y"});
  CHECK(vf.params == std::vector<std::string>{"a", "b"});
}

TEST_CASE("operator precedence and literals") {
  CHECK(parse_rhs("-s1^2") == -parse_rhs("s1*s1"));
  CHECK(parse_rhs("2^3^2") == parse_rhs("512"));
  CHECK(parse_rhs("s1/2 + 0.5*s1") == parse_rhs("s1"));
  CHECK(parse_rhs("(s1+1)^2 - s1^2 - 2*s1") == parse_rhs("1"));
  CHECK(parse_rhs("3/2*s1").to_string() == "3/2*s1");
}

TEST_CASE("errors carry kind and position") {
  try {
    parse_system("ds1/dt = 1/ s1");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::semantic);
    CHECK(std::string(e.what()).find("non-polynomial") != std::string::npos);
    CHECK(e.line() == 1);
    CHECK(e.column() == 11);
  }
  try {
    parse_system("ds1/dt = s1 $ 2");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::lexer);
    CHECK(e.column() == 13);
  }
  try {
    parse_system("ds1/dt = (s1 + 2");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::syntax);
  }
  CHECK_THROWS_AS(parse_system("ds1/dt = s1\nds1/dt = s1"), ParseError);
  CHECK_THROWS_AS(parse_system("params: m\nds1/dt = s1*q"), ParseError);
  CHECK_THROWS_AS(parse_system("ds1/dt = s1^s1"), ParseError);
  CHECK_THROWS_AS(parse_system("ds1/dt = s1^-1"), ParseError);
  CHECK_THROWS_AS(parse_system("ds1/dt = s1/0"), ParseError);
  CHECK_THROWS_AS(parse_system("# nothing\n"), ParseError);
  CHECK_THROWS_AS(load_system("no/such/file.sys"), FileError);
}

TEST_CASE("jacobians at the origin") {
  auto at_origin = [](const VectorField& vf) {
    auto j = jacobian(vf);
    std::vector<BigRational> o(vf.symbols().size(), 0);
    return std::vector<BigRational>{j[0][0].evaluate(o), j[0][1].evaluate(o), j[1][0].evaluate(o),
                                    j[1][1].evaluate(o)};
  };
  auto j1 = at_origin(load_system(sys("ex01.sys")));
  CHECK(j1 == std::vector<BigRational>{-1, -1, 1, -1});
  CHECK(j1[0] + j1[3] == -2);
  CHECK(j1[0] * j1[3] - j1[1] * j1[2] == 2);
  auto j2 = at_origin(load_system(sys("ex02.sys")));
  CHECK(j2 == std::vector<BigRational>{4, -1, 1, 4});
  CHECK(j2[0] * j2[3] - j2[1] * j2[2] == 17);
  auto j3 = at_origin(load_system(sys("ex03.sys")));
  CHECK(j3 == std::vector<BigRational>{0, -1, 1, 0});
}

TEST_CASE("specialization recovers ex01 and ex02") {
  VectorField ex01 = load_system(sys("ex01.sys"));
  VectorField ex01a = load_system(sys("ex01a.sys"));
  VectorField s = specialize(ex01a, {{"m", 1}});
  CHECK(s.components[0] == ex01.components[0]);
  CHECK(s.components[1] == ex01.components[1]);
  CHECK(s.params.empty());

  VectorField ex02 = load_system(sys("ex02.sys"));
  VectorField t = specialize(load_system(sys("ex02a.sys")), {{"m1", 1}, {"m2", 4}});
  CHECK(t.components[0] == ex02.components[0]);
  CHECK(t.components[1] == ex02.components[1]);

  CHECK(specialize(ex01a, {}) == ex01a);
  CHECK_THROWS_AS(specialize(ex01a, {{"s1", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(specialize(ex01a, {{"k", 1}}), std::invalid_argument);

  VectorField partial = specialize(load_system(sys("ex02a.sys")), {{"m1", 1}});
  CHECK(partial.params == std::vector<std::string>{"m2"});
}

TEST_CASE("jacobian commutes with specialization") {
  VectorField a = load_system(sys("ex02a.sys"));
  std::map<std::string, BigRational> b{{"m1", BigRational(3, 2)}, {"m2", 5}};
  auto j1 = jacobian(specialize(a, b));
  auto j0 = jacobian(a);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      CHECK(j1[r][c] == j0[r][c].substitute("m1", BigRational(3, 2)).substitute("m2", 5));
}

TEST_CASE("render/parse round trip on the shipped corpus") {
  for (const char* f : {"ex01.sys", "ex01a.sys", "ex02.sys", "ex02a.sys", "ex03.sys", "rotation.sys"}) {
    VectorField vf = load_system(sys(f));
    VectorField again = parse_system(render(vf));
    CHECK(again == vf);
    CHECK(again.name == vf.name);
  }
  CHECK(eval_at(parse_rhs("s1*s1"), {3}) == 9);
}
