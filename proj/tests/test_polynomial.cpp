#include "acfo/error.hpp"
#include "acfo/polynomial.hpp"
#include "doctest.h"

using namespace acfo;

TEST_CASE("parse and print") {
  IntPoly p = IntPoly::parse("2*x1^3*x2 - x2 + 1");
  CHECK(p.nvars() == 2);
  CHECK(p.terms().size() == 3);
  CHECK(p.to_string() == "2*x1^3*x2 - x2 + 1");
  CHECK(IntPoly::parse(p.to_string()) == p);
  CHECK(IntPoly::parse("(x1 + 1)^2").to_string() == "x1^2 + 2*x1 + 1");
  CHECK(IntPoly::parse("x2 - x1 - 1", 3).nvars() == 3);
  CHECK(IntPoly::parse("-x1*-x1").to_string() == "x1^2");
  CHECK(IntPoly::parse("x1 - x1").is_zero());
  CHECK(IntPoly::parse("7").is_constant());
  CHECK_THROWS_AS(IntPoly::parse("x1 +"), Error);
  CHECK_THROWS_AS(IntPoly::parse("x0"), Error);
  CHECK_THROWS_AS(IntPoly::parse("y1"), Error);
  try {
    IntPoly::parse("x3", 2);
    FAIL("expected arity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArityError);
  }
}

TEST_CASE("univariate polynomials in t") {
  auto c = parse_univariate("t^3 - 1");
  REQUIRE(c.size() == 4);
  CHECK(c[0] == -1);
  CHECK(c[3] == 1);
  CHECK(univariate_to_string(c) == "t^3 - 1");
  CHECK(univariate_to_string(parse_univariate("t^2+t+1")) == "t^2 + t + 1");
  CHECK_THROWS_AS(parse_univariate("t1"), Error);
}

TEST_CASE("evaluation over a field") {
  Field f = Field::create(5, 1);
  FieldPoly p = compile(IntPoly::parse("x2^2 - x1^3 - x1 - 1"), f);
  // (x1, x2) = (0, 1): 1 - 0 - 0 - 1 = 0
  CHECK(eval(p, f, {f.zero(), f.one()}).is_zero());
  CHECK(eval(p, f, {f.one(), f.one()}) == f.from_int(-2));
  fpoly::Poly u = specialize(p, f, {f.from_int(2), f.zero()}, 1);
  // x2^2 - 11 = x2^2 - 1
  REQUIRE(u.size() == 3);
  CHECK(u[0] == f.from_int(-1));
  CHECK(u[2].is_one());
  // coefficients reduced mod p vanish
  CHECK(compile(IntPoly::parse("5*x1 + 10"), f).is_zero());
}
