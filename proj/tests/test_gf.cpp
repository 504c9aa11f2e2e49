#include <set>

#include "acfo/error.hpp"
#include "acfo/fpoly.hpp"
#include "acfo/gf.hpp"
#include "doctest.h"

using namespace acfo;

namespace {

// naive multiplicative order by repeated multiplication
u64 naive_order(const FieldElement& a) {
  FieldElement cur = a;
  u64 k = 1;
  while (!cur.is_one()) {
    cur *= a;
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("prime fields pick the least primitive root") {
  CHECK(Field::create(7, 1).generator().coeffs() == std::vector<u64>{3});
  CHECK(Field::create(2, 1).generator().coeffs() == std::vector<u64>{1});
  CHECK(Field::create(11, 1).generator().coeffs() == std::vector<u64>{2});
  CHECK(Field::create(41, 1).generator().coeffs() == std::vector<u64>{6});
}

TEST_CASE("F_4 modulus and generator") {
  Field f = Field::create(2, 2);
  CHECK(f.modulus() == std::vector<u64>{1, 1, 1});
  CHECK(f.generator().coeffs() == std::vector<u64>{0, 1});
  FieldElement x = f.from_coeffs({0, 1});
  CHECK((x * x).coeffs() == std::vector<u64>{1, 1});
  CHECK((x + x).is_zero());
  CHECK(x.to_string() == "x");
  CHECK((x * x).to_string() == "x + 1");
}

TEST_CASE("field creation errors") {
  CHECK_THROWS_AS(Field::create(9, 1), Error);
  try {
    Field::create(9, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
  try {
    Field::create(2, 60);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SizeCapExceeded);
  }
  try {
    Field::create(mpz_class("170141183460469231731687303715884105727"), 1);
    FAIL("expected cap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SizeCapExceeded);
  }
}

TEST_CASE("arithmetic examples in F_7") {
  Field f = Field::create(7, 1);
  CHECK(f.from_int(3).pow(-1) == f.from_int(5));
  CHECK(dlog(f.from_int(6)) == 3);
  CHECK(dlog(f.one()) == 0);
  CHECK(dlog(f.generator()) == 1);
  CHECK_THROWS_AS(f.zero().inverse(), Error);
  CHECK_THROWS_AS(dlog(f.zero()), Error);
  Field g = Field::create(7, 1);
  CHECK_THROWS_AS(f.one() + g.one(), Error);
}

TEST_CASE("generator is primitive and modulus irreducible across small fields") {
  for (auto [p, L] : std::vector<std::pair<u64, unsigned>>{{2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 2}, {2, 6}}) {
    Field f = Field::create(p, L);
    CHECK(fp::is_irreducible(f.modulus(), p));
    CHECK(naive_order(f.generator()) == f.order());
    // least: every earlier element is not primitive
    for (u64 i = 1; i < f.generator().index(); ++i) CHECK(naive_order(f.from_index(i)) < f.order());
  }
}

TEST_CASE("dlog agrees between tables and Pohlig-Hellman") {
  Field f = Field::create(3, 5);
  FieldElement g = f.generator();
  FieldElement cur = f.one();
  for (u64 e = 0; e < f.order(); ++e) {
    CHECK(dlog(cur) == e);
    if (e % 17 == 0) CHECK(dlog_pohlig_hellman(cur) == e);
    cur *= g;
  }
}

TEST_CASE("dlog in a field beyond the table cap") {
  Field f = Field::create(2, 40);
  FieldElement a = f.generator().pow_u(123456789012ULL);
  CHECK(dlog(a) == 123456789012ULL);
  Field big = Field::create(100003, 2);
  FieldElement b = big.generator().pow_u(9876543210ULL);
  CHECK(dlog(b) == 9876543210ULL);
}

TEST_CASE("subfield membership") {
  Field f = Field::create(2, 4);
  FieldElement w = f.generator().pow_u(5);
  CHECK(w.pow_u(3).is_one());
  CHECK(subfield_test(w, 2));
  CHECK(subfield_test(f.zero(), 1));
  CHECK_FALSE(subfield_test(f.generator(), 2));
  CHECK_THROWS_AS(subfield_test(w, 3), Error);
  CHECK(f.subfield_elements(2).size() == 4);
}

TEST_CASE("frobenius is a ring automorphism") {
  Field f = Field::create(3, 4);
  for (u64 i = 0; i < f.size(); i += 7) {
    for (u64 j = 1; j < f.size(); j += 11) {
      FieldElement a = f.from_index(i), b = f.from_index(j);
      CHECK((a * b).frobenius(1) == a.frobenius(1) * b.frobenius(1));
      CHECK((a + b).frobenius(2) == a.frobenius(2) + b.frobenius(2));
      CHECK(a.frobenius(4) == a);
    }
  }
}

TEST_CASE("extend_ambient keeps the norm-compatible generator") {
  Field f4 = Field::create(2, 2);
  AmbientExtension e = extend_ambient(f4, 4);
  CHECK(e.field.degree() == 4);
  CHECK(e.field.generator().pow_u(5) == e.embed(f4.generator()));
  CHECK(naive_order(e.field.generator()) == 15);
  for (const auto& a : f4.elements()) {
    for (const auto& b : f4.elements()) {
      CHECK(e.embed(a * b) == e.embed(a) * e.embed(b));
      CHECK(e.embed(a + b) == e.embed(a) + e.embed(b));
    }
  }
  AmbientExtension same = extend_ambient(f4, 2);
  CHECK(same.field == f4);
  CHECK(same.field.generator() == f4.generator());
  CHECK_THROWS_AS(extend_ambient(f4, 3), Error);

  Field f9 = Field::create(3, 2);
  AmbientExtension e9 = extend_ambient(f9, 6);
  CHECK(e9.field.generator().pow_u(e9.field.order() / 8) == e9.embed(f9.generator()));
  Field f5 = Field::create(5, 1);
  AmbientExtension e5 = extend_ambient(f5, 3);
  CHECK(e5.field.generator().pow_u(31) == e5.embed(f5.generator()));
}

TEST_CASE("json round trip") {
  Field f = Field::create(3, 3);
  Field g = field_from_json(field_to_json(f));
  CHECK(g.modulus() == f.modulus());
  CHECK(g.generator().coeffs() == f.generator().coeffs());
  auto j = field_to_json(f);
  j["generator"] = std::vector<u64>{1, 0, 0};
  CHECK_THROWS_AS(field_from_json(j), Error);
}

TEST_CASE("root finding scan and splitting agree") {
  Field f = Field::create(5, 6);
  // x^4 - 1 has roots 1..4; x^2 - 2 has roots in F_25
  fpoly::Poly a = fpoly::lift(f, {4, 0, 0, 0, 1});
  auto r1 = fpoly::roots_by_scan(f, a, 1);
  auto r2 = fpoly::roots_by_splitting(f, a, 1);
  CHECK(r1.size() == 4);
  CHECK(r1 == r2);
  fpoly::Poly b = fpoly::lift(f, {3, 0, 1});
  CHECK(fpoly::roots_by_scan(f, b, 1).empty());
  auto s1 = fpoly::roots_by_scan(f, b, 2);
  auto s2 = fpoly::roots_by_splitting(f, b, 2);
  CHECK(s1.size() == 2);
  CHECK(s1 == s2);
  auto s6 = fpoly::roots_in_subfield(f, fpoly::lift(f, {1, 1, 0, 0, 0, 0, 1}), 6);
  for (const auto& r : s6) CHECK(fpoly::eval(f, fpoly::lift(f, {1, 1, 0, 0, 0, 0, 1}), r).is_zero());
  Field g = Field::create(2, 8);
  fpoly::Poly c = fpoly::lift(g, {1, 1, 1});
  CHECK(fpoly::roots_by_splitting(g, c, 2) == fpoly::roots_by_scan(g, c, 2));
  CHECK(fpoly::roots_by_splitting(g, c, 2).size() == 2);
  fpoly::Poly d = fpoly::lift(g, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1});  // x^15 + 1
  CHECK(fpoly::roots_by_splitting(g, d, 4).size() == 15);
}

TEST_CASE("prime-field polynomial helpers") {
  // (x+1)^2 (x^2+x+1) over F_2 has radical (x+1)(x^2+x+1)
  fp::Poly f = fp::mul(fp::mul({1, 1}, {1, 1}, 2), {1, 1, 1}, 2);
  CHECK(fp::radical(f, 2) == fp::mul({1, 1}, {1, 1, 1}, 2));
  // x^3 - 1 over F_3 = (x-1)^3
  CHECK(fp::radical({2, 0, 0, 1}, 3) == fp::Poly{2, 1});
  CHECK(fp::distinct_degree_factor_degrees(fp::mul({1, 1}, {1, 1, 1}, 2), 2) == std::vector<unsigned>{1, 2});
  CHECK(fp::is_irreducible({1, 1, 0, 1}, 2));
  CHECK_FALSE(fp::is_irreducible({1, 0, 0, 1}, 2));
}
