#include <map>
#include <set>

#include "acfo/chi.hpp"
#include "acfo/error.hpp"
#include "doctest.h"

using namespace acfo;

namespace {

// dlog by walking powers of a chosen base, independent of the library's dlog
std::map<std::vector<u64>, u64> power_table(const FieldElement& g, u64 order) {
  std::map<std::vector<u64>, u64> t;
  FieldElement cur = g.field().one();
  for (u64 e = 0; e < order; ++e) {
    t[cur.coeffs()] = e;
    cur *= g;
  }
  return t;
}

CirclePoint cp(long n, long d, u64 p) { return CirclePoint(n, d, p); }

}  // namespace

TEST_CASE("chi examples") {
  CharacterContext c5(Field::create(5, 1));
  const Field& f = c5.field();
  CHECK(f.generator() == f.from_int(2));
  CHECK(chi(c5, f.from_int(4)) == cp(1, 2, 5));
  CHECK(chi(c5, f.one()).is_identity());
  CHECK(chi(c5, f.generator()) == cp(1, 4, 5));
  CHECK_THROWS_AS(chi(c5, f.zero()), Error);
  CHECK(chi_inv(c5, cp(1, 2, 5)) == f.from_int(4));
  CHECK(chi_inv(c5, cp(0, 1, 5)).is_one());
  try {
    chi_inv(c5, cp(1, 3, 5));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRepresentedAtThisLevel);
  }
  CHECK(order_lt(c5, f.from_int(1), f.from_int(2)));
  CHECK(order_lt(c5, f.from_int(2), f.from_int(4)));
  CHECK(order_lt(c5, f.from_int(4), f.from_int(3)));
  CHECK_FALSE(order_lt(c5, f.from_int(3), f.from_int(3)));

  CharacterContext c9(Field::create(3, 2));
  FieldElement g2 = c9.field().generator().pow_u(2);
  // n = 3 equals p here, so exactly one residue holds
  int hits = 0;
  for (u64 r = 0; r < 3; ++r) hits += pred_P_field(c9, g2, 3, r);
  CHECK(hits == 1);
  for (u64 r = 0; r < 2; ++r) CHECK(pred_P_field(c9, g2, 2, r));
}

TEST_CASE("chi is an injective homomorphism onto the level fractions") {
  for (auto [p, L] : std::vector<std::pair<u64, unsigned>>{{2, 4}, {3, 4}, {5, 2}, {7, 2}, {2, 6}}) {
    CharacterContext ctx(Field::create(p, L));
    const Field& f = ctx.field();
    auto table = power_table(f.generator(), f.order());
    std::set<std::pair<std::string, std::string>> seen;
    for (u64 i = 1; i < f.size(); ++i) {
      FieldElement a = f.from_index(i);
      CirclePoint c = chi(ctx, a);
      REQUIRE(c == CirclePoint(table[a.coeffs()], f.order(), p));
      REQUIRE(chi_inv(ctx, c) == a);
      seen.insert({c.num().get_str(), c.den().get_str()});
    }
    CHECK(seen.size() == f.order());
    for (u64 i = 1; i < f.size(); i += 3) {
      for (u64 j = 1; j < f.size(); j += 5) {
        FieldElement a = f.from_index(i), b = f.from_index(j);
        REQUIRE(chi(ctx, a * b) == cp_mul(chi(ctx, a), chi(ctx, b)));
      }
    }
  }
}

TEST_CASE("level generators give the same character") {
  CharacterContext ctx(Field::create(2, 6));
  const Field& f = ctx.field();
  for (unsigned m : {1u, 2u, 3u}) {
    const u64 sub = f.level_order(m);
    auto table = power_table(f.level_generator(m), sub);
    for (const auto& a : f.subfield_elements(m)) {
      if (a.is_zero()) continue;
      REQUIRE(chi(ctx, a) == CirclePoint(table.at(a.coeffs()), sub, 2));
    }
  }
}

TEST_CASE("chi survives extension of the ambient field") {
  Field f4 = Field::create(2, 2);
  CharacterContext c4(f4);
  AmbientExtension e = extend_ambient(f4, 4);
  CharacterContext c16(e.field);
  for (u64 i = 1; i < 4; ++i) {
    FieldElement a = f4.from_index(i);
    CHECK(chi(c4, a) == chi(c16, e.embed(a)));
  }
  Field f9 = Field::create(3, 2);
  AmbientExtension e9 = extend_ambient(f9, 4);
  for (u64 i = 1; i < 9; ++i) {
    CHECK(chi(CharacterContext(f9), f9.from_index(i)) == chi(CharacterContext(e9.field), e9.embed(f9.from_index(i))));
  }
}

TEST_CASE("frobenius twist") {
  CharacterContext ctx(Field::create(3, 3));
  for (u64 i = 1; i < ctx.field().size(); ++i) {
    FieldElement a = ctx.field().from_index(i);
    REQUIRE(chi(ctx, a.frobenius(1)) == cp_pow(chi(ctx, a), 3));
  }
}

TEST_CASE("cyclotomic invariant examples") {
  CHECK(cyclotomic_invariant(CharacterContext(Field::create(2, 1)), 1).psi == fp::Poly{1, 1});
  CHECK(cyclotomic_invariant(CharacterContext(Field::create(2, 2)), 2).psi == fp::Poly{1, 1, 1});
  CHECK(cyclotomic_invariant(CharacterContext(Field::create(2, 4)), 2).psi == fp::Poly{1, 1, 1});
  auto c3 = cyclotomic_invariant(CharacterContext(Field::create(3, 1)), 1);
  CHECK(c3.psi == fp::Poly{1, 1});
  CHECK(c3.to_string() == "x + 1");
  CHECK_THROWS_AS(cyclotomic_invariant(CharacterContext(Field::create(2, 4)), 3), Error);
}

TEST_CASE("invariants are coherent by construction") {
  CharacterContext ctx(Field::create(2, 4));
  std::vector<CyclotomicInvariant> seq;
  for (unsigned n : {1u, 2u, 4u}) seq.push_back(cyclotomic_invariant(ctx, n));
  CHECK(verify_coherent_sequence(seq).ok());
  CHECK(verify_coherent_sequence({seq[1]}).ok());

  for (const auto& inv : seq) {
    CHECK(fp::is_irreducible(inv.psi, 2));
    CHECK(inv.psi.size() == inv.n + 1);
  }

  // the other primitive quartic over F_2 is x^4 + x^3 + 1; pairing it with the
  // wrong Psi_2 is impossible since F_4 has one, so corrupt Psi_2 into a non-primitive
  auto bad = seq;
  bad[1].psi = {1, 0, 1};
  CHECK_FALSE(verify_coherent_sequence(bad).ok());
  // level 4 over F_3: swap in a primitive quartic whose norm is the other quadratic
  CharacterContext c81(Field::create(3, 4));
  std::vector<CyclotomicInvariant> s3{cyclotomic_invariant(c81, 2), cyclotomic_invariant(c81, 4)};
  CHECK(verify_coherent_sequence(s3).ok());
  auto other = s3;
  other[0].psi = s3[0].psi == fp::Poly{2, 1, 1} ? fp::Poly{2, 2, 1} : fp::Poly{2, 1, 1};
  CHECK_FALSE(verify_coherent_sequence(other).ok());
  CHECK_THROWS_AS(build_from_invariants(3, other), Error);
}

TEST_CASE("build_from_invariants round trip") {
  for (auto [p, L] : std::vector<std::pair<u64, unsigned>>{{3, 2}, {2, 4}, {5, 2}, {2, 6}, {3, 1}}) {
    CharacterContext ctx(Field::create(p, L));
    std::vector<CyclotomicInvariant> seq;
    for (unsigned n = 1; n <= L; ++n) {
      if (L % n == 0) seq.push_back(cyclotomic_invariant(ctx, n));
    }
    CharacterContext back = build_from_invariants(p, seq);
    CHECK(back.field().modulus() == ctx.field().modulus());
    for (u64 i = 1; i < ctx.field().size(); ++i) {
      REQUIRE(chi(ctx, ctx.field().from_index(i)) == chi(back, back.field().from_index(i)));
    }
    for (const auto& inv : seq) CHECK(cyclotomic_invariant(back, inv.n).psi == inv.psi);
    auto j = invariants_to_json(seq);
    CHECK(j["schema"] == "acfo.invariants/1");
    auto seq2 = invariants_from_json(j);
    CHECK(seq2.size() == seq.size());
    CHECK(seq2.back().psi == seq.back().psi);
  }
  CharacterContext f4 = build_from_invariants(2, {{2, 1, {1, 1}}, {2, 2, {1, 1, 1}}});
  CHECK(chi(f4, f4.field().generator()) == cp(1, 3, 2));
}
