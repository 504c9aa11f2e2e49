#include <algorithm>
#include <random>

#include "acfo/depattern.hpp"
#include "acfo/error.hpp"
#include "acfo/polynomial.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace acfo;
using namespace acfo::oracle;

namespace {

std::vector<mpz_class> P(const std::string& s) { return parse_univariate(s); }

bool contains(const ThetaSet& t, const std::string& text) {
  return std::any_of(t.patterns.begin(), t.patterns.end(), [&](const auto& d) { return d.to_string() == text; });
}

}  // namespace

TEST_CASE("dependence pattern examples") {
  const Field f7 = Field::create(7, 1);
  CharacterContext c7(f7);
  CHECK(dependence_pattern(c7, {f7.one()}).to_string() == "z1^1 = 1");
  const auto d = dependence_pattern(c7, {f7.from_int(2), f7.from_int(4)});
  CHECK(d.to_string() == "z2^1 = z1^2 & z1^3 = 1");
  CHECK(d.relations.size() == 2);
  const auto z = dependence_pattern(std::vector<Char0Element>{Char0Element::from_rational(2), Char0Element::from_rational(8)});
  CHECK(z.relations.size() == 1);
  CHECK(z.relations.count(2) == 1);
  CHECK(z.to_string() == "z2^1 = z1^3");
  const auto inv = dependence_pattern(
      std::vector<Char0Element>{Char0Element::from_rational(2), Char0Element::from_rational(mpq_class(-1, 2))});
  CHECK(inv.to_string() == "z2^2*z1^2 = 1");
  CHECK_THROWS_AS(dependence_pattern(c7, {f7.zero()}), Error);
  const auto j = to_json(d);
  CHECK(j["relations"].size() == 2);
  CHECK(j["text"] == d.to_string());
}

TEST_CASE("theta over F_p") {
  const ThetaSet a = theta_charp(P("t^3 - 1"), 7);
  CHECK(a.roots == std::vector<std::string>{"1", "2", "4"});
  CHECK(contains(a, "z3^1 = z2^2 & z2^3 = 1 & z1^1 = 1"));
  const ThetaSet b = theta_charp(P("t^2 - 2"), 7);
  CHECK(b.roots == std::vector<std::string>{"3", "4"});
  CHECK(contains(b, "z2^1 = z1^4 & z1^6 = 1"));
  const ThetaSet c = theta_charp(P("t"), 5);
  REQUIRE(c.patterns.size() == 1);
  CHECK(c.patterns[0].k == 0);
  CHECK(c.patterns[0].to_string() == "true");
  // t^2 + 1 over F_3 splits in F_9
  CHECK(theta_charp(P("t^2 + 1"), 3).splitting_degree == 2);
  CHECK(theta_charp(P("(t^2 + t + 2)*(t^3 - t + 1)"), 3).splitting_degree == 6);
  try {
    theta_charp(P("7*t^2 + 14"), 7);
    FAIL("expected ZeroPolynomial");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroPolynomial);
  }
  CHECK_THROWS_AS(theta_charp(P("0"), 7), Error);
}

TEST_CASE("theta in characteristic 0") {
  const ThetaSet a = theta_char0_restricted(P("t^2 - 4"));
  CHECK(a.roots == std::vector<std::string>{"-2", "2"});
  CHECK(contains(a, "z2^2 = z1^2"));
  const RootSystem rs = root_system_char0(P("t^2 - 4"));
  CHECK(rs.pattern({1, 0}).to_string() == "z2^2 = z1^2");
  CHECK(rs.pattern({1, 0}).relations.count(1) == 0);
  const ThetaSet b = theta_char0_restricted(P("t^2 + 1"));
  CHECK(contains(b, "z2^1 = z1^3 & z1^4 = 1"));
  try {
    theta_char0_restricted(P("t^2 - 2"));
    FAIL("expected UnsupportedNumberField");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedNumberField);
  }
  const RootSystem mixed = root_system_char0(P("(t - 2)*(t + 1)*(t^2 + t + 1)*(2*t - 1)"));
  CHECK(mixed.roots0.size() == 5);
  CHECK(root_system_char0(P("t^3*(t^4 - 1)")).roots0.size() == 4);
}

TEST_CASE("lattice answers match exhaustive search") {
  std::mt19937_64 rng(7);
  for (auto [p, s] : std::vector<std::pair<u64, unsigned>>{{7, 1}, {13, 1}, {2, 4}, {3, 2}, {5, 2}, {3, 3}}) {
    const Field f = Field::create(p, s);
    CharacterContext ctx(f);
    const u64 N = f.order();
    for (int trial = 0; trial < 12; ++trial) {
      const std::size_t k = 1 + rng() % (N <= 16 ? 3 : 2);
      std::vector<FieldElement> c;
      for (std::size_t i = 0; i < k; ++i) c.push_back(f.from_index(1 + rng() % N));
      const auto d = dependence_pattern(ctx, c);
      CHECK(d == brute_pattern(c));
      std::vector<u64> logs;
      for (const auto& x : c) logs.push_back(dlog(x));
      CHECK(brute_pattern_dlog(logs, N) == d);
      CHECK(sound(d, c));
      CHECK_FALSE(d.bounded_search);
    }
  }
}

TEST_CASE("every emitted pattern is an identity at some ordering") {
  for (auto [poly, p] : std::vector<std::pair<std::string, u64>>{
           {"t^4 - 1", 13}, {"t^3 - 2", 7}, {"t^4 + t + 1", 2}, {"(t^2 - 3)*(t - 5)", 11}}) {
    const RootSystem rs = root_system_charp(P(poly), p);
    std::vector<std::size_t> perm(rs.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<FieldElement> c;
      for (auto i : perm) c.push_back(rs.roots[i]);
      CHECK(sound(rs.pattern(perm), c));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("theta does not depend on the root enumeration order") {
  std::mt19937_64 rng(3);
  for (auto [poly, p] : std::vector<std::pair<std::string, u64>>{{"t^6 - 1", 7}, {"t^5 - 3", 11}, {"t^3 + t + 1", 2}}) {
    RootSystem rs = root_system_charp(P(poly), p);
    const ThetaSet a = theta_from_roots(rs);
    std::shuffle(rs.roots.begin(), rs.roots.end(), rng);
    CHECK(theta_from_roots(rs).patterns == a.patterns);
  }
  RootSystem z = root_system_char0(P("(t^2 - 4)*(t^2 + t + 1)"));
  const ThetaSet a = theta_from_roots(z);
  std::reverse(z.roots0.begin(), z.roots0.end());
  CHECK(theta_from_roots(z).patterns == a.patterns);
}

TEST_CASE("cyclotomic theta agrees across characteristics") {
  for (unsigned n = 1; n <= 6; ++n) {
    std::vector<mpz_class> tn(n + 1, 0);
    tn[0] = -1;
    tn[n] = 1;
    const ThetaSet zero = theta_char0_restricted(tn);
    for (u64 p : {7u, 13u}) {
      if (n % p == 0) continue;
      const ThetaSet charp = theta_charp(tn, p);
      CHECK(charp.patterns == zero.patterns);
    }
  }
}
