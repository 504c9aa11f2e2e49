#include <random>

#include "acfo/error.hpp"
#include "acfo/group_solver.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace acfo;
using namespace acfo::oracle;

TEST_CASE("group solver examples") {
  GroupConstraintSystem s;
  s.k = 2;
  s.p = 3;
  s.congruences.push_back({IVec{2, -1}, 0});
  s.literals.push_back(lt({1, 0}, {0, 1}));
  const TmResult r = solve_system(s);
  REQUIRE(r.sat);
  CHECK(check_witness(s, r.witness));
  for (const auto& t : r.witness) CHECK(t.den() % 3 != 0);
  CHECK(check_witness(s, {CirclePoint(1, 8, 3), CirclePoint(1, 4, 3)}));

  GroupConstraintSystem self;
  self.k = 1;
  self.p = 3;
  self.literals.push_back(lt({1}, {1}));
  CHECK_FALSE(solve_system(self).sat);

  // z1^3 = 1 and P[0,3](z1) leave only t1 = 0; 1 < z1 excludes it
  GroupConstraintSystem tor;
  tor.k = 1;
  tor.p = 3;
  tor.congruences.push_back({IVec{3}, 0});
  tor.literals.push_back(pred({1}, 0, 3));
  const TmResult only = solve_system(tor);
  REQUIRE(only.sat);
  CHECK(only.witness[0].is_identity());
  tor.literals.push_back(lt({0}, {1}));
  CHECK_FALSE(solve_system(tor).sat);
}

TEST_CASE("negated predicates and coprime moduli") {
  GroupConstraintSystem s;
  s.k = 1;
  s.p = 5;
  s.literals.push_back(pred({1}, 1, 2, true));  // p does not divide 2
  CHECK_FALSE(solve_system(s).sat);
  s.literals = {pred({1}, 1, 2)};
  CHECK(solve_system(s).sat);
  s.literals = {pred({1}, 0, 5, true), pred({1}, 1, 5, true), pred({1}, 2, 5, true), pred({1}, 3, 5, true)};
  const TmResult r = solve_system(s);
  REQUIRE(r.sat);
  CHECK(pred_P(r.witness[0], 5, 4));
  s.literals.push_back(pred({1}, 4, 5, true));
  CHECK_FALSE(solve_system(s).sat);
}

TEST_CASE("tm_check on patterns") {
  const Field f = Field::create(7, 1);
  CharacterContext ctx(f);
  const auto theta = dependence_pattern(ctx, {f.from_int(2), f.from_int(4)});
  const SpecialSentence s = parse_sentence("exists z1 z2 : roots(t^2+t+1) ; ring: true ; mult: z2 = z1*z1");
  const TmResult r = tm_check(theta, 2, s.mult, 7);
  REQUIRE(r.sat);
  CHECK(r.witness[0].value() == mpq_class(1, 3));
  CHECK(r.witness[1].value() == mpq_class(2, 3));
  const SpecialSentence bad = parse_sentence("exists z1 z2 : roots(t^2+t+1) ; ring: true ; mult: z1 < z2 and z2 < z1");
  CHECK_FALSE(tm_check(theta, 2, bad.mult, 7).sat);
}

TEST_CASE("group solver agrees with brute force") {
  std::mt19937_64 rng(2024);
  int agree_sat = 0, total = 0;
  for (int trial = 0; trial < 300; ++trial) {
    unsigned max_n = 0;
    const GroupConstraintSystem s = random_system(rng, &max_n);
    const TmResult r = solve_system(s);
    const bool brute = brute_force(s, max_n);
    ++total;
    if (brute) CHECK(r.sat);
    if (r.sat) {
      CHECK(check_witness(s, r.witness));
      agree_sat += brute;
    }
  }
  CHECK(total >= 100);
  MESSAGE("systems: " << total << ", satisfiable by brute force: " << agree_sat);
}
