#include <random>

#include "acfo/error.hpp"
#include "acfo/formula.hpp"
#include "doctest.h"

using namespace acfo;

namespace {

const std::vector<std::string> kCorpus = {
    "exists z1 z2 : roots(t^2+t+1) ; ring: z1+z2 = -1 ; mult: z2 = z1*z1",
    "exists z1 : roots(t - 1) ; ring: true ; mult: true",
    "exists : roots(t^2 + 1) ; ring: true ; mult: false",
    "exists z1 z2 z3 : roots(t^3-1) ; ring: true ; mult: P[0,7](z2)",
    "exists z1 z2 : roots(t^2 - 2) ; ring: z1*z2 = -2 ; mult: z1 < z2",
    "exists z1 z2 : roots(t^2-4) ; ring: z1 != z2 ; mult: not z1 < z2",
    "exists z1 z2 : roots((t-2)*(t+2)) ; ring: (z1 - z2)^2 = 16 ; mult: z1^2 = z2^2",
    "exists z1 z2 : roots(t^2+t+1) ; ring: z1 = z2 ; mult: true",
    "exists z1 z2 : roots(t^2+t+1) ; ring: true ; mult: z1 < z2 and z2 < z1",
    "exists z1 z2 : roots(t^2+t+1) ; ring: true ; mult: z1 < z2 or (z2 < z1 and P[1,3](z1))",
    "exists z1 z2 z3 : roots(t^3 - 2) ; ring: z1*z2*z3 = 2 ; mult: z1*z2^-1 < z3",
    "exists z1 : roots(t^4 - 1) ; ring: z1^2 = -1 ; mult: not (z1 = 1)",
    "exists z1 z2 : roots(t^2 - t - 1) ; ring: z1 + z2 = 1 and z1*z2 = -1 ; mult: (z1*z2)^3 < z1",
    "exists z1 z2 : roots(t^2 + 3*t + 5) ; ring: not (z1 = 0) or false ; mult: P[-1,9](z1*z2)",
    "exists z1 : roots(-t + 3) ; ring: -z1 = -3 ; mult: 1 < z1",
    "exists z1 z2 : roots(t^2 - 3) ; ring: ((z1)) = -(z2) ; mult: (z1) = (z2)^-1",
    "exists z1 z2 z3 z4 : roots(t^4 - 1) ; ring: z1 + z2 + z3 + z4 = 0 ; mult: z1 < z2 and z2 < z3 and z3 < z4",
    "exists z1 z2 : roots(t^2+1) ; ring: true ; mult: not (z1 < z2 or z2 = z1)",
    "exists z1 z2 : roots(t^2 + 2) ; ring: z1 - z2 - z1 = z1 - 2*z1 ; mult: z1 != z2",
    "exists z1 : roots(t^5 - t) ; ring: z1^4 = 1 ; mult: P[2,5](z1) and not P[0,25](z1^3)",
};

}  // namespace

TEST_CASE("sentence round trip") {
  for (const auto& s : kCorpus) {
    const SpecialSentence a = parse_sentence(s);
    CHECK(normalize_sentence(a.to_string()) == normalize_sentence(s));
    CHECK(parse_sentence(a.to_string()).to_string() == a.to_string());
  }
  const SpecialSentence ex = parse_sentence(kCorpus[0]);
  CHECK(ex.k == 2);
  CHECK(ex.P() == std::vector<mpz_class>{1, 1, 1});
  CHECK(parse_sentence(kCorpus[6]).P() == std::vector<mpz_class>{-4, 0, 1});
}

TEST_CASE("sentence errors") {
  auto code = [](const std::string& s) {
    try {
      parse_sentence(s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code("exists z1 : roots() ; ring: true ; mult: true") == ErrorCode::SyntaxError);
  CHECK(code("exists z1 : roots(t) ; ring: z2 = 0 ; mult: true") == ErrorCode::ArityError);
  CHECK(code("exists z1 : roots(t) ; ring: true ; mult: z1 < z3") == ErrorCode::ArityError);
  CHECK(code("exists z2 : roots(t) ; ring: true ; mult: true") == ErrorCode::SyntaxError);
  CHECK(code("exists z1 : roots(z1) ; ring: true ; mult: true") == ErrorCode::SyntaxError);
  CHECK(code("exists z1 : roots(t) ; ring: z1 < 0 ; mult: true") == ErrorCode::SyntaxError);
  CHECK(code("exists z1 : roots(t) ; ring: true ; mult: z1 + 1 = 1") == ErrorCode::SyntaxError);
  CHECK(code("exists z1 : roots(t) ; ring: true ; mult: 2 = z1") == ErrorCode::SyntaxError);
  CHECK(code("exists z1 : roots(t) ; ring: true ; mult: P[0,0](z1)") == ErrorCode::SyntaxError);
  CHECK(code("exists z1 : roots(t) ; ring: true ; mult: true extra") == ErrorCode::SyntaxError);
  CHECK(code("exists z1 : roots(t) ; ring: true ; mult: z1 # 1") == ErrorCode::SyntaxError);
  try {
    parse_sentence("exists z1 : roots() ; ring: true ; mult: true");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("position 18") != std::string::npos);
  }
}

TEST_CASE("ring and multiplicative evaluation") {
  const SpecialSentence s = parse_sentence(kCorpus[0]);
  const Field f = Field::create(7, 1);
  CHECK(eval_ring(s.ring, 2, f, {f.from_int(2), f.from_int(4)}));
  CHECK_FALSE(eval_ring(s.ring, 2, f, {f.from_int(2), f.from_int(2)}));
  const std::vector<CirclePoint> t = {CirclePoint(1, 3, 7), CirclePoint(2, 3, 7)};
  CHECK(eval_mult(s.mult, 2, t));
  CHECK_FALSE(eval_mult(s.mult, 2, {t[0], CirclePoint(1, 2, 7)}));
  const SpecialSentence p = parse_sentence("exists z1 : roots(t-1) ; ring: true ; mult: P[-1,3](z1)");
  // root of winding number 2 = -1 mod 3
  CHECK(eval_mult(p.mult, 1, {CirclePoint(0, 1, 3)}) == pred_P(CirclePoint(0, 1, 3), 3, 2));
  CHECK(term_exponents(parse_sentence(kCorpus[10]).mult.mult.lhs, 3) == IVec{1, -1, 0});
}

TEST_CASE("DNF is equivalent to the formula") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> mults = {
      "z1 < z2 or (z2 < z1 and P[1,3](z1))",
      "not (z1 < z2 or z2 = z1)",
      "not (z1 != z2 and not P[0,3](z1*z2)) or z1^2 < z2",
      "(z1 < z2 or z2 < z1) and (P[0,9](z1) or not P[2,3](z2)) and not z1*z2 = 1",
      "not not (z1 = z2^-1 or false) and true",
  };
  for (const auto& m : mults) {
    const SpecialSentence s = parse_sentence("exists z1 z2 : roots(t^2-1) ; ring: true ; mult: " + m);
    const auto d = mult_dnf(s.mult, 2);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<CirclePoint> t;
      for (int j = 0; j < 2; ++j) {
        const u64 den = std::vector<u64>{1, 2, 4, 8, 26, 80}[rng() % 6];
        t.emplace_back(to_mpz(rng() % den), to_mpz(den), 3);
      }
      bool via_dnf = false;
      for (const auto& c : d) {
        bool all = true;
        for (const auto& l : c) all = all && eval_literal(l, t);
        via_dnf = via_dnf || all;
      }
      CHECK(via_dnf == eval_mult(s.mult, 2, t));
      for (const auto& c : d) {
        for (const auto& l : c) CHECK((l.op == MultAtom::Op::Pred || !l.negated));
      }
    }
  }
  const SpecialSentence big = parse_sentence(
      "exists z1 z2 : roots(t^2-1) ; ring: true ; mult: (z1<z2 or z2<z1) and (z1<z2 or z2<z1) and (z1<z2 or z2<z1)");
  CHECK(mult_dnf(big.mult, 2).size() == 8);
  CHECK_THROWS_AS(mult_dnf(big.mult, 2, 4), Error);
}
