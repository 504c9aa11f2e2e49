#include <random>

#include "acfo/circle.hpp"
#include "acfo/error.hpp"
#include "doctest.h"

using namespace acfo;

namespace {

CirclePoint cp(long n, long d, u64 p) { return CirclePoint(n, d, p); }
CoverElement cv(long k, long n, long d, u64 p) { return CoverElement{k, cp(n, d, p)}; }

// winding number straight from its definition: descents of k -> frac(k t)
u64 descents(const CirclePoint& c, u64 n) {
  u64 count = 0;
  for (u64 k = 0; k < n; ++k) {
    if (cp_compare(cp_pow(c, k + 1), cp_pow(c, k)) < 0) ++count;
  }
  return count;
}

// all points with p-free denominator at most dmax
std::vector<CirclePoint> small_points(u64 p, long dmax) {
  std::vector<CirclePoint> out;
  for (long d = 1; d <= dmax; ++d) {
    if (p != 0 && d % static_cast<long>(p) == 0) continue;
    for (long n = 0; n < d; ++n) {
      if (std::gcd(n, d) == 1) out.push_back(cp(n, d, p));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("circle point normalisation and errors") {
  CHECK(cp(6, 8, 5) == cp(3, 4, 5));
  CHECK(cp(5, 4, 5) == cp(1, 4, 5));
  CHECK(cp(-1, 4, 5) == cp(3, 4, 5));
  CHECK_THROWS_AS(cp(1, 5, 5), Error);
  CHECK_NOTHROW(cp(1, 5, 0));
  CHECK(CirclePoint::parse("2/3", 5) == cp(2, 3, 5));
  CHECK(CirclePoint::parse("0", 5).is_identity());
  CHECK(cp(2, 3, 5).to_string() == "2/3");
  CHECK_THROWS_AS(CirclePoint::parse("2/x", 5), Error);
}

TEST_CASE("order and group operations") {
  CHECK(cp_compare(cp(0, 1, 5), cp(1, 4, 5)) < 0);
  CHECK(cp_compare(cp(1, 2, 5), cp(1, 4, 5)) > 0);
  CHECK(cp_compare(cp(2, 3, 5), cp(2, 3, 5)) == 0);
  CHECK_THROWS_AS(cp_compare(cp(0, 1, 5), cp(0, 1, 3)), Error);
  try {
    cp_mul(cp(0, 1, 5), cp(0, 1, 3));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CharMismatch);
  }
  CHECK(cp_mul(cp(3, 4, 5), cp(1, 2, 5)) == cp(1, 4, 5));
  CHECK(cp_inv(cp(0, 1, 5)) == cp(0, 1, 5));
  CHECK(cp_pow(cp(1, 3, 5), 5) == cp(2, 3, 5));
  CHECK(cp_pow(cp(1, 3, 5), -1) == cp(2, 3, 5));
}

TEST_CASE("winding number examples") {
  CHECK(winding_number(cp(3, 4, 5), 4) == 3);
  CHECK(descents(cp(3, 4, 5), 4) == 3);
  CHECK(winding_number(cp(0, 1, 5), 9) == 0);
  CHECK(winding_number(cp(1, 3, 5), 6) == 2);
  CHECK(descents(cp(1, 3, 5), 6) == 2);
}

TEST_CASE("winding number formula matches descent count exhaustively") {
  for (const auto& c : small_points(0, 64)) {
    for (u64 n = 1; n <= 16; ++n) REQUIRE(winding_number(c, n) == descents(c, n));
  }
}

TEST_CASE("pred_P examples") {
  CHECK(pred_P(cp(2, 3, 5), 5, 1));
  CHECK_FALSE(pred_P(cp(2, 3, 5), 5, 0));
  for (u64 r = 0; r < 3; ++r) CHECK(pred_P(cp(2, 3, 5), 3, r));
  CHECK(nth_root(cp(2, 3, 5), 5, 1) == cp(1, 3, 5));
  CHECK_THROWS_AS(pred_P(cp(2, 3, 5), 5, 5), Error);
}

TEST_CASE("exactly one residue for prime-power n") {
  for (u64 p : {2, 3, 5}) {
    for (const auto& a : small_points(p, 100)) {
      for (u64 n = p; n <= p * p * p; n *= p) {
        int hits = 0;
        for (u64 r = 0; r < n; ++r) hits += pred_P(a, n, r);
        REQUIRE(hits == 1);
        // the root found has the requested winding number
        for (u64 r = 0; r < n; ++r) {
          if (pred_P(a, n, r)) {
            CirclePoint c = nth_root(a, n, r);
            CHECK(cp_pow(c, n) == a);
            CHECK(winding_number(c, n) == r);
          }
        }
      }
      for (u64 n : {7ul, 11ul}) {
        if (n % p == 0) continue;
        for (u64 r = 0; r < n; ++r) REQUIRE(pred_P(a, n, r));
      }
    }
  }
}

TEST_CASE("cover examples") {
  CHECK(cover_add(cv(0, 3, 4, 5), cv(0, 1, 2, 5)) == cv(1, 1, 4, 5));
  CHECK(cover_add(cv(0, 0, 1, 5), cv(7, 2, 3, 5)) == cv(7, 2, 3, 5));
  CHECK(cover_add(cv(-1, 3, 4, 5), cv(1, 1, 4, 5)) == cv(1, 0, 1, 5));
  CHECK(cover_compare(cv(0, 3, 4, 5), cv(1, 0, 1, 5)) < 0);
  CHECK(cover_compare(cv(2, 1, 3, 5), cv(2, 1, 3, 5)) == 0);
  CHECK(cover_compare(cv(-1, 7, 8, 5), cv(0, 0, 1, 5)) < 0);
  CHECK(cover_divisible(cv(6, 2, 3, 5), 5));
  CHECK(cover_divisible(cv(0, 0, 1, 5), 17));
  CHECK(cover_divisible(cv(4, 1, 7, 5), 3));
  CHECK(truncate_mul(cv(0, 3, 4, 5), cv(0, 1, 2, 5)) == cv(0, 1, 4, 5));
  CHECK(truncate_mul(cv(0, 0, 1, 5), cv(0, 2, 7, 5)) == cv(0, 2, 7, 5));
  CHECK(truncate_mul(cv(0, 1, 3, 5), cv(0, 1, 3, 5)) == cv(0, 2, 3, 5));
  CHECK_THROWS_AS(truncate_mul(cv(1, 1, 3, 5), cv(0, 1, 3, 5)), Error);
  CHECK(CoverElement::parse("(-1, 3/4)", 5) == cv(-1, 3, 4, 5));
  CHECK(cv(-1, 3, 4, 5).to_string() == "(-1, 3/4)");
}

TEST_CASE("cover addition is rational addition") {
  std::vector<CoverElement> xs;
  for (long k = -2; k <= 2; ++k) {
    for (const auto& t : small_points(3, 8)) xs.push_back({k, t});
  }
  const CoverElement zero{0, CirclePoint::identity(3)};
  for (const auto& x : xs) {
    CHECK(cover_add(x, zero) == x);
    CHECK(cover_add(x, cover_neg(x)) == zero);
    for (const auto& y : xs) {
      const CoverElement s = cover_add(x, y);
      REQUIRE(s.value() == x.value() + y.value());
      REQUIRE(s == cover_add(y, x));
      REQUIRE((cover_compare(x, y) < 0) == (x.value() < y.value()));
    }
  }
  // associativity on a smaller slice
  for (std::size_t i = 0; i < xs.size(); i += 5)
    for (std::size_t j = 0; j < xs.size(); j += 7)
      for (std::size_t l = 0; l < xs.size(); l += 11)
        REQUIRE(cover_add(cover_add(xs[i], xs[j]), xs[l]) == cover_add(xs[i], cover_add(xs[j], xs[l])));
}

TEST_CASE("truncation of the cover recovers the circle") {
  for (const auto& a : small_points(5, 12)) {
    for (const auto& b : small_points(5, 12)) {
      CoverElement m = truncate_mul({0, a}, {0, b});
      REQUIRE(m.k == 0);
      REQUIRE(m.t == cp_mul(a, b));
    }
  }
}

TEST_CASE("pred_P agrees with cover divisibility") {
  for (u64 p : {3, 5}) {
    for (const auto& a : small_points(p, 20)) {
      for (u64 n = 1; n <= 30; ++n) {
        for (u64 r = 0; r < n; ++r) REQUIRE(pred_P(a, n, r) == cover_divisible({r, a}, n));
      }
    }
  }
}

TEST_CASE("T_a axioms on random samples") {
  std::mt19937_64 rng(7);
  std::vector<CoverElement> sample;
  for (int i = 0; i < 50; ++i) {
    long d = 1 + static_cast<long>(rng() % 200);
    while (d % 3 == 0) ++d;
    sample.push_back({static_cast<long>(rng() % 11) - 5, cp(static_cast<long>(rng() % d), d, 3)});
  }
  TaReport rep = validate_ta_axioms(sample, 27);
  CHECK(rep.ok());
  CHECK(rep.checks > 50);

  TaReport zero = validate_ta_axioms({cv(0, 0, 1, 3)}, 3);
  CHECK(zero.ok());
  CHECK(zero.checks == 1);

  std::vector<CoverElement> s5;
  for (long d : {1, 2, 3, 4, 6, 7}) s5.push_back(cv(0, d - 1, d, 5));
  TaReport r5 = validate_ta_axioms(s5, 25);
  CHECK(r5.ok());
}

TEST_CASE("density witness lies strictly between and is divisible") {
  for (u64 p : {2, 3, 7}) {
    auto pts = small_points(p, 15);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 3) {
      CoverElement lo{0, pts[i]}, hi{0, pts[i + 1]};
      if (cover_compare(lo, hi) > 0) std::swap(lo, hi);
      if (lo == hi) continue;
      for (u64 n : {1ul, p, p * p, 6ul, 10ul}) {
        CoverElement w = density_witness(lo, hi, n);
        REQUIRE(cover_compare(lo, w) < 0);
        REQUIRE(cover_compare(w, hi) < 0);
        REQUIRE(cover_divisible(w, n));
      }
    }
  }
}
