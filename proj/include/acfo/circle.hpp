#pragma once

// The circle group U_(p) as Q/Z points with p-free denominators, and its
// Z_(p) cover.

#include <compare>
#include <string>
#include <vector>

#include "acfo/numtheory.hpp"
#include "json.hpp"

namespace acfo {

/// Reduced fraction num/den in [0, 1). char_p = 0 lifts the denominator
/// restriction.
class CirclePoint {
 public:
  CirclePoint() = default;
  /// Reduces num/den modulo 1. Throws InvalidArgument when den is zero or not
  /// coprime to char_p.
  CirclePoint(const mpz_class& num, const mpz_class& den, u64 char_p);
  static CirclePoint identity(u64 char_p) { return CirclePoint(0, 1, char_p); }
  static CirclePoint from_rational(const mpq_class& q, u64 char_p);

  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }
  u64 char_p() const { return p_; }
  bool is_identity() const { return num_ == 0; }
  /// l(t) as an exact rational in [0, 1).
  mpq_class value() const { return mpq_class(num_, den_); }
  double to_double() const { return value().get_d(); }

  friend bool operator==(const CirclePoint& a, const CirclePoint& b) {
    return a.p_ == b.p_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;
  /// Accepts "num/den" or a bare integer.
  static CirclePoint parse(const std::string& text, u64 char_p);

 private:
  mpz_class num_ = 0;
  mpz_class den_ = 1;
  u64 p_ = 0;
};

std::strong_ordering cp_compare(const CirclePoint& a, const CirclePoint& b);
CirclePoint cp_mul(const CirclePoint& a, const CirclePoint& b);
CirclePoint cp_inv(const CirclePoint& a);
CirclePoint cp_pow(const CirclePoint& a, const mpz_class& e);

/// floor(n * l(c)), the number of descents of c^0, c^1, ..., c^n.
u64 winding_number(const CirclePoint& c, u64 n);

/// Whether c has an n-th root of winding number r: the candidate root is
/// (num + r*den) / (n*den) and must have a p-free denominator.
bool pred_P(const CirclePoint& a, u64 n, u64 r);
/// The unique n-th root of winding number r, when pred_P holds.
CirclePoint nth_root(const CirclePoint& a, u64 n, u64 r);

/// k + l(t) in Z_(p).
struct CoverElement {
  mpz_class k = 0;
  CirclePoint t;

  mpq_class value() const { return k + t.value(); }
  static CoverElement from_rational(const mpq_class& q, u64 char_p);
  friend bool operator==(const CoverElement& a, const CoverElement& b) { return a.k == b.k && a.t == b.t; }
  std::string to_string() const;
  /// Accepts "(k, num/den)".
  static CoverElement parse(const std::string& text, u64 char_p);
};

CoverElement cover_add(const CoverElement& x, const CoverElement& y);
CoverElement cover_neg(const CoverElement& x);
std::strong_ordering cover_compare(const CoverElement& x, const CoverElement& y);
/// n divides x inside Z_(p).
bool cover_divisible(const CoverElement& x, u64 n);
/// Product in the truncation to [0, 1); both arguments need k = 0.
CoverElement truncate_mul(const CoverElement& a, const CoverElement& b);

/// An element strictly between lo < hi that is divisible by n, built directly.
CoverElement density_witness(const CoverElement& lo, const CoverElement& hi, u64 n);

struct TaReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks uniqueness of the residue r with D_q(x - r) for q = p^j <= n_max, and
/// for each consecutive pair of the sorted sample and each n <= n_max a
/// divisible element strictly between them.
TaReport validate_ta_axioms(const std::vector<CoverElement>& sample, u64 n_max);

nlohmann::json to_json(const CirclePoint& c);
nlohmann::json to_json(const CoverElement& c);

}  // namespace acfo
