#include "acfo/circle.hpp"

#include <algorithm>
#include <regex>

#include "acfo/error.hpp"

namespace acfo {

namespace {

void check_char(u64 a, u64 b) {
  if (a != b) throw Error(ErrorCode::CharMismatch, "characteristics " + std::to_string(a) + " and " + std::to_string(b));
}

bool p_free(const mpz_class& den, u64 p) { return p == 0 || mpz_divisible_ui_p(den.get_mpz_t(), p) == 0; }

}  // namespace

CirclePoint::CirclePoint(const mpz_class& num, const mpz_class& den, u64 char_p) : p_(char_p) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  mpz_class n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  n = mod_floor(n, d);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  num_ = n / g;
  den_ = d / g;
  if (!p_free(den_, p_)) {
    throw Error(ErrorCode::InvalidArgument,
                "denominator " + den_.get_str() + " is not coprime to " + std::to_string(p_));
  }
}

CirclePoint CirclePoint::from_rational(const mpq_class& q, u64 char_p) {
  return CirclePoint(q.get_num(), q.get_den(), char_p);
}

std::string CirclePoint::to_string() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

CirclePoint CirclePoint::parse(const std::string& text, u64 char_p) {
  static const std::regex re(R"(\s*(-?\d+)\s*(?:/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw Error(ErrorCode::SyntaxError, "bad circle point '" + text + "'");
  return CirclePoint(mpz_class(m[1].str()), m[2].matched ? mpz_class(m[2].str()) : mpz_class(1), char_p);
}

std::strong_ordering cp_compare(const CirclePoint& a, const CirclePoint& b) {
  check_char(a.char_p(), b.char_p());
  const int c = cmp(a.value(), b.value());
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

CirclePoint cp_mul(const CirclePoint& a, const CirclePoint& b) {
  check_char(a.char_p(), b.char_p());
  return CirclePoint::from_rational(a.value() + b.value(), a.char_p());
}

CirclePoint cp_inv(const CirclePoint& a) { return CirclePoint(-a.num(), a.den(), a.char_p()); }

CirclePoint cp_pow(const CirclePoint& a, const mpz_class& e) {
  return CirclePoint(a.num() * e, a.den(), a.char_p());
}

u64 winding_number(const CirclePoint& c, u64 n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "winding number needs n >= 1");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), mpz_class(c.num() * to_mpz(n)).get_mpz_t(), c.den().get_mpz_t());
  return to_u64(q);
}

bool pred_P(const CirclePoint& a, u64 n, u64 r) {
  if (n == 0 || r >= n) throw Error(ErrorCode::InvalidArgument, "pred_P needs 0 <= r < n");
  if (a.char_p() == 0) return true;
  const mpq_class root(a.num() + to_mpz(r) * a.den(), to_mpz(n) * a.den());
  mpq_class c = root;
  c.canonicalize();
  return p_free(c.get_den(), a.char_p());
}

CirclePoint nth_root(const CirclePoint& a, u64 n, u64 r) {
  if (!pred_P(a, n, r)) throw Error(ErrorCode::InvalidArgument, "no root of this winding number");
  return CirclePoint(a.num() + to_mpz(r) * a.den(), to_mpz(n) * a.den(), a.char_p());
}

// ---------------------------------------------------------------- cover

CoverElement CoverElement::from_rational(const mpq_class& q, u64 char_p) {
  CoverElement x;
  x.k = floor_div(q.get_num(), q.get_den());
  x.t = CirclePoint::from_rational(q - x.k, char_p);
  return x;
}

std::string CoverElement::to_string() const { return "(" + k.get_str() + ", " + t.to_string() + ")"; }

CoverElement CoverElement::parse(const std::string& text, u64 char_p) {
  static const std::regex re(R"(\s*\(\s*(-?\d+)\s*,\s*([-\d/\s]+)\)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw Error(ErrorCode::SyntaxError, "bad cover element '" + text + "'");
  CoverElement x;
  x.k = mpz_class(m[1].str());
  x.t = CirclePoint::parse(m[2].str(), char_p);
  return x;
}

CoverElement cover_add(const CoverElement& x, const CoverElement& y) {
  CoverElement r;
  r.t = cp_mul(x.t, y.t);
  r.k = x.k + y.k;
  if (cp_compare(x.t, r.t) > 0) r.k += 1;
  return r;
}

CoverElement cover_neg(const CoverElement& x) {
  return CoverElement::from_rational(-x.value(), x.t.char_p());
}

std::strong_ordering cover_compare(const CoverElement& x, const CoverElement& y) {
  check_char(x.t.char_p(), y.t.char_p());
  if (x.k != y.k) return x.k < y.k ? std::strong_ordering::less : std::strong_ordering::greater;
  return cp_compare(x.t, y.t);
}

bool cover_divisible(const CoverElement& x, u64 n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "divisibility by zero");
  const u64 r = to_u64(mod_floor(x.k, to_mpz(n)));
  return pred_P(x.t, n, r);
}

CoverElement truncate_mul(const CoverElement& a, const CoverElement& b) {
  if (a.k != 0 || b.k != 0) throw Error(ErrorCode::NotInTruncationWindow, "truncation product needs k = 0");
  CoverElement s = cover_add(a, b);
  s.k = 0;
  return s;
}

CoverElement density_witness(const CoverElement& lo, const CoverElement& hi, u64 n) {
  const u64 p = lo.t.char_p();
  check_char(p, hi.t.char_p());
  const mpq_class a = lo.value(), b = hi.value();
  if (a >= b) throw Error(ErrorCode::InvalidArgument, "density witness needs lo < hi");
  // 1/D < (b - a) / (2n) keeps n*gamma inside the interval
  const mpq_class bound = mpq_class(2 * to_mpz(n)) / (b - a);
  mpz_class D = floor_div(bound.get_num(), bound.get_den()) + 1;
  while (p != 0 && mpz_divisible_ui_p(D.get_mpz_t(), p)) ++D;
  const mpq_class scaled = a * D / to_mpz(n);
  const mpq_class gamma(floor_div(scaled.get_num(), scaled.get_den()) + 1, D);
  return CoverElement::from_rational(gamma * to_mpz(n), p);
}

TaReport validate_ta_axioms(const std::vector<CoverElement>& sample, u64 n_max) {
  TaReport rep;
  if (sample.empty()) return rep;
  const u64 p = sample.front().t.char_p();
  const CoverElement minus_one{-1, CirclePoint::identity(p)};
  for (const auto& x : sample) {
    if (p < 2) break;
    for (u64 q = p; q <= n_max; q *= p) {
      u64 hits = 0;
      CoverElement y = x;
      for (u64 r = 0; r < q; ++r) {
        if (cover_divisible(y, q)) ++hits;
        y = cover_add(y, minus_one);
      }
      ++rep.checks;
      if (hits != 1) {
        rep.failures.push_back("residue uniqueness fails for " + x.to_string() + " and q = " + std::to_string(q) +
                               ": " + std::to_string(hits) + " residues");
      }
      if (q > n_max / p) break;
    }
  }
  std::vector<CoverElement> sorted = sample;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return cover_compare(a, b) < 0; });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    for (u64 n = 1; n <= n_max; ++n) {
      const CoverElement w = density_witness(sorted[i], sorted[i + 1], n);
      ++rep.checks;
      if (!(cover_compare(sorted[i], w) < 0 && cover_compare(w, sorted[i + 1]) < 0 && cover_divisible(w, n))) {
        rep.failures.push_back("density fails between " + sorted[i].to_string() + " and " +
                               sorted[i + 1].to_string() + " for n = " + std::to_string(n));
      }
    }
  }
  return rep;
}

nlohmann::json to_json(const CirclePoint& c) {
  return {{"num", c.num().get_str()}, {"den", c.den().get_str()}, {"text", c.to_string()}};
}

nlohmann::json to_json(const CoverElement& c) {
  return {{"k", c.k.get_str()}, {"t", to_json(c.t)}, {"text", c.to_string()}};
}

}  // namespace acfo
