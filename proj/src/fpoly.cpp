#include "acfo/fpoly.hpp"

#include <algorithm>

#include "acfo/error.hpp"

namespace acfo {

namespace fp {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned degree(const Poly& a) { return a.empty() ? 0 : static_cast<unsigned>(a.size() - 1); }

Poly add(const Poly& a, const Poly& b, u64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const u64 x = i < a.size() ? a[i] : 0;
    const u64 y = i < b.size() ? b[i] : 0;
    r[i] = (x + y) % p;
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, u64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const u64 x = i < a.size() ? a[i] : 0;
    const u64 y = i < b.size() ? b[i] : 0;
    r[i] = x >= y ? x - y : x + (p - y);
  }
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + acfo::mulmod(a[i], b[j], p)) % p;
  }
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 p) {
  if (b.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  Poly q(r.size() - b.size() + 1, 0);
  const u64 inv = invmod(b.back(), p);
  for (std::size_t i = r.size(); i-- >= b.size();) {
    const u64 c = acfo::mulmod(r[i], inv, p);
    if (c == 0) continue;
    const std::size_t shift = i - (b.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const u64 s = acfo::mulmod(c, b[j], p);
      r[shift + j] = r[shift + j] >= s ? r[shift + j] - s : r[shift + j] + (p - s);
    }
  }
  trim(r);
  trim(q);
  return {q, r};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) { return divmod(mul(a, b, p), m, p).second; }

Poly powmod(const Poly& base, u64 e, const Poly& m, u64 p) {
  Poly result{1};
  result = divmod(result, m, p).second;
  Poly b = divmod(base, m, p).second;
  while (e) {
    if (e & 1) result = mulmod(result, b, m, p);
    e >>= 1;
    if (e) b = mulmod(b, b, m, p);
  }
  return result;
}

Poly monic(const Poly& a, u64 p) {
  if (a.empty()) return a;
  const u64 inv = invmod(a.back(), p);
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = acfo::mulmod(a[i], inv, p);
  return r;
}

Poly gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly derivative(const Poly& a, u64 p) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = acfo::mulmod(a[i], i % p, p);
  trim(r);
  return r;
}

namespace {

// x^{p^k} mod f by repeated p-th powering
Poly frob_power(const Poly& xpow, const Poly& f, u64 p) { return powmod(xpow, p, f, p); }

}  // namespace

bool is_irreducible(const Poly& f0, u64 p) {
  Poly f = f0;
  trim(f);
  const unsigned n = degree(f);
  if (f.empty() || n == 0) return false;
  if (n == 1) return true;
  f = monic(f, p);
  const Poly x{0, 1};
  Poly xp = x;
  for (unsigned i = 1; i <= n / 2; ++i) {
    xp = frob_power(xp, f, p);
    const Poly g = gcd(f, sub(xp, x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

namespace {

// p-th root of a polynomial whose derivative vanishes: coefficients only in
// degrees divisible by p, and a^{1/p} = a over F_p.
Poly pth_root(const Poly& f, u64 p) {
  Poly r;
  for (std::size_t i = 0; i < f.size(); i += p) r.push_back(f[i]);
  trim(r);
  return r;
}

}  // namespace

Poly radical(const Poly& f0, u64 p) {
  Poly f = monic(f0, p);
  trim(f);
  if (f.empty()) throw Error(ErrorCode::ZeroPolynomial, "radical of zero");
  if (f.size() == 1) return {1};
  const Poly d = derivative(f, p);
  if (d.empty()) return radical(pth_root(f, p), p);
  const Poly g = gcd(f, d, p);
  Poly part = divmod(f, g, p).first;  // squarefree part of the factors not of p-power multiplicity
  if (g.size() == 1) return monic(part, p);
  // factors of g not already in part
  Poly rest = radical(g, p);
  Poly common = gcd(part, rest, p);
  Poly extra = divmod(rest, common, p).first;
  return monic(mul(part, extra, p), p);
}

std::vector<unsigned> distinct_degree_factor_degrees(const Poly& f0, u64 p) {
  Poly f = monic(f0, p);
  trim(f);
  std::vector<unsigned> out;
  const Poly x{0, 1};
  Poly xp = x;
  for (unsigned i = 1; 2 * i <= degree(f); ++i) {
    xp = frob_power(xp, f, p);
    const Poly g = gcd(f, sub(xp, x, p), p);
    if (g.size() > 1) {
      for (unsigned j = 0; j < degree(g) / i; ++j) out.push_back(i);
      f = divmod(f, g, p).first;
      xp = divmod(xp, f, p).second;
    }
  }
  if (degree(f) > 0) out.push_back(degree(f));
  std::sort(out.begin(), out.end());
  return out;
}

Poly from_integers(const std::vector<mpz_class>& coeffs, u64 p) {
  Poly r;
  const mpz_class pm = to_mpz(p);
  for (const auto& c : coeffs) r.push_back(to_u64(mod_floor(c, pm)));
  trim(r);
  return r;
}

}  // namespace fp

namespace fpoly {

void trim(Poly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Poly lift(const Field& f, const fp::Poly& a) {
  Poly r;
  r.reserve(a.size());
  for (u64 c : a) r.push_back(f.from_int(static_cast<i64>(c % f.p())));
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, a.front().field().zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b0) {
  Poly b = b0;
  trim(b);
  if (b.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  Poly q(r.size() - b.size() + 1, b.front().field().zero());
  const FieldElement inv = b.back().inverse();
  for (std::size_t i = r.size(); i-- >= b.size();) {
    if (r[i].is_zero()) continue;
    const FieldElement c = r[i] * inv;
    const std::size_t shift = i - (b.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
  }
  trim(r);
  trim(q);
  return {q, r};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return divmod(mul(a, b), m).second; }

Poly powmod(const Poly& base, u64 e, const Poly& m) {
  const Field f = m.front().field();
  Poly result = divmod(Poly{f.one()}, m).second;
  Poly b = divmod(base, m).second;
  while (e) {
    if (e & 1) result = mulmod(result, b, m);
    e >>= 1;
    if (e) b = mulmod(b, b, m);
  }
  return result;
}

namespace {

Poly make_monic(Poly a) {
  trim(a);
  if (a.empty()) return a;
  const FieldElement inv = a.back().inverse();
  for (auto& c : a) c *= inv;
  return a;
}

}  // namespace

Poly gcd(const Field&, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a));
}

FieldElement eval(const Field& f, const Poly& a, const FieldElement& x) {
  FieldElement acc = f.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

namespace {

void check_args(const Field& f, const Poly& a, unsigned s) {
  if (s == 0 || f.degree() % s != 0) {
    throw Error(ErrorCode::NotADivisor, std::to_string(s) + " does not divide " + std::to_string(f.degree()));
  }
  Poly t = a;
  trim(t);
  if (t.empty()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  for (const auto& c : t) {
    if (!(c.field() == f)) throw Error(ErrorCode::ContextMismatch, "coefficient from another field");
  }
}

constexpr u64 kScanLimit = 4096;

// Split a monic squarefree g whose roots all lie in F_{p^s} into its linear
// factors, deterministically.
void split(const Field& f, const Poly& g, unsigned s, const std::vector<FieldElement>& deltas,
           std::vector<FieldElement>& out) {
  const std::size_t deg = g.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    out.push_back(-g[0]);
    return;
  }
  const u64 p = f.p();
  const u64 q = *checked_pow(p, s);
  for (const auto& delta : deltas) {
    Poly h;
    const Poly xd{delta, f.one()};
    if (p == 2) {
      // trace map T(y) = y + y^2 + ... + y^{2^{s-1}} applied to delta*x
      const Poly dx{f.zero(), delta};
      Poly term = divmod(dx, g).second;
      Poly acc = term;
      for (unsigned i = 1; i < s; ++i) {
        term = mulmod(term, term, g);
        acc.resize(std::max(acc.size(), term.size()), f.zero());
        for (std::size_t j = 0; j < term.size(); ++j) acc[j] += term[j];
        trim(acc);
      }
      h = acc;
    } else {
      h = powmod(xd, (q - 1) / 2, g);
      if (h.empty()) h.push_back(f.zero());
      h[0] -= f.one();
      trim(h);
    }
    Poly d = gcd(f, g, h);
    const std::size_t dd = d.empty() ? 0 : d.size() - 1;
    if (dd == 0 || dd == deg) continue;
    split(f, d, s, deltas, out);
    split(f, make_monic(divmod(g, d).first), s, deltas, out);
    return;
  }
  // fallback; not expected for squarefree inputs splitting over F_{p^s}
  for (const auto& e : f.subfield_elements(s)) {
    if (eval(f, g, e).is_zero()) out.push_back(e);
  }
}

}  // namespace

std::vector<FieldElement> roots_by_scan(const Field& f, const Poly& a, unsigned s) {
  check_args(f, a, s);
  std::vector<FieldElement> out;
  for (const auto& e : f.subfield_elements(s)) {
    if (eval(f, a, e).is_zero()) out.push_back(e);
  }
  return out;
}

std::vector<FieldElement> roots_by_splitting(const Field& f, const Poly& a0, unsigned s) {
  check_args(f, a0, s);
  Poly a = make_monic(a0);
  std::vector<FieldElement> out;
  if (a.size() == 1) return out;
  const u64 q = *checked_pow(f.p(), s);
  // x^q - x restricted to a
  Poly xq = powmod(Poly{f.zero(), f.one()}, q, a);
  xq.resize(std::max<std::size_t>(xq.size(), 2), f.zero());
  xq[1] -= f.one();
  trim(xq);
  Poly g = gcd(f, a, xq);
  if (g.size() <= 1) return out;
  // deterministic candidate shifts: level generator powers, then prime-field elements
  std::vector<FieldElement> deltas;
  deltas.push_back(f.zero());
  deltas.push_back(f.one());
  FieldElement gen = f.level_generator(s);
  FieldElement cur = gen;
  for (int i = 0; i < 256; ++i) {
    deltas.push_back(cur);
    cur *= gen;
  }
  split(f, g, s, deltas, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FieldElement> roots_in_subfield(const Field& f, const Poly& a, unsigned s) {
  check_args(f, a, s);
  const auto q = checked_pow(f.p(), s);
  if (q && *q <= kScanLimit) return roots_by_scan(f, a, s);
  return roots_by_splitting(f, a, s);
}

}  // namespace fpoly

}  // namespace acfo
