#include "acfo/depattern.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <mutex>
#include <sstream>

#include "acfo/error.hpp"
#include "acfo/fpoly.hpp"
#include "acfo/lattice.hpp"
#include "acfo/polynomial.hpp"

namespace acfo {

// ---------------------------------------------------------------- patterns

bool Relation::operator<(const Relation& o) const {
  if (left != o.left) return left < o.left;
  return right < o.right;
}

bool DependencePattern::operator<(const DependencePattern& o) const {
  if (k != o.k) return k < o.k;
  return relations < o.relations;
}

namespace {

std::string side(const std::vector<mpz_class>& e) {
  std::string out;
  for (std::size_t j = e.size(); j-- > 0;) {
    if (e[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += "z" + std::to_string(j + 1) + "^" + e[j].get_str();
  }
  return out.empty() ? "1" : out;
}

}  // namespace

std::string DependencePattern::to_string() const {
  if (relations.empty()) return "true";
  std::string out;
  for (auto it = relations.rbegin(); it != relations.rend(); ++it) {
    if (!out.empty()) out += " & ";
    out += side(it->second.left) + " = " + side(it->second.right);
  }
  return out;
}

nlohmann::json to_json(const DependencePattern& d) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& [i, r] : d.relations) {
    nlohmann::json l = nlohmann::json::array(), rr = nlohmann::json::array();
    for (const auto& x : r.left) l.push_back(x.get_str());
    for (const auto& x : r.right) rr.push_back(x.get_str());
    rels.push_back({{"i", i}, {"left", l}, {"right", rr}});
  }
  return {{"k", d.k}, {"relations", rels}, {"text", d.to_string()}, {"bounded_search", d.bounded_search}};
}

// ---------------------------------------------------------------- core

namespace {

// Least e >= 0 with e*a = T (mod h), if any.
std::optional<mpz_class> solve_linear(const mpz_class& a, const mpz_class& T, const mpz_class& h) {
  mpz_class gg = gcd(a, h);
  if (gg == 0) return T == 0 ? std::optional<mpz_class>(0) : std::nullopt;
  const mpz_class t = mod_floor(T, h);
  if (t % gg != 0) return std::nullopt;
  const mpz_class hh = h / gg;
  if (hh == 1) return mpz_class(0);
  mpz_class inv;
  const mpz_class ar = mod_floor(a / gg, hh);
  mpz_invert(inv.get_mpz_t(), ar.get_mpz_t(), hh.get_mpz_t());
  return mod_floor((t / gg) * inv, hh);
}

// Elements are (e_j, a_j / D): a free part e_j in Z^P and a torsion angle.
// Relations sum l_j (e_j, a_j) = 0 in Z^P x Z/D.
DependencePattern pattern_core(const std::vector<IVec>& e, const std::vector<mpz_class>& a, const mpz_class& D) {
  const std::size_t k = a.size();
  const std::size_t np = e.empty() ? 0 : e[0].size();
  auto is_free = [&](std::size_t j) {
    return std::any_of(e[j].begin(), e[j].end(), [](const mpz_class& x) { return x != 0; });
  };
  DependencePattern out;
  out.k = static_cast<unsigned>(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> F, T;
    for (std::size_t j = 0; j < i; ++j) (np > 0 && is_free(j) ? F : T).push_back(j);
    // prefix gcds over the torsion coordinates: hpre[t] = gcd(D, a_T[0..t))
    std::vector<mpz_class> hpre(T.size() + 1, D);
    for (std::size_t t = 0; t < T.size(); ++t) hpre[t + 1] = gcd(hpre[t], a[T[t]]);
    const mpz_class h = hpre[T.size()];

    mpz_class g;
    IVec v0;   // free coordinates of a relation with l_i = g
    IMat K;    // free relations with l_i = 0
    if (F.empty() && (np == 0 || !is_free(i))) {
      g = h / gcd(h, a[i]);
    } else {
      // rows: c_i, then F, then the slack (0 | h); kernel of x * M = 0
      IMat M;
      auto row = [&](std::size_t j) {
        IVec r = e[j];
        r.push_back(a[j]);
        return r;
      };
      M.push_back(row(i));
      for (std::size_t j : F) M.push_back(row(j));
      IVec slack(np + 1, 0);
      slack[np] = h;
      M.push_back(slack);
      const IMat ker = kernel_basis(transpose(M), M.size());
      IMat proj;
      for (const auto& v : ker) proj.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(1 + F.size()));
      const IMat H = hnf(proj, 1 + F.size());
      if (H.empty() || H[0][0] == 0) continue;
      g = H[0][0];
      v0.assign(H[0].begin() + 1, H[0].end());
      for (std::size_t r = 1; r < H.size(); ++r) K.emplace_back(H[r].begin() + 1, H[r].end());
    }
    if (g == 0) continue;

    // Search box over the free relation lattice; exact when K is empty.
    const std::size_t rank = K.size();
    long C = 0;
    if (rank > 0) {
      C = static_cast<long>((std::pow(2e5, 1.0 / static_cast<double>(rank)) - 1) / 2);
      C = std::clamp(C, 2L, 32L);
      out.bounded_search = true;
    }
    std::vector<long> coef(rank, -C);
    std::optional<std::vector<mpz_class>> best_key;
    std::vector<mpz_class> best_l;
    for (;;) {
      IVec f = v0;
      for (std::size_t b = 0; b < rank; ++b) {
        for (std::size_t c = 0; c < f.size(); ++c) f[c] += coef[b] * K[b][c];
      }
      std::vector<mpz_class> l(i + 1, 0);
      l[i] = g;
      mpz_class target = g * a[i];
      for (std::size_t c = 0; c < F.size(); ++c) {
        l[F[c]] = f[c];
        target += f[c] * a[F[c]];
      }
      bool ok = true;
      for (std::size_t t = T.size(); t-- > 0 && ok;) {
        const auto m = solve_linear(a[T[t]], target, hpre[t]);
        if (!m) {
          ok = false;
          break;
        }
        l[T[t]] = -*m;
        target -= *m * a[T[t]];
      }
      ok = ok && mod_floor(target, D) == 0;
      if (ok) {
        std::vector<mpz_class> key;
        key.reserve(2 * i);
        for (std::size_t j = i; j-- > 0;) key.push_back(l[j] > 0 ? l[j] : mpz_class(0));
        for (std::size_t j = i; j-- > 0;) key.push_back(l[j] < 0 ? mpz_class(-l[j]) : mpz_class(0));
        if (!best_key || key < *best_key) {
          best_key = std::move(key);
          best_l = l;
        }
      }
      std::size_t b = 0;
      while (b < rank && ++coef[b] > C) coef[b++] = -C;
      if (b == rank) break;
    }
    if (!best_key) continue;  // unreachable for a consistent lattice
    Relation rel;
    rel.left.assign(i + 1, 0);
    rel.right.assign(i + 1, 0);
    for (std::size_t j = 0; j <= i; ++j) {
      if (best_l[j] > 0) rel.left[j] = best_l[j];
      if (best_l[j] < 0) rel.right[j] = -best_l[j];
    }
    out.relations.emplace(static_cast<unsigned>(i + 1), std::move(rel));
  }
  return out;
}

}  // namespace

DependencePattern dependence_pattern(const CharacterContext& ctx, const std::vector<FieldElement>& c) {
  std::vector<mpz_class> a;
  for (const auto& x : c) {
    if (x.is_zero()) throw Error(ErrorCode::ZeroArgument, "dependence patterns need nonzero entries");
    a.push_back(to_mpz(dlog(x)));
  }
  (void)ctx;
  return pattern_core(std::vector<IVec>(c.size()), a, to_mpz(c.empty() ? 1 : c[0].field().order()));
}

// ---------------------------------------------------------------- char 0

Char0Element Char0Element::from_rational(const mpq_class& r) {
  if (r == 0) throw Error(ErrorCode::UnsupportedRepresentation, "zero has no multiplicative representation");
  Char0Element out;
  out.sign = r < 0 ? -1 : 1;
  auto add = [&](const mpz_class& n, int s) {
    if (!n.fits_ulong_p()) throw Error(ErrorCode::UnsupportedRepresentation, "rational too large to factor");
    for (auto [q, m] : factorize(n.get_ui())) out.prime_exps[to_mpz(q)] += s * static_cast<long>(m);
  };
  add(abs(r.get_num()), 1);
  add(r.get_den(), -1);
  return out;
}

Char0Element Char0Element::root_of_unity(u64 j, u64 n) {
  Char0Element out;
  out.root = CirclePoint(to_mpz(j), to_mpz(n), 0);
  return out;
}

CirclePoint Char0Element::torsion() const {
  return CirclePoint::from_rational(root.value() + (sign < 0 ? mpq_class(1, 2) : mpq_class(0)), 0);
}

bool Char0Element::operator==(const Char0Element& o) const {
  return prime_exps == o.prime_exps && torsion() == o.torsion();
}

std::string Char0Element::to_string() const {
  mpq_class v = sign;
  for (const auto& [q, e] : prime_exps) {
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), q.get_mpz_t(), mpz_class(abs(e)).get_ui());
    v *= e > 0 ? mpq_class(pw) : mpq_class(1, pw);
  }
  if (root.is_identity()) return v.get_str();
  const std::string z = "zeta(" + root.to_string() + ")";
  return v == 1 ? z : v.get_str() + "*" + z;
}

DependencePattern dependence_pattern(const std::vector<Char0Element>& c) {
  std::set<mpz_class> primes;
  mpz_class D = 1;
  for (const auto& x : c) {
    for (const auto& [q, ex] : x.prime_exps) {
      if (ex != 0) primes.insert(q);
    }
    D = lcm(D, x.torsion().den());
  }
  std::vector<IVec> e;
  std::vector<mpz_class> a;
  for (const auto& x : c) {
    IVec v;
    for (const auto& q : primes) {
      auto it = x.prime_exps.find(q);
      v.push_back(it == x.prime_exps.end() ? mpz_class(0) : it->second);
    }
    e.push_back(std::move(v));
    const CirclePoint t = x.torsion();
    a.push_back(t.num() * (D / t.den()));
  }
  return pattern_core(e, a, D);
}

// ---------------------------------------------------------------- roots

namespace {

using QPoly = std::vector<mpq_class>;  // ascending

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a = q * b + r over Q; returns (q, r).
std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  QPoly q(a.size() - b.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    const mpq_class c = a[i + b.size() - 1] / b.back();
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  trim(a);
  return {q, a};
}

mpq_class qeval(const QPoly& a, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

QPoly cyclotomic_impl(u64 n) {
  static std::map<u64, QPoly> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  QPoly f(n + 1, 0);
  f[0] = -1;
  f[n] = 1;
  for (u64 d : divisors(n)) {
    if (d == n) continue;
    auto jt = memo.find(d);
    QPoly phi_d;
    if (jt == memo.end()) {
      // compute without holding a reference across insertions
      QPoly g(d + 1, 0);
      g[0] = -1;
      g[d] = 1;
      for (u64 e : divisors(d)) {
        if (e != d) g = qdivmod(g, memo.at(e)).first;
      }
      memo[d] = g;
      phi_d = g;
    } else {
      phi_d = jt->second;
    }
    f = qdivmod(f, phi_d).first;
  }
  return memo[n] = f;
}

std::vector<mpz_class> trimmed(std::vector<mpz_class> P) {
  while (!P.empty() && P.back() == 0) P.pop_back();
  if (P.empty()) throw Error(ErrorCode::ZeroPolynomial, "P must be nonzero");
  return P;
}

}  // namespace

std::vector<mpq_class> cyclotomic_polynomial(u64 n) { return cyclotomic_impl(n); }

RootSystem root_system_char0(const std::vector<mpz_class>& P0) {
  RootSystem rs;
  rs.p = 0;
  rs.P = trimmed(P0);
  std::size_t low = 0;
  while (rs.P[low] == 0) ++low;
  QPoly q;
  for (std::size_t i = low; i < rs.P.size(); ++i) q.push_back(rs.P[i]);
  // rational roots u/v with u | a0 and v | lead
  std::vector<mpq_class> rational;
  const mpz_class a0 = abs(rs.P[low]), an = abs(rs.P.back());
  if (!a0.fits_ulong_p() || !an.fits_ulong_p()) {
    throw Error(ErrorCode::UnsupportedRepresentation, "coefficients too large for the rational root search");
  }
  const auto us = divisors(a0.get_ui()), vs = divisors(an.get_ui());
  std::set<mpq_class> cands;
  for (u64 u : us) {
    for (u64 v : vs) {
      mpq_class r(to_mpz(u), to_mpz(v));
      r.canonicalize();
      cands.insert(r);
      cands.insert(-r);
    }
  }
  for (const auto& r : cands) {
    if (q.size() <= 1) break;
    if (qeval(q, r) != 0) continue;
    rational.push_back(r);
    const QPoly lin = {-r, 1};
    for (;;) {
      auto [qq, rem] = qdivmod(q, lin);
      if (!rem.empty()) break;
      q = qq;
    }
  }
  // remaining factors must be cyclotomic Phi_n with n >= 3
  std::vector<std::pair<u64, u64>> unity;  // (j, n)
  const std::size_t deg0 = q.size() - 1;
  for (u64 n = 3; q.size() > 1 && n <= 2 * deg0 * deg0 + 6; ++n) {
    if (euler_phi(n) > q.size() - 1) continue;
    const QPoly phi = cyclotomic_polynomial(n);
    bool hit = false;
    for (;;) {
      auto [qq, rem] = qdivmod(q, phi);
      if (!rem.empty()) break;
      q = qq;
      hit = true;
    }
    if (hit) {
      for (u64 j = 1; j < n; ++j) {
        if (gcd_u64(j, n) == 1) unity.emplace_back(j, n);
      }
    }
  }
  if (q.size() > 1) {
    throw Error(ErrorCode::UnsupportedNumberField,
                "P has an irreducible factor over Q that is neither linear nor cyclotomic");
  }
  std::sort(rational.begin(), rational.end());
  for (const auto& r : rational) rs.roots0.push_back(Char0Element::from_rational(r));
  std::sort(unity.begin(), unity.end(), [](const auto& x, const auto& y) {
    return mpq_class(to_mpz(x.first), to_mpz(x.second)) < mpq_class(to_mpz(y.first), to_mpz(y.second));
  });
  for (auto [j, n] : unity) rs.roots0.push_back(Char0Element::root_of_unity(j, n));
  rs.splitting_degree = 0;
  return rs;
}

RootSystem root_system_charp(const std::vector<mpz_class>& P0, u64 p, const FieldLimits& limits) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  RootSystem rs;
  rs.p = p;
  rs.P = trimmed(P0);
  fp::Poly f = fp::from_integers(rs.P, p);
  if (f.empty()) throw Error(ErrorCode::ZeroPolynomial, "P vanishes modulo " + std::to_string(p));
  std::size_t low = 0;
  while (f[low] == 0) ++low;
  f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(low));
  if (f.size() <= 1) {
    rs.splitting_degree = 1;
    rs.ctx.emplace(Field::create(p, 1, limits));
    return rs;
  }
  const fp::Poly rad = fp::radical(f, p);
  u64 s = 1;
  for (unsigned d : fp::distinct_degree_factor_degrees(rad, p)) s = lcm_u64(s, d);
  if (s > 64) throw Error(ErrorCode::SizeCapExceeded, "splitting degree " + std::to_string(s) + " is above 64");
  rs.splitting_degree = static_cast<unsigned>(s);
  const Field F = Field::create(p, rs.splitting_degree, limits);
  rs.ctx.emplace(F);
  rs.roots = fpoly::roots_in_subfield(F, fpoly::lift(F, rad), rs.splitting_degree);
  std::sort(rs.roots.begin(), rs.roots.end(), [](const FieldElement& x, const FieldElement& y) { return x.index() < y.index(); });
  return rs;
}

DependencePattern RootSystem::pattern(const std::vector<std::size_t>& perm) const {
  if (p == 0) {
    std::vector<Char0Element> c;
    for (std::size_t i : perm) c.push_back(roots0.at(i));
    return dependence_pattern(c);
  }
  std::vector<FieldElement> c;
  for (std::size_t i : perm) c.push_back(roots.at(i));
  return dependence_pattern(*ctx, c);
}

std::vector<std::string> RootSystem::root_strings() const {
  std::vector<std::string> out;
  if (p == 0) {
    for (const auto& r : roots0) out.push_back(r.to_string());
  } else {
    for (const auto& r : roots) out.push_back(r.to_string());
  }
  return out;
}

// ---------------------------------------------------------------- theta

ThetaSet theta_from_roots(const RootSystem& rs) {
  const std::size_t k = rs.size();
  if (k > kMaxThetaRoots) {
    throw Error(ErrorCode::SizeCapExceeded, std::to_string(k) + " roots: too many orderings to enumerate");
  }
  ThetaSet t;
  t.P = rs.P;
  t.p = rs.p;
  t.splitting_degree = rs.splitting_degree;
  t.roots = rs.root_strings();
  std::set<DependencePattern> seen;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    seen.insert(rs.pattern(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  t.patterns.assign(seen.begin(), seen.end());
  return t;
}

ThetaSet theta_charp(const std::vector<mpz_class>& P, u64 p, const FieldLimits& limits) {
  return theta_from_roots(root_system_charp(P, p, limits));
}

ThetaSet theta_char0_restricted(const std::vector<mpz_class>& P) { return theta_from_roots(root_system_char0(P)); }

nlohmann::json to_json(const ThetaSet& t) {
  nlohmann::json pats = nlohmann::json::array();
  for (const auto& d : t.patterns) pats.push_back(to_json(d));
  return {{"schema", "acfo.theta/1"},
          {"P", univariate_to_string(t.P)},
          {"p", t.p},
          {"splitting_degree", t.splitting_degree},
          {"roots", t.roots},
          {"patterns", pats}};
}

}  // namespace acfo
