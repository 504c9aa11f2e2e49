#include "acfo/chi.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "acfo/error.hpp"

namespace acfo {

CirclePoint chi(const CharacterContext& ctx, const FieldElement& a) {
  if (!(a.field() == ctx.field())) throw Error(ErrorCode::ContextMismatch, "element from another field");
  if (a.is_zero()) throw Error(ErrorCode::ZeroArgument, "chi(0) is undefined");
  return CirclePoint(to_mpz(dlog(a)), to_mpz(ctx.field().order()), ctx.p());
}

FieldElement chi_inv(const CharacterContext& ctx, const CirclePoint& t) {
  if (t.char_p() != ctx.p()) throw Error(ErrorCode::CharMismatch, "circle point of another characteristic");
  const mpz_class N = to_mpz(ctx.field().order());
  if (!mpz_divisible_p(N.get_mpz_t(), t.den().get_mpz_t())) {
    throw Error(ErrorCode::NotRepresentedAtThisLevel,
                t.to_string() + " needs a level beyond " + std::to_string(ctx.field().degree()));
  }
  return ctx.field().generator().pow_u(to_u64(t.num() * (N / t.den())));
}

bool order_lt(const CharacterContext& ctx, const FieldElement& a, const FieldElement& b) {
  return cp_compare(chi(ctx, a), chi(ctx, b)) < 0;
}

bool pred_P_field(const CharacterContext& ctx, const FieldElement& a, u64 n, u64 r) {
  return pred_P(chi(ctx, a), n, r);
}

std::string CyclotomicInvariant::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = psi.size(); i-- > 0;) {
    if (psi[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || psi[i] != 1) os << psi[i];
    if (i > 0 && psi[i] != 1) os << "*";
    if (i > 0) os << "x";
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// prod_j (x - a^{p^j}) for j < n; the coefficients land in F_p
fp::Poly minimal_polynomial(const FieldElement& a, unsigned n) {
  const Field f = a.field();
  fpoly::Poly acc{f.one()};
  FieldElement conj = a;
  for (unsigned j = 0; j < n; ++j) {
    acc = fpoly::mul(acc, fpoly::Poly{-conj, f.one()});
    conj = conj.frobenius(1);
  }
  fp::Poly out;
  for (const auto& c : acc) {
    if (!c.in_prime_field()) throw Error(ErrorCode::InvalidArgument, "conjugate product left F_p");
    out.push_back(c.coeffs()[0]);
  }
  return out;
}

}  // namespace

CyclotomicInvariant cyclotomic_invariant(const CharacterContext& ctx, unsigned n) {
  const Field& f = ctx.field();
  const u64 sub = f.level_order(n);
  const FieldElement a = chi_inv(ctx, CirclePoint(1, to_mpz(sub), ctx.p()));
  return {ctx.p(), n, minimal_polynomial(a, n)};
}

bool CoherenceReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.ok; });
}

namespace {

std::vector<FieldElement> level_roots(const CyclotomicInvariant& inv, const Field& f) {
  return fpoly::roots_in_subfield(f, fpoly::lift(f, inv.psi), f.degree());
}

}  // namespace

CoherenceReport verify_coherent_sequence(const std::vector<CyclotomicInvariant>& invariants) {
  CoherenceReport rep;
  std::map<unsigned, const CyclotomicInvariant*> by_level;
  for (const auto& inv : invariants) {
    CoherenceEntry e{inv.n, inv.n, true, ""};
    if (by_level.count(inv.n)) {
      e.ok = false;
      e.message = "duplicate level";
    } else if (inv.n == 0 || inv.psi.size() != inv.n + 1 || inv.psi.back() != 1) {
      e.ok = false;
      e.message = "not monic of degree n";
    } else if (!fp::is_irreducible(inv.psi, inv.p)) {
      e.ok = false;
      e.message = "reducible";
    } else {
      const Field f = Field::create(inv.p, inv.n);
      const auto roots = level_roots(inv, f);
      if (roots.empty() || element_order(roots.front()) != f.order()) {
        e.ok = false;
        e.message = "roots are not primitive (p^n-1)-th roots of unity";
      }
    }
    by_level.emplace(inv.n, &inv);
    rep.entries.push_back(e);
  }
  if (!rep.ok()) return rep;
  for (const auto& [n, lo] : by_level) {
    for (const auto& [n2, hi] : by_level) {
      if (n2 <= n || n2 % n != 0) continue;
      CoherenceEntry e{n, n2, false, ""};
      if (lo->p != hi->p) {
        e.message = "mixed characteristics";
      } else {
        const Field f = Field::create(hi->p, n2);
        const auto roots = level_roots(*hi, f);
        const u64 k = f.order() / f.level_order(n);
        const FieldElement down = roots.front().pow_u(k);
        e.ok = fpoly::eval(f, fpoly::lift(f, lo->psi), down).is_zero();
        if (!e.ok) e.message = "norm of a level-" + std::to_string(n2) + " root is not a root of Psi_" + std::to_string(n);
      }
      rep.entries.push_back(e);
    }
  }
  return rep;
}

CharacterContext build_from_invariants(u64 p, const std::vector<CyclotomicInvariant>& invariants) {
  if (invariants.empty()) throw Error(ErrorCode::InvalidArgument, "empty invariant sequence");
  for (const auto& inv : invariants) {
    if (inv.p != p) throw Error(ErrorCode::IncoherentSequence, "invariant of another characteristic");
  }
  const CoherenceReport rep = verify_coherent_sequence(invariants);
  if (!rep.ok()) {
    for (const auto& e : rep.entries) {
      if (!e.ok) {
        throw Error(ErrorCode::IncoherentSequence,
                    "levels " + std::to_string(e.n) + "," + std::to_string(e.n2) + ": " + e.message);
      }
    }
  }
  const auto top = std::max_element(invariants.begin(), invariants.end(),
                                    [](const auto& a, const auto& b) { return a.n < b.n; });
  const unsigned L = top->n;
  for (const auto& inv : invariants) {
    if (L % inv.n != 0) throw Error(ErrorCode::IncoherentSequence, "levels do not divide the largest level");
  }
  const Field base = Field::create(p, L);
  for (const auto& rho : level_roots(*top, base)) {
    bool good = true;
    for (const auto& inv : invariants) {
      const FieldElement a = rho.pow_u(base.order() / base.level_order(inv.n));
      if (!fpoly::eval(base, fpoly::lift(base, inv.psi), a).is_zero()) {
        good = false;
        break;
      }
    }
    if (good) return CharacterContext(Field::with_generator(p, base.modulus(), rho.coeffs(), base.limits()));
  }
  throw Error(ErrorCode::NoCompatibleRoot, "no root of Psi_L is compatible with every level");
}

nlohmann::json invariants_to_json(const std::vector<CyclotomicInvariant>& invariants) {
  nlohmann::json j;
  j["schema"] = "acfo.invariants/1";
  j["p"] = invariants.empty() ? 0 : invariants.front().p;
  j["invariants"] = nlohmann::json::array();
  for (const auto& inv : invariants) {
    j["invariants"].push_back({{"n", inv.n}, {"coefficients", inv.psi}, {"text", inv.to_string()}});
  }
  return j;
}

std::vector<CyclotomicInvariant> invariants_from_json(const nlohmann::json& j) {
  try {
    const u64 p = j.at("p").get<u64>();
    std::vector<CyclotomicInvariant> out;
    for (const auto& e : j.at("invariants")) {
      out.push_back({p, e.at("n").get<unsigned>(), e.at("coefficients").get<fp::Poly>()});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed invariants JSON: ") + e.what());
  }
}

}  // namespace acfo
