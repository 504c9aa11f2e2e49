#include "acfo/decide.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "acfo/error.hpp"
#include "acfo/fpoly.hpp"

namespace acfo {

// ---------------------------------------------------------------- Q(zeta_D)

namespace {

using QPoly = std::vector<mpq_class>;

/// Exact arithmetic in Q(zeta_D) = Q[x] / Phi_D(x).
class Cyclo {
 public:
  explicit Cyclo(u64 D) : phi_(cyclotomic_polynomial(D)) {}

  QPoly constant(const mpq_class& c) const { return reduce(QPoly{c}); }
  QPoly power_of_x(u64 e) const {
    QPoly a(e + 1, 0);
    a[e] = 1;
    return reduce(a);
  }
  QPoly add(QPoly a, const QPoly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return reduce(std::move(a));
  }
  QPoly mul(const QPoly& a, const QPoly& b) const {
    if (a.empty() || b.empty()) return {};
    QPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return reduce(std::move(c));
  }

 private:
  QPoly phi_;  // monic

  QPoly reduce(QPoly a) const {
    const std::size_t d = phi_.size() - 1;
    for (std::size_t i = a.size(); i-- > d;) {
      const mpq_class c = a[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= d; ++j) a[i - d + j] -= c * phi_[j];
    }
    if (a.size() > d) a.resize(d);
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  }
};

struct Char0Values {
  std::unique_ptr<Cyclo> field;
  std::vector<QPoly> z;
};

Char0Values char0_values(const std::vector<Char0Element>& roots) {
  mpz_class D = 1;
  for (const auto& r : roots) D = lcm(D, r.torsion().den());
  if (!D.fits_ulong_p() || D > 1u << 16) throw Error(ErrorCode::SizeCapExceeded, "cyclotomic field too large");
  Char0Values out;
  out.field = std::make_unique<Cyclo>(D.get_ui());
  for (const auto& r : roots) {
    mpq_class mag = 1;
    for (const auto& [q, e] : r.prime_exps) {
      mpz_class pw;
      mpz_pow_ui(pw.get_mpz_t(), q.get_mpz_t(), mpz_class(abs(e)).get_ui());
      mag *= e > 0 ? mpq_class(pw) : mpq_class(1, pw);
    }
    const CirclePoint t = r.torsion();
    const mpz_class a = t.num() * (D / t.den());
    out.z.push_back(out.field->mul(out.field->constant(mag), out.field->power_of_x(a.get_ui())));
  }
  return out;
}

QPoly eval0(const IntPoly& f, const Char0Values& v) {
  QPoly acc;
  for (const auto& [e, c] : f.terms()) {
    QPoly term = v.field->constant(mpq_class(c));
    for (std::size_t j = 0; j < e.size(); ++j) {
      for (unsigned r = 0; r < e[j]; ++r) term = v.field->mul(term, v.z.at(j));
    }
    acc = v.field->add(acc, term);
  }
  return acc;
}

bool eval_ring0(const Formula& f, unsigned k, const Char0Values& v) {
  switch (f.kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Ring:
      return eval0(term_poly(f.ring.lhs, k) - term_poly(f.ring.rhs, k), v).empty() == f.ring.equal;
    case Formula::Kind::Not:
      return !eval_ring0(f.kids[0], k, v);
    case Formula::Kind::And:
      return std::all_of(f.kids.begin(), f.kids.end(), [&](const Formula& g) { return eval_ring0(g, k, v); });
    case Formula::Kind::Or:
      return std::any_of(f.kids.begin(), f.kids.end(), [&](const Formula& g) { return eval_ring0(g, k, v); });
    case Formula::Kind::Paren:
      return eval_ring0(f.kids[0], k, v);
    case Formula::Kind::Mult:
      throw Error(ErrorCode::InvalidArgument, "multiplicative atom in the ring part");
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------- field side

AcfResult acf_check(const DependencePattern& theta, const RootSystem& rs, const Formula& phi_r, unsigned k) {
  AcfResult out;
  if (rs.size() != k) return out;  // rho_P: z_1..z_k are all the nonzero roots
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  const auto names = rs.root_strings();
  do {
    if (!(rs.pattern(perm) == theta)) continue;
    bool ok = false;
    if (rs.p == 0) {
      std::vector<Char0Element> c;
      for (auto i : perm) c.push_back(rs.roots0[i]);
      ok = eval_ring0(phi_r, k, char0_values(c));
    } else {
      std::vector<FieldElement> z;
      for (auto i : perm) z.push_back(rs.roots[i]);
      ok = eval_ring(phi_r, k, rs.ctx->field(), z);
    }
    if (ok) {
      out.sat = true;
      out.perm = perm;
      for (auto i : perm) out.roots.push_back(names[i]);
      return out;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ---------------------------------------------------------------- decide

namespace {

struct Branch {
  bool sat = false;
  AcfResult acf;
  TmResult tm;
};

}  // namespace

Verdict decide_special(const SpecialSentence& s, u64 p, const DecideOptions& opts) {
  if (p != 0 && !is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  const RootSystem rs = p == 0 ? root_system_char0(s.P()) : root_system_charp(s.P(), p, opts.field_limits);
  Verdict v;
  v.p = p;
  v.splitting_degree = rs.splitting_degree;
  if (rs.size() != s.k) return v;
  const ThetaSet theta = theta_from_roots(rs);
  v.theta_count = theta.patterns.size();

  auto branch = [&](std::size_t i) {
    Branch b;
    b.acf = acf_check(theta.patterns[i], rs, s.ring, s.k);
    if (!b.acf.sat) return b;
    b.tm = tm_check(theta.patterns[i], s.k, s.mult, p, opts.limits);
    b.sat = b.tm.sat;
    return b;
  };
  const std::size_t batch = std::max(1u, opts.threads);
  for (std::size_t start = 0; start < theta.patterns.size(); start += batch) {
    const std::size_t end = std::min(theta.patterns.size(), start + batch);
    std::vector<std::future<Branch>> futs;
    for (std::size_t i = start; i < end; ++i) {
      futs.push_back(std::async(batch > 1 ? std::launch::async : std::launch::deferred, branch, i));
    }
    // lowest index wins; results are read in index order
    std::optional<std::size_t> hit;
    std::vector<Branch> results;
    for (auto& f : futs) results.push_back(f.get());
    for (std::size_t i = start; i < end && !hit; ++i) {
      if (results[i - start].sat) hit = i;
    }
    if (!hit) continue;
    const Branch& b = results[*hit - start];
    // both witnesses are re-evaluated against the sentence
    if (!eval_mult(s.mult, s.k, b.tm.witness)) throw Error(ErrorCode::InvalidArgument, "internal: circle witness fails phi_m");
    for (std::size_t j = 0; j + 1 < s.k; ++j) {
      if (b.tm.witness[j].value() >= b.tm.witness[j + 1].value()) {
        throw Error(ErrorCode::InvalidArgument, "internal: circle witness breaks the order prefix");
      }
    }
    v.satisfiable = true;
    v.theta_index = *hit;
    v.theta = theta.patterns[*hit];
    v.field_witness = b.acf.roots;
    v.circle_witness = b.tm.witness;
    return v;
  }
  return v;
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json j = {{"schema", "acfo.verdict/1"},
                      {"status", satisfiable ? "Satisfiable" : "Unsatisfiable"},
                      {"p", p},
                      {"splitting_degree", splitting_degree},
                      {"theta_count", theta_count}};
  j["theta_used"] = theta ? nlohmann::json(theta->to_string()) : nlohmann::json(nullptr);
  j["theta_index"] = theta_index ? nlohmann::json(*theta_index) : nlohmann::json(nullptr);
  if (satisfiable) {
    j["field_witness"] = field_witness;
    nlohmann::json c = nlohmann::json::array();
    for (const auto& t : circle_witness) c.push_back(t.to_string());
    j["circle_witness"] = c;
  } else {
    j["field_witness"] = nullptr;
    j["circle_witness"] = nullptr;
  }
  return j;
}

// ---------------------------------------------------------------- standard models

std::optional<StandardModelHit> standard_model_search(const SpecialSentence& s, u64 p, unsigned max_mult, u64 max_order) {
  const RootSystem base = root_system_charp(s.P(), p);
  if (base.size() != s.k) return std::nullopt;
  fp::Poly f = fp::from_integers(base.P, p);
  while (!f.empty() && f[0] == 0) f.erase(f.begin());
  for (unsigned m = 1; m <= max_mult; ++m) {
    const unsigned L = base.splitting_degree * m;
    const auto order = checked_pow(p, L, max_order + 1);
    if (!order || *order - 1 > max_order) break;
    FieldLimits lim;
    lim.max_order = max_order;
    const Field F = Field::create(p, L, lim);
    CharacterContext ctx(F);
    std::vector<FieldElement> roots;
    if (f.size() > 1) roots = fpoly::roots_in_subfield(F, fpoly::lift(F, fp::radical(f, p)), L);
    std::sort(roots.begin(), roots.end(), [](const FieldElement& a, const FieldElement& b) { return a.index() < b.index(); });
    std::vector<CirclePoint> chis;
    for (const auto& r : roots) chis.push_back(chi(ctx, r));
    std::vector<std::size_t> perm(roots.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<FieldElement> z;
      std::vector<CirclePoint> t;
      for (auto i : perm) {
        z.push_back(roots[i]);
        t.push_back(chis[i]);
      }
      bool ok = true;
      for (std::size_t j = 0; j + 1 < t.size() && ok; ++j) ok = t[j].value() < t[j + 1].value();
      ok = ok && eval_ring(s.ring, s.k, F, z) && eval_mult(s.mult, s.k, t);
      if (ok) {
        StandardModelHit hit;
        hit.level = L;
        for (const auto& x : z) hit.roots.push_back(x.to_string());
        hit.chi_values = t;
        return hit;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return std::nullopt;
}

}  // namespace acfo
