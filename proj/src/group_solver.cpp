#include "acfo/group_solver.hpp"

#include <functional>
#include <map>

#include "acfo/error.hpp"

namespace acfo {

namespace {

using QVec = std::vector<mpq_class>;

/// a . x + c > 0 (strict) or >= 0; as an equality, a . x + c = 0.
struct Lin {
  QVec a;
  mpq_class c;
  bool strict = false;
};

// ---------------------------------------------------------------- equalities

/// x = x0 + N y with y in Q^d.
struct Affine {
  QVec x0;
  std::vector<QVec> N;  // k rows, d columns
  std::size_t dim = 0;
};

std::optional<Affine> solve_equalities(const std::vector<Lin>& eqs, std::size_t k) {
  std::vector<QVec> R;
  for (const auto& e : eqs) {
    QVec row = e.a;
    row.resize(k, 0);
    row.push_back(-e.c);
    R.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < k && r < R.size(); ++col) {
    std::size_t piv = r;
    while (piv < R.size() && R[piv][col] == 0) ++piv;
    if (piv == R.size()) continue;
    std::swap(R[r], R[piv]);
    const mpq_class inv = 1 / R[r][col];
    for (auto& v : R[r]) v *= inv;
    for (std::size_t i = 0; i < R.size(); ++i) {
      if (i == r || R[i][col] == 0) continue;
      const mpq_class f = R[i][col];
      for (std::size_t j = col; j <= k; ++j) R[i][j] -= f * R[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < R.size(); ++i) {
    if (R[i][k] != 0) return std::nullopt;
  }
  Affine out;
  out.x0.assign(k, 0);
  std::vector<bool> is_pivot(k, false);
  for (std::size_t i = 0; i < r; ++i) {
    out.x0[pivots[i]] = R[i][k];
    is_pivot[pivots[i]] = true;
  }
  out.N.assign(k, QVec());
  for (std::size_t f = 0; f < k; ++f) {
    if (is_pivot[f]) continue;
    for (std::size_t x = 0; x < k; ++x) out.N[x].push_back(0);
    out.N[f].back() = 1;
    for (std::size_t i = 0; i < r; ++i) out.N[pivots[i]].back() = -R[i][f];
    ++out.dim;
  }
  return out;
}

Lin substitute(const Lin& l, const QVec& x0, const std::vector<QVec>& N, std::size_t dim) {
  Lin out;
  out.strict = l.strict;
  out.c = l.c;
  out.a.assign(dim, 0);
  for (std::size_t x = 0; x < l.a.size(); ++x) {
    if (l.a[x] == 0) continue;
    out.c += l.a[x] * x0[x];
    for (std::size_t y = 0; y < dim; ++y) out.a[y] += l.a[x] * N[x][y];
  }
  return out;
}

// ---------------------------------------------------------------- Fourier-Motzkin

// Drops trivially true rows; returns false on a trivially false one.
bool tidy(std::vector<Lin>& cs) {
  std::map<QVec, std::pair<mpq_class, bool>> best;  // normalized a -> tightest (c, strict)
  for (auto& l : cs) {
    std::size_t lead = 0;
    while (lead < l.a.size() && l.a[lead] == 0) ++lead;
    if (lead == l.a.size()) {
      if (l.c < 0 || (l.strict && l.c == 0)) return false;
      continue;
    }
    const mpq_class s = abs(l.a[lead]);
    QVec a = l.a;
    for (auto& v : a) v /= s;
    const mpq_class c = l.c / s;
    auto it = best.find(a);
    if (it == best.end()) {
      best.emplace(std::move(a), std::make_pair(c, l.strict));
    } else if (c < it->second.first || (c == it->second.first && l.strict)) {
      it->second = {c, l.strict};
    }
  }
  cs.clear();
  for (auto& [a, cs_] : best) cs.push_back(Lin{a, cs_.first, cs_.second});
  return true;
}

/// Feasibility over Q^d; fills `point` with a solution when requested.
bool fm(std::vector<Lin> cs, std::size_t d, QVec* point) {
  std::vector<std::vector<Lin>> stages(d);
  if (!tidy(cs)) return false;
  for (std::size_t v = d; v-- > 0;) {
    stages[v] = cs;
    std::vector<Lin> lower, upper, next;
    for (auto& l : cs) {
      if (l.a[v] > 0) {
        lower.push_back(l);
      } else if (l.a[v] < 0) {
        upper.push_back(l);
      } else {
        next.push_back(l);
      }
    }
    for (const auto& lo : lower) {
      for (const auto& up : upper) {
        const mpq_class f = lo.a[v], g = -up.a[v];
        Lin comb;
        comb.a.resize(lo.a.size());
        for (std::size_t j = 0; j < lo.a.size(); ++j) comb.a[j] = lo.a[j] * g + up.a[j] * f;
        comb.a[v] = 0;
        comb.c = lo.c * g + up.c * f;
        comb.strict = lo.strict || up.strict;
        next.push_back(std::move(comb));
      }
    }
    if (!tidy(next)) return false;
    cs = std::move(next);
  }
  if (!point) return true;
  point->assign(d, 0);
  for (std::size_t v = 0; v < d; ++v) {
    std::optional<mpq_class> lo, up;
    bool lo_strict = false, up_strict = false;
    for (const auto& l : stages[v]) {
      if (l.a[v] == 0) continue;
      mpq_class rest = l.c;
      for (std::size_t j = 0; j < v; ++j) rest += l.a[j] * (*point)[j];
      const mpq_class bound = -rest / l.a[v];
      if (l.a[v] > 0) {
        if (!lo || bound > *lo || (bound == *lo && l.strict)) {
          lo = bound;
          lo_strict = l.strict;
        }
      } else if (!up || bound < *up || (bound == *up && l.strict)) {
        up = bound;
        up_strict = l.strict;
      }
    }
    mpq_class x = 0;
    if (lo && up) {
      x = (*lo == *up) ? *lo : mpq_class((*lo + *up) / 2);
    } else if (lo) {
      x = lo_strict ? mpq_class(*lo + 1) : *lo;
    } else if (up) {
      x = up_strict ? mpq_class(*up - 1) : *up;
    }
    (void)lo_strict;
    (void)up_strict;
    (*point)[v] = x;
  }
  return true;
}

/// Feasibility of equalities plus inequalities over Q^k.
bool feasible(const std::vector<Lin>& eqs, const std::vector<Lin>& ineqs, std::size_t k) {
  const auto aff = solve_equalities(eqs, k);
  if (!aff) return false;
  std::vector<Lin> sub;
  for (const auto& l : ineqs) sub.push_back(substitute(l, aff->x0, aff->N, aff->dim));
  return fm(std::move(sub), aff->dim, nullptr);
}

}  // namespace

// ---------------------------------------------------------------- system solving

namespace {

QVec to_q(const IVec& v, std::size_t k) {
  QVec out(k, 0);
  for (std::size_t j = 0; j < v.size() && j < k; ++j) out[j] = v[j];
  return out;
}

// p = 0 stands for characteristic 0, where every rational qualifies.
bool p_integral(const mpq_class& q, u64 p) { return p == 0 || mpz_divisible_ui_p(q.get_den_mpz_t(), p) == 0; }

// q mod m for a p-integral rational and m a power of p.
mpz_class residue(const mpq_class& q, const mpz_class& m) {
  mpz_class inv;
  mpz_class den = q.get_den();
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  return mod_floor(q.get_num() * inv, m);
}

/// Integer points of the equalities over Z_(p): x = x0 + V s with s in Z_(p)^f.
struct PParam {
  QVec x0;
  IMat V;  // k x f
  std::size_t f = 0;
};

std::optional<PParam> solve_p_integral(const std::vector<Lin>& eqs, std::size_t k, u64 p) {
  PParam out;
  if (eqs.empty()) {
    out.x0.assign(k, 0);
    out.V = identity_matrix(k);
    out.f = k;
    return out;
  }
  IMat M;
  QVec rhs;
  for (const auto& e : eqs) {
    IVec row(k);
    for (std::size_t j = 0; j < k; ++j) {
      if (e.a[j].get_den() != 1) throw Error(ErrorCode::InvalidArgument, "internal: non-integral equality");
      row[j] = e.a[j].get_num();
    }
    M.push_back(std::move(row));
    rhs.push_back(-e.c);
  }
  const Smith sm = smith(M, k);
  // D s = U rhs
  QVec urhs(M.size(), 0);
  for (std::size_t i = 0; i < M.size(); ++i) {
    for (std::size_t j = 0; j < M.size(); ++j) urhs[i] += mpq_class(sm.U[i][j]) * rhs[j];
  }
  QVec s(k, 0);
  for (std::size_t i = 0; i < M.size(); ++i) {
    if (i < sm.rank) {
      s[i] = urhs[i] / mpq_class(sm.D[i][i]);
      if (!p_integral(s[i], p)) return std::nullopt;
    } else if (urhs[i] != 0) {
      return std::nullopt;
    }
  }
  out.x0.assign(k, 0);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t i = 0; i < sm.rank; ++i) out.x0[x] += mpq_class(sm.V[x][i]) * s[i];
  }
  out.f = k - sm.rank;
  out.V.assign(k, IVec(out.f, 0));
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t c = 0; c < out.f; ++c) out.V[x][c] = sm.V[x][sm.rank + c];
  }
  return out;
}

bool holds(const Lin& l, const QVec& x) {
  mpq_class v = l.c;
  for (std::size_t j = 0; j < l.a.size(); ++j) v += l.a[j] * x[j];
  return l.strict ? v > 0 : v >= 0;
}

mpq_class round_q(const mpq_class& x) {
  mpq_class h = x + mpq_class(1, 2);
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return mpq_class(f);
}

struct PredCond {
  std::size_t term;  // term slot
  mpz_class r;
  unsigned e = 0;
  bool negated = false;
};

class Solver {
 public:
  Solver(const GroupConstraintSystem& s, const SolverLimits& lim) : s_(s), lim_(lim), k_(s.k) {}

  TmResult run() {
    TmResult out;
    for (const auto& c : s_.congruences) {
      if (!p_integral(c.b, s_.p)) return out;  // no p-integral solutions
      congs_.push_back(c);
    }
    for (const auto& l : s_.literals) {
      switch (l.op) {
        case MultAtom::Op::Eq: {
          Congruence c;
          c.c.resize(k_);
          for (unsigned j = 0; j < k_; ++j) c.c[j] = l.lhs[j] - l.rhs[j];
          congs_.push_back(c);
          break;
        }
        case MultAtom::Op::Ne:
          throw Error(ErrorCode::InvalidArgument, "'!=' literals must be expanded before solving");
        case MultAtom::Op::Lt:
          lts_.emplace_back(slot(l.lhs), slot(l.rhs));
          break;
        case MultAtom::Op::Pred: {
          PredCond pc;
          pc.r = l.r;
          pc.negated = l.negated;
          mpz_class n = l.n;
          while (s_.p != 0 && mpz_divisible_ui_p(n.get_mpz_t(), s_.p)) {
            n /= s_.p;
            ++pc.e;
          }
          if (pc.e == 0) {
            if (pc.negated) return out;  // not P[r,n] with p coprime to n never holds
            break;
          }
          pc.term = slot(l.lhs);
          preds_.push_back(pc);
          break;
        }
      }
    }
    for (unsigned j = 0; j < k_; ++j) {
      QVec a(k_, 0);
      a[j] = 1;
      base_.push_back(Lin{a, 0, false});
      QVec b(k_, 0);
      b[j] = -1;
      base_.push_back(Lin{b, 1, true});
      if (s_.ordered && j + 1 < k_) {
        QVec o(k_, 0);
        o[j] = -1;
        o[j + 1] = 1;
        base_.push_back(Lin{o, 0, true});
      }
    }
    zc_.assign(congs_.size(), 0);
    wt_.assign(terms_.size(), 0);
    if (dfs(0)) {
      out.sat = true;
      out.witness = witness_;
    }
    out.branches = branches_;
    return out;
  }

 private:
  const GroupConstraintSystem& s_;
  SolverLimits lim_;
  std::size_t k_;
  std::vector<Congruence> congs_;
  std::vector<IVec> terms_;
  std::vector<std::pair<std::size_t, std::size_t>> lts_;
  std::vector<PredCond> preds_;
  std::vector<Lin> base_;
  std::vector<mpz_class> zc_, wt_;
  u64 branches_ = 0;
  std::vector<CirclePoint> witness_;

  std::size_t slot(const IVec& a) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i] == a) return i;
    }
    terms_.push_back(a);
    return terms_.size() - 1;
  }

  // Constraints available once the first `depth` slots carry values.
  void build(std::size_t depth, std::vector<Lin>& eqs, std::vector<Lin>& ineqs) const {
    eqs.clear();
    ineqs = base_;
    const std::size_t nc = std::min(depth, congs_.size());
    for (std::size_t i = 0; i < nc; ++i) eqs.push_back(Lin{to_q(congs_[i].c, k_), -(zc_[i] + congs_[i].b), false});
    const std::size_t nt = depth > congs_.size() ? depth - congs_.size() : 0;
    for (std::size_t i = 0; i < nt; ++i) {
      const QVec a = to_q(terms_[i], k_);
      ineqs.push_back(Lin{a, -wt_[i], false});
      QVec na = a;
      for (auto& v : na) v = -v;
      ineqs.push_back(Lin{na, wt_[i] + 1, true});
    }
    for (auto [x, y] : lts_) {
      if (x >= nt || y >= nt) continue;
      QVec a(k_, 0);
      for (std::size_t j = 0; j < k_; ++j) a[j] = mpq_class(terms_[y][j] - terms_[x][j]);
      ineqs.push_back(Lin{a, wt_[x] - wt_[y], true});
    }
  }

  static std::pair<mpz_class, mpz_class> span(const IVec& c) {
    mpz_class lo = 0, hi = 0;
    for (const auto& v : c) (v < 0 ? lo : hi) += v;
    return {lo, hi};
  }

  bool dfs(std::size_t depth) {
    if (++branches_ > lim_.max_branches) {
      throw Error(ErrorCode::SizeCapExceeded, "group solver branch budget exhausted");
    }
    std::vector<Lin> eqs, ineqs;
    build(depth, eqs, ineqs);
    if (!feasible(eqs, ineqs, k_)) return false;
    if (depth == congs_.size() + terms_.size()) return leaf(eqs, ineqs);
    if (depth < congs_.size()) {
      const auto [lo, hi] = span(congs_[depth].c);
      mpq_class a = lo - congs_[depth].b, b = hi - congs_[depth].b;
      mpz_class zlo, zhi;
      mpz_fdiv_q(zlo.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
      mpz_cdiv_q(zhi.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
      for (mpz_class z = zlo; z <= zhi; ++z) {
        zc_[depth] = z;
        if (dfs(depth + 1)) return true;
      }
      return false;
    }
    const std::size_t t = depth - congs_.size();
    const auto [lo, hi] = span(terms_[t]);
    // floor(a . t) over [0,1)^k lies in [sum of negative, sum of positive]
    for (mpz_class w = lo; w <= hi; ++w) {
      wt_[t] = w;
      if (dfs(depth + 1)) return true;
    }
    return false;
  }

  bool leaf(std::vector<Lin> eqs, const std::vector<Lin>& ineqs) {
    // implicit equalities among the non-strict rows
    std::vector<bool> implicit(ineqs.size(), false);
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
      if (ineqs[i].strict) continue;
      std::vector<Lin> test = ineqs;
      test[i].strict = true;
      if (!feasible(eqs, test, k_)) implicit[i] = true;
    }
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
      if (implicit[i]) eqs.push_back(Lin{ineqs[i].a, ineqs[i].c, false});
    }
    const auto par = solve_p_integral(eqs, k_, s_.p);
    if (!par) return false;

    // residues of s modulo p^E that satisfy every P[r, p^e n'] condition
    unsigned E = 0;
    for (const auto& pc : preds_) E = std::max(E, pc.e);
    mpz_class pE;
    mpz_ui_pow_ui(pE.get_mpz_t(), s_.p, E);
    std::optional<IVec> sigma = find_residues(*par, pE);
    if (!sigma) return false;

    // interior point of the remaining inequalities on x0 + V s
    std::vector<QVec> Nq(k_, QVec(par->f, 0));
    for (std::size_t x = 0; x < k_; ++x) {
      for (std::size_t c = 0; c < par->f; ++c) Nq[x][c] = par->V[x][c];
    }
    std::vector<Lin> open, sub;
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
      if (implicit[i]) continue;
      Lin l = ineqs[i];
      l.strict = true;
      open.push_back(l);
      sub.push_back(substitute(l, par->x0, Nq, par->f));
    }
    QVec star;
    if (!fm(sub, par->f, &star)) return false;  // the p-integral lattice missed the open set
    for (unsigned j = 0; j < 256; ++j) {
      mpz_class D;
      mpz_ui_pow_ui(D.get_mpz_t(), s_.p == 0 ? 2 : s_.p + 1, j);
      QVec s(par->f);
      for (std::size_t c = 0; c < par->f; ++c) {
        const mpq_class off = round_q((star[c] - mpq_class((*sigma)[c])) * mpq_class(D) / mpq_class(pE));
        s[c] = mpq_class((*sigma)[c]) + off * mpq_class(pE) / mpq_class(D);
      }
      QVec t = par->x0;
      for (std::size_t x = 0; x < k_; ++x) {
        for (std::size_t c = 0; c < par->f; ++c) t[x] += mpq_class(par->V[x][c]) * s[c];
      }
      if (!std::all_of(open.begin(), open.end(), [&](const Lin& l) { return holds(l, t); })) continue;
      std::vector<CirclePoint> w;
      for (const auto& v : t) w.push_back(CirclePoint::from_rational(v, s_.p));
      if (!check_witness(s_, w)) throw Error(ErrorCode::InvalidArgument, "internal: constructed witness fails");
      witness_ = std::move(w);
      return true;
    }
    throw Error(ErrorCode::InvalidArgument, "internal: witness approximation did not converge");
  }

  std::optional<IVec> find_residues(const PParam& par, const mpz_class& pE) {
    const std::size_t f = par.f;
    IVec sigma(f, 0);
    if (preds_.empty()) return sigma;
    // per condition: constant part and coefficients on s
    struct Cond {
      mpz_class m, c0;
      IVec g;
      bool negated;
    };
    std::vector<Cond> conds;
    for (const auto& pc : preds_) {
      Cond c;
      mpz_ui_pow_ui(c.m.get_mpz_t(), s_.p, pc.e);
      const IVec& a = terms_[pc.term];
      mpq_class at0 = 0;
      for (std::size_t j = 0; j < k_; ++j) at0 += mpq_class(a[j]) * par.x0[j];
      c.c0 = mod_floor(residue(at0, c.m) - wt_[pc.term] + pc.r, c.m);
      c.g.assign(f, 0);
      for (std::size_t col = 0; col < f; ++col) {
        for (std::size_t j = 0; j < k_; ++j) c.g[col] += a[j] * par.V[j][col];
        c.g[col] = mod_floor(c.g[col], c.m);
      }
      c.negated = pc.negated;
      conds.push_back(std::move(c));
    }
    auto ok = [&]() {
      for (const auto& c : conds) {
        mpz_class v = c.c0;
        for (std::size_t col = 0; col < f; ++col) v += c.g[col] * sigma[col];
        const bool zero = mod_floor(v, c.m) == 0;
        if (zero == c.negated) return false;
      }
      return true;
    };
    mpz_class total;
    mpz_pow_ui(total.get_mpz_t(), pE.get_mpz_t(), f);
    if (total > to_mpz(lim_.residue_budget)) {
      throw Error(ErrorCode::SizeCapExceeded, "residue search over " + total.get_str() + " classes");
    }
    for (;;) {
      if (ok()) return sigma;
      std::size_t c = 0;
      while (c < f && ++sigma[c] == pE) sigma[c++] = 0;
      if (c == f) return std::nullopt;
    }
  }
};

}  // namespace

TmResult solve_system(const GroupConstraintSystem& s, const SolverLimits& limits) {
  if (s.p != 0 && !is_prime(s.p)) throw Error(ErrorCode::NotPrime, "the group solver needs p prime or 0");
  return Solver(s, limits).run();
}

bool check_witness(const GroupConstraintSystem& s, const std::vector<CirclePoint>& t) {
  if (t.size() != s.k) return false;
  for (const auto& x : t) {
    if (!p_integral(x.value(), s.p)) return false;
  }
  for (const auto& c : s.congruences) {
    mpq_class v = -c.b;
    for (std::size_t j = 0; j < s.k; ++j) v += mpq_class(c.c[j]) * t[j].value();
    if (v.get_den() != 1) return false;
  }
  if (s.ordered) {
    for (std::size_t j = 0; j + 1 < s.k; ++j) {
      if (t[j].value() >= t[j + 1].value()) return false;
    }
  }
  return std::all_of(s.literals.begin(), s.literals.end(), [&](const MultLiteral& l) { return eval_literal(l, t); });
}

std::vector<Congruence> theta_congruences(const DependencePattern& theta, unsigned k) {
  std::vector<Congruence> out;
  for (const auto& [i, r] : theta.relations) {
    Congruence c;
    c.c.assign(k, 0);
    for (std::size_t j = 0; j < r.left.size() && j < k; ++j) c.c[j] = r.left[j] - r.right[j];
    out.push_back(std::move(c));
  }
  return out;
}

TmResult tm_check(const DependencePattern& theta, unsigned k, const Formula& phi_m, u64 p, const SolverLimits& limits) {
  const auto dnf = mult_dnf(phi_m, k, limits.max_disjuncts);
  TmResult out;
  for (std::size_t d = 0; d < dnf.size(); ++d) {
    GroupConstraintSystem s;
    s.k = k;
    s.p = p;
    s.ordered = true;
    s.congruences = theta_congruences(theta, k);
    s.literals = dnf[d];
    TmResult r = solve_system(s, limits);
    out.branches += r.branches;
    if (r.sat) {
      out.sat = true;
      out.witness = std::move(r.witness);
      out.disjunct = d;
      return out;
    }
  }
  return out;
}

}  // namespace acfo
