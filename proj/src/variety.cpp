#include "acfo/variety.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "acfo/error.hpp"

namespace acfo {

VarietySpec VarietySpec::make(unsigned m, const CharacterContext& base, const std::vector<std::string>& eqs,
                              const std::vector<std::string>& neqs, unsigned base_level) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "a variety needs at least one coordinate");
  if (base_level == 0 || base.field().degree() % base_level != 0) {
    throw Error(ErrorCode::NotADivisor, "base level must divide the ambient degree");
  }
  VarietySpec v(m, base, base_level);
  for (const auto& s : eqs) v.eqs.push_back(IntPoly::parse(s, m));
  for (const auto& s : neqs) v.neqs.push_back(IntPoly::parse(s, m));
  return v;
}

u64 VarietySpec::q() const { return *checked_pow(base.p(), base_level); }

nlohmann::json variety_to_json(const VarietySpec& v) {
  nlohmann::json j;
  j["schema"] = "acfo.variety/1";
  j["m"] = v.m;
  j["p"] = v.base.p();
  j["L"] = v.base.field().degree();
  j["base_level"] = v.base_level;
  j["eqs"] = nlohmann::json::array();
  j["neqs"] = nlohmann::json::array();
  for (const auto& e : v.eqs) j["eqs"].push_back(e.to_string());
  for (const auto& e : v.neqs) j["neqs"].push_back(e.to_string());
  if (v.claimed_dim) j["claimed_dim"] = *v.claimed_dim;
  return j;
}

VarietySpec variety_from_json(const nlohmann::json& j, const FieldLimits& limits) {
  try {
    const unsigned m = j.at("m").get<unsigned>();
    const u64 p = j.at("p").get<u64>();
    const unsigned base_level = j.value("base_level", 1u);
    const unsigned L = j.value("L", base_level);
    CharacterContext base(Field::create(p, L, limits));
    std::vector<std::string> eqs, neqs;
    if (j.contains("eqs")) eqs = j.at("eqs").get<std::vector<std::string>>();
    if (j.contains("neqs")) neqs = j.at("neqs").get<std::vector<std::string>>();
    VarietySpec v = VarietySpec::make(m, base, eqs, neqs, base_level);
    if (j.contains("claimed_dim") && !j.at("claimed_dim").is_null()) v.claimed_dim = j.at("claimed_dim").get<unsigned>();
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed variety JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------- levels

u64 LevelContext::level_dlog(const FieldElement& a) const {
  return dlog(a) / (ctx.field().order() / level_order);
}

namespace {

constexpr u64 kMaxLevelElements = u64{1} << 26;

}  // namespace

LevelContext level_context_in(const CharacterContext& ctx, unsigned s) {
  const Field& f = ctx.field();
  if (s == 0 || f.degree() % s != 0) throw Error(ErrorCode::NotADivisor, "level degree must divide the ambient degree");
  const auto size = checked_pow(f.p(), s, kMaxLevelElements);
  if (!size) throw Error(ErrorCode::SizeCapExceeded, "level F_{p^" + std::to_string(s) + "} is too large to enumerate");
  LevelContext lc{ctx, s, *size - 1, f.subfield_elements(s)};
  return lc;
}

LevelContext level_context(const VarietySpec& v, unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "levels start at 1");
  const unsigned s = v.base_level * k;
  const unsigned L = v.base.field().degree();
  if (L % s == 0) return level_context_in(v.base, s);
  const auto lcm = static_cast<unsigned>(lcm_u64(L, s));
  if (lcm > 64) throw Error(ErrorCode::SizeCapExceeded, "ambient degree above 64");
  const AmbientExtension ext = extend_ambient(v.base.field(), lcm);
  return level_context_in(CharacterContext(ext.field), s);
}

// ---------------------------------------------------------------- enumeration

namespace {

constexpr std::size_t kMaxChunks = 64;
constexpr u64 kScanRootsBelow = 64;

struct Plan {
  explicit Plan(Field field) : f(std::move(field)) {}
  Field f;
  unsigned m = 0;
  unsigned s = 0;
  u64 sub_size = 0;
  bool torus = false;
  bool empty = false;
  std::vector<FieldElement> values;
  std::vector<FieldPoly> eqs;
  std::vector<int> eq_last;
  std::vector<FieldPoly> neqs;
  int pivot = -1;
};

Plan make_plan(const VarietySpec& v, const LevelContext& lc, const EnumOptions& opts) {
  Plan pl(lc.ctx.field());
  pl.m = v.m;
  pl.s = lc.degree;
  pl.sub_size = lc.level_order + 1;
  pl.torus = opts.torus_only;
  for (const auto& e : lc.elements) {
    if (!(opts.torus_only && e.is_zero())) pl.values.push_back(e);
  }
  for (const auto& eq : v.eqs) {
    FieldPoly fp = compile(eq.widened(v.m), pl.f);
    int last = -1;
    for (unsigned i = 0; i < v.m; ++i) {
      if (fp.degree_in[i] > 0) last = static_cast<int>(i);
    }
    if (last < 0) {
      if (!fp.is_zero()) pl.empty = true;
      continue;
    }
    if (last == static_cast<int>(v.m) - 1 && pl.pivot < 0) pl.pivot = static_cast<int>(pl.eqs.size());
    pl.eqs.push_back(std::move(fp));
    pl.eq_last.push_back(last);
  }
  for (const auto& q : v.neqs) pl.neqs.push_back(compile(q.widened(v.m), pl.f));
  const double n = static_cast<double>(pl.values.size());
  const double work = std::pow(n, pl.pivot >= 0 ? v.m - 1 : v.m);
  if (work > opts.budget) {
    throw Error(ErrorCode::SizeCapExceeded, "enumeration would visit about " + std::to_string(work) + " tuples");
  }
  return pl;
}

std::vector<FieldElement> pivot_candidates(const Plan& pl, const fpoly::Poly& u) {
  if (u.empty()) return pl.values;
  std::vector<FieldElement> out;
  if (u.size() == 1) return out;
  if (u.size() == 2) {
    out.push_back(-u[0] / u[1]);
  } else if (pl.sub_size <= kScanRootsBelow) {
    for (const auto& x : pl.values) {
      if (fpoly::eval(pl.f, u, x).is_zero()) out.push_back(x);
    }
    return out;
  } else {
    out = fpoly::roots_by_splitting(pl.f, u, pl.s);
  }
  if (pl.torus) out.erase(std::remove_if(out.begin(), out.end(), [](const auto& x) { return x.is_zero(); }), out.end());
  return out;
}

class Walker {
 public:
  Walker(const Plan& pl, const std::function<void(const Point&)>& visit) : pl_(pl), visit_(visit), point_(pl.m) {
    for (unsigned i = 0; i < pl.m; ++i) point_[i] = pl.f.zero();
  }

  void run(std::size_t lo, std::size_t hi) { step(0, lo, hi); }

 private:
  bool level_ok(unsigned j, int skip) const {
    for (std::size_t e = 0; e < pl_.eqs.size(); ++e) {
      if (pl_.eq_last[e] != static_cast<int>(j) || static_cast<int>(e) == skip) continue;
      if (!eval(pl_.eqs[e], pl_.f, point_).is_zero()) return false;
    }
    return true;
  }

  void finish() {
    if (!pl_.neqs.empty()) {
      bool some_nonzero = false;
      for (const auto& q : pl_.neqs) {
        if (!eval(q, pl_.f, point_).is_zero()) {
          some_nonzero = true;
          break;
        }
      }
      if (!some_nonzero) return;
    }
    visit_(point_);
  }

  void step(unsigned j, std::size_t lo, std::size_t hi) {
    if (j == pl_.m) {
      finish();
      return;
    }
    if (j + 1 == pl_.m && pl_.pivot >= 0) {
      const fpoly::Poly u = specialize(pl_.eqs[pl_.pivot], pl_.f, point_, j);
      auto cands = pivot_candidates(pl_, u);
      if (j == 0) {
        // single-coordinate variety: the chunk range applies to the candidate list
        hi = std::min(hi, cands.size());
        cands = std::vector<FieldElement>(cands.begin() + static_cast<std::ptrdiff_t>(std::min(lo, hi)),
                                          cands.begin() + static_cast<std::ptrdiff_t>(hi));
      }
      for (const auto& c : cands) {
        point_[j] = c;
        if (level_ok(j, pl_.pivot)) step(j + 1, 0, 0);
      }
      return;
    }
    const std::size_t begin = j == 0 ? lo : 0;
    const std::size_t end = j == 0 ? hi : pl_.values.size();
    for (std::size_t i = begin; i < end; ++i) {
      point_[j] = pl_.values[i];
      if (level_ok(j, -1)) step(j + 1, 0, 0);
    }
  }

  const Plan& pl_;
  const std::function<void(const Point&)>& visit_;
  Point point_;
};

std::pair<std::size_t, std::size_t> chunk_range(std::size_t n, std::size_t chunks, std::size_t c) {
  return {n * c / chunks, n * (c + 1) / chunks};
}

std::size_t chunks_for(const Plan& pl) {
  if (pl.empty) return 1;
  if (pl.m == 1 && pl.pivot >= 0) return 1;
  return std::max<std::size_t>(1, std::min(kMaxChunks, pl.values.size()));
}

}  // namespace

std::size_t chunk_count(const VarietySpec& v, const LevelContext& lc, const EnumOptions& opts) {
  return chunks_for(make_plan(v, lc, opts));
}

void enumerate_chunk(const VarietySpec& v, const LevelContext& lc, const EnumOptions& opts, std::size_t chunk,
                     const std::function<void(const Point&)>& visit) {
  const Plan pl = make_plan(v, lc, opts);
  if (pl.empty) return;
  const std::size_t chunks = chunks_for(pl);
  if (chunk >= chunks) return;
  Walker w(pl, visit);
  if (pl.m == 1 && pl.pivot >= 0) {
    w.run(0, pl.values.size() + 1);
    return;
  }
  const auto [lo, hi] = chunk_range(pl.values.size(), chunks, chunk);
  w.run(lo, hi);
}

void parallel_chunks(std::size_t chunks, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || chunks <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
  for (unsigned t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= chunks) return;
        try {
          fn(c);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          next = chunks;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::vector<Point> enumerate_points(const VarietySpec& v, const LevelContext& lc, const EnumOptions& opts) {
  const Plan pl = make_plan(v, lc, opts);
  const std::size_t chunks = chunks_for(pl);
  std::vector<std::vector<Point>> parts(chunks);
  parallel_chunks(chunks, opts.threads, [&](std::size_t c) {
    enumerate_chunk(v, lc, opts, c, [&](const Point& pt) { parts[c].push_back(pt); });
  });
  std::vector<Point> out;
  for (auto& part : parts) {
    for (auto& pt : part) out.push_back(std::move(pt));
  }
  return out;
}

std::vector<Point> enumerate_points(const VarietySpec& v, unsigned k, const EnumOptions& opts) {
  return enumerate_points(v, level_context(v, k), opts);
}

u64 count_points(const VarietySpec& v, const LevelContext& lc, const EnumOptions& opts) {
  const Plan pl = make_plan(v, lc, opts);
  const std::size_t chunks = chunks_for(pl);
  std::vector<u64> counts(chunks, 0);
  parallel_chunks(chunks, opts.threads, [&](std::size_t c) {
    enumerate_chunk(v, lc, opts, c, [&](const Point&) { ++counts[c]; });
  });
  u64 total = 0;
  for (u64 c : counts) total += c;
  return total;
}

// ---------------------------------------------------------------- lattices

namespace {

std::vector<std::vector<u64>> torus_dlogs(const VarietySpec& v, const LevelContext& lc, unsigned threads) {
  EnumOptions opts;
  opts.torus_only = true;
  opts.threads = threads;
  const Plan pl = make_plan(v, lc, opts);
  const std::size_t chunks = chunks_for(pl);
  std::vector<std::vector<std::vector<u64>>> parts(chunks);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    enumerate_chunk(v, lc, opts, c, [&](const Point& pt) {
      std::vector<u64> d(pt.size());
      for (std::size_t i = 0; i < pt.size(); ++i) d[i] = lc.level_dlog(pt[i]);
      parts[c].push_back(std::move(d));
    });
  });
  std::vector<std::vector<u64>> out;
  for (auto& part : parts) {
    for (auto& d : part) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

RelationLattice relation_lattice(const VarietySpec& v, unsigned k, unsigned threads) {
  const LevelContext lc = level_context(v, k);
  const auto ds = torus_dlogs(v, lc, threads);
  if (ds.empty()) throw Error(ErrorCode::EmptyTorusPart, "no torus points at level " + std::to_string(k));
  RelationLattice out;
  out.k = k;
  out.N = to_mpz(lc.level_order);
  out.n_points = ds.size();
  ModLattice lat(v.m, out.N);
  for (std::size_t i = 1; i < ds.size() && !lat.is_full(); ++i) {
    IVec diff(v.m);
    for (unsigned j = 0; j < v.m; ++j) diff[j] = to_mpz_signed(static_cast<i64>(ds[i][j]) - static_cast<i64>(ds[0][j]));
    lat.add(diff);
  }
  out.trivial = lat.is_full();
  out.basis = lat.relation_basis();
  return out;
}

std::string LargenessVerdict::to_string() const {
  switch (kind) {
    case Kind::Large: return "Large(" + std::to_string(level) + ")";
    case Kind::Unknown: return "Unknown(" + std::to_string(level) + ")";
    case Kind::NotLarge: {
      std::string s = "NotLarge((";
      for (std::size_t i = 0; i < relation.size(); ++i) s += (i ? "," : "") + relation[i].get_str();
      return s + "), c=" + constant + ")";
    }
  }
  return "?";
}

namespace {

std::vector<IVec> relation_candidates(const RelationLattice& rl) {
  std::vector<IVec> cands;
  for (const auto& row : rl.basis) {
    IVec c = symmetric_mod(row, rl.N);
    if (std::all_of(c.begin(), c.end(), [](const auto& x) { return x == 0; })) continue;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] == 0) continue;
      if (c[i] < 0) {
        for (auto& x : c) x = -x;
      }
      break;
    }
    cands.push_back(std::move(c));
  }
  auto weight = [](const IVec& c) {
    mpz_class w = 0;
    for (const auto& x : c) w = std::max(w, mpz_class(abs(x)));
    return w;
  };
  std::sort(cands.begin(), cands.end(), [&](const IVec& a, const IVec& b) {
    const mpz_class wa = weight(a), wb = weight(b);
    if (wa != wb) return wa < wb;
    return a < b;
  });
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  return cands;
}

}  // namespace

LargenessVerdict largeness_verdict(const VarietySpec& v, unsigned k_max, unsigned threads) {
  if (k_max == 0) throw Error(ErrorCode::InvalidArgument, "k_max must be positive");
  LargenessVerdict out;
  std::optional<RelationLattice> last;
  for (unsigned k = 1; k <= k_max; ++k) {
    try {
      RelationLattice rl = relation_lattice(v, k, threads);
      if (rl.trivial) {
        out.kind = LargenessVerdict::Kind::Large;
        out.level = k;
        return out;
      }
      if (k == k_max) last = std::move(rl);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyTorusPart) throw;
    }
  }
  out.level = k_max;
  if (!last) return out;
  const LevelContext lc2 = level_context(v, 2 * k_max);
  EnumOptions opts;
  opts.torus_only = true;
  opts.threads = threads;
  const auto points = enumerate_points(v, lc2, opts);
  if (points.empty()) return out;
  int tried = 0;
  for (const auto& cand : relation_candidates(*last)) {
    if (++tried > 8) break;
    auto mono = [&](const Point& pt) {
      FieldElement acc = lc2.ctx.field().one();
      for (std::size_t i = 0; i < pt.size(); ++i) {
        if (cand[i] != 0) acc *= pt[i].pow(to_i64(cand[i]));
      }
      return acc;
    };
    const FieldElement c = mono(points.front());
    const bool constant = std::all_of(points.begin(), points.end(), [&](const Point& pt) { return mono(pt) == c; });
    if (constant) {
      out.kind = LargenessVerdict::Kind::NotLarge;
      out.relation = cand;
      out.constant = c.to_string();
      out.constant_chi = chi(lc2.ctx, c);
      out.heuristic = true;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------- product sets

ProductSetResult product_set_oracle(const VarietySpec& v, unsigned k, unsigned steps, u64 cap) {
  const LevelContext lc = level_context(v, k);
  const auto ds = torus_dlogs(v, lc, 1);
  if (ds.empty()) throw Error(ErrorCode::EmptyTorusPart, "no torus points at level " + std::to_string(k));
  const u64 N = lc.level_order;
  const auto total = checked_pow(N, v.m, cap);
  if (!total) throw Error(ErrorCode::SizeCapExceeded, "torus too large for the product-set oracle");
  auto encode = [&](const std::vector<u64>& d) {
    u64 idx = 0;
    for (u64 x : d) idx = idx * N + x;
    return idx;
  };
  std::vector<std::vector<u64>> base;
  std::set<u64> seen;
  for (const auto& d : ds) {
    std::vector<u64> r(v.m);
    for (unsigned i = 0; i < v.m; ++i) r[i] = (d[i] + N - ds[0][i]) % N;
    if (seen.insert(encode(r)).second) base.push_back(std::move(r));
  }
  std::vector<std::vector<u64>> cur = base;
  std::vector<char> member(*total, 0);
  for (const auto& r : cur) member[encode(r)] = 1;
  ProductSetResult out;
  out.torus_size = *total;
  for (unsigned s = 1; s <= steps; ++s) {
    std::vector<std::vector<u64>> next = cur;
    for (const auto& x : cur) {
      for (const auto& y : base) {
        std::vector<u64> z(v.m);
        for (unsigned i = 0; i < v.m; ++i) z[i] = (x[i] + y[i]) % N;
        const u64 id = encode(z);
        if (!member[id]) {
          member[id] = 1;
          next.push_back(std::move(z));
        }
      }
    }
    if (next.size() == cur.size()) {
      out.steps = s;
      out.stabilized = true;
      break;
    }
    cur = std::move(next);
    out.steps = s;
  }
  out.size = cur.size();
  out.full = out.size == *total;
  return out;
}

// ---------------------------------------------------------------- hyper-arcs

HyperArc HyperArc::make(u64 q, std::vector<CirclePoint> lo, std::vector<CirclePoint> hi, std::vector<CirclePoint> e) {
  HyperArc h;
  h.m = static_cast<unsigned>(lo.size());
  h.q = q;
  if (h.m == 0 || hi.size() != h.m) throw Error(ErrorCode::HyperArcInvalid, "bounds must have equal positive length");
  const u64 p = lo.front().char_p();
  if (e.empty()) e.assign(h.m, CirclePoint::identity(p));
  if (e.size() != h.m) throw Error(ErrorCode::HyperArcInvalid, "shift vector has the wrong length");
  if (q == 0) throw Error(ErrorCode::HyperArcInvalid, "q must be positive");
  if (q > 1) {
    u64 t = q;
    while (p > 1 && t % p == 0) t /= p;
    if (p < 2 || t != 1) throw Error(ErrorCode::HyperArcInvalid, "q must be a power of the characteristic");
  }
  for (unsigned i = 0; i < h.m; ++i) {
    if (lo[i].char_p() != p || hi[i].char_p() != p || e[i].char_p() != p) {
      throw Error(ErrorCode::HyperArcInvalid, "mixed characteristics");
    }
    if (cp_compare(lo[i], hi[i]) >= 0) throw Error(ErrorCode::HyperArcInvalid, "empty interval in coordinate " + std::to_string(i + 1));
    if (cp_compare(lo[i], cp_mul(lo[i], e[i])) > 0 || cp_compare(hi[i], cp_mul(hi[i], e[i])) > 0) {
      throw Error(ErrorCode::HyperArcInvalid, "shift wraps in coordinate " + std::to_string(i + 1));
    }
  }
  h.lo = std::move(lo);
  h.hi = std::move(hi);
  h.e = std::move(e);
  return h;
}

bool hyperarc_contains(const HyperArc& h, const Point& a, const CharacterContext& ctx) {
  if (a.size() != h.m) throw Error(ErrorCode::ArityError, "point dimension differs from the arc");
  for (unsigned i = 0; i < h.m; ++i) {
    if (a[i].is_zero()) throw Error(ErrorCode::ZeroArgument, "hyper-arcs live in the torus");
    const CirclePoint t = chi(ctx, a[i]);
    if (!(cp_compare(h.lo[i], t) < 0 && cp_compare(t, h.hi[i]) < 0)) return false;
    if (h.q > 1 && !pred_P(cp_mul(t, h.e[i]), h.q, 0)) return false;
  }
  return true;
}

namespace {

// c -> c^q in the pulled-back arc: lo < q*chi(c) < hi and l(chi(c) + eps) < 1/q
// where eps is the p-integral q-th root of e.
struct Pullback {
  std::vector<CirclePoint> eps;
  mpq_class bound;
};

Pullback make_pullback(const HyperArc& h) {
  Pullback pb;
  pb.bound = mpq_class(1, to_mpz(h.q));
  for (const auto& e : h.e) {
    bool found = false;
    for (u64 r = 0; r < h.q; ++r) {
      if (pred_P(e, h.q, r)) {
        pb.eps.push_back(nth_root(e, h.q, r));
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorCode::HyperArcInvalid, "shift has no p-integral q-th root");
  }
  return pb;
}

bool pulled_back_contains(const HyperArc& h, const Pullback& pb, const Point& c, const CharacterContext& ctx) {
  for (unsigned i = 0; i < h.m; ++i) {
    const CirclePoint t = chi(ctx, c[i]);
    const CirclePoint a = cp_pow(t, to_mpz(h.q));
    if (!(cp_compare(h.lo[i], a) < 0 && cp_compare(a, h.hi[i]) < 0)) return false;
    if (h.q > 1 && !(cp_mul(t, pb.eps[i]).value() < pb.bound)) return false;
  }
  return true;
}

}  // namespace

ProbeResult genericity_probe(const VarietySpec& v, const HyperArc& h, unsigned k_max, ProbePath path,
                             unsigned threads) {
  if (h.m != v.m) throw Error(ErrorCode::ArityError, "arc dimension differs from the variety");
  const bool pull = path == ProbePath::FrobeniusPullback && h.q > 1;
  const Pullback pb = pull ? make_pullback(h) : Pullback{};
  ProbeResult out;
  for (unsigned k = 1; k <= k_max; ++k) {
    const LevelContext lc = level_context(v, k);
    EnumOptions opts;
    opts.torus_only = true;
    opts.threads = threads;
    const std::size_t chunks = chunk_count(v, lc, opts);
    std::vector<std::optional<Point>> found(chunks);
    parallel_chunks(chunks, threads, [&](std::size_t c) {
      enumerate_chunk(v, lc, opts, c, [&](const Point& pt) {
        if (found[c]) return;
        if (pull) {
          if (pulled_back_contains(h, pb, pt, lc.ctx)) {
            Point a = pt;
            for (auto& x : a) x = x.pow_u(h.q);
            found[c] = std::move(a);
          }
        } else if (hyperarc_contains(h, pt, lc.ctx)) {
          found[c] = pt;
        }
      });
    });
    for (auto& f : found) {
      if (!f) continue;
      out.found = true;
      out.k = k;
      out.point = std::move(*f);
      for (const auto& x : out.point) out.chi_values.push_back(chi(lc.ctx, x));
      out.ctx = lc.ctx;
      return out;
    }
  }
  out.k = k_max;
  return out;
}

}  // namespace acfo
