#include "acfo/sums.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <algorithm>
#include <functional>
#include <optional>

#include "acfo/error.hpp"

namespace acfo {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------- exact zero

bool cyclotomic_sum_is_zero(const std::vector<u64>& counts) {
  const u64 N = counts.size();
  if (N == 0) return true;
  if (N == 1) return counts[0] == 0;
  const Factorization fac = factorize(N);
  std::vector<u64> dims;
  for (auto [r, a] : fac) dims.push_back(*checked_pow(r, a));
  // mixed-radix layout: coordinate i holds j mod dims[i]
  std::vector<u64> stride(dims.size());
  u64 acc = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    stride[i] = acc;
    acc *= dims[i];
  }
  std::vector<i64> A(N, 0);
  for (u64 j = 0; j < N; ++j) {
    if (counts[j] == 0) continue;
    u64 idx = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) idx += (j % dims[i]) * stride[i];
    A[idx] += static_cast<i64>(counts[j]);
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const u64 r = fac[i].first;
    const u64 block = dims[i] / r;  // r^{a-1}
    const u64 phi = dims[i] - block;
    for (u64 idx = 0; idx < N; ++idx) {
      const u64 x = (idx / stride[i]) % dims[i];
      if (x < phi || A[idx] == 0) continue;
      // x^{(r-1) r^{a-1} + u} = -sum_{t=0}^{r-2} x^{t r^{a-1} + u}
      const u64 u = x - phi;
      const i64 v = A[idx];
      A[idx] = 0;
      const u64 base = idx - x * stride[i];
      for (u64 t = 0; t + 1 < r; ++t) A[base + (t * block + u) * stride[i]] -= v;
    }
  }
  for (i64 v : A) {
    if (v != 0) return false;
  }
  return true;
}

namespace {

struct Neumaier {
  double sum = 0, comp = 0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

// e^{2 pi i j/N}; angles past 1/2 are folded to their conjugate so that
// j and N - j give exact conjugates.
std::pair<double, double> unit(u64 j, u64 N) {
  const bool upper = 2 * j > N;
  const u64 m = upper ? N - j : j;
  const long double a = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(m) / static_cast<long double>(N);
  const double s = static_cast<double>(std::sin(a));
  return {static_cast<double>(std::cos(a)), upper ? -s : s};
}

}  // namespace

std::complex<double> histogram_value(const std::vector<u64>& counts) {
  // j and N - j are folded together so that reflecting the histogram
  // conjugates the result exactly.
  Neumaier re, im;
  const u64 N = counts.size();
  for (u64 j = 0; 2 * j <= N; ++j) {
    const u64 up = (j == 0 || 2 * j == N) ? 0 : counts[N - j];
    const u64 lo = counts[j];
    if (lo == 0 && up == 0) continue;
    if (j == 0) {
      re.add(static_cast<double>(lo));
    } else if (2 * j == N) {
      re.add(-static_cast<double>(lo));
    } else {
      const auto [c, s] = unit(j, N);
      re.add(static_cast<double>(lo + up) * c);
      im.add((static_cast<double>(lo) - static_cast<double>(up)) * s);
    }
  }
  return {re.value(), im.value()};
}

// ---------------------------------------------------------------- sums

namespace {

using KeyFn = std::function<std::optional<u64>(const Point&)>;

// Shared driver: key(point) gives the angle numerator mod N, or nullopt to skip.
SumResult angle_sum(const VarietySpec& v, const LevelContext& lc, unsigned k, bool torus, const SumOptions& opts,
                    const KeyFn& key_for) {
  EnumOptions eo;
  eo.torus_only = torus;
  eo.threads = opts.threads;
  const std::size_t chunks = chunk_count(v, lc, eo);
  const u64 N = lc.level_order;
  constexpr u64 none = ~u64{0};
  SumResult out;
  out.k = k;
  out.modulus = N;
  out.exact = N <= opts.angle_cap;
  std::vector<std::vector<u64>> keys(chunks);
  std::vector<u64> skipped(chunks, 0), evaluated(chunks, 0), first_key(chunks, none);
  std::vector<char> mixed(chunks, 0);
  std::vector<Neumaier> re(chunks), im(chunks);
  parallel_chunks(chunks, opts.threads, [&](std::size_t c) {
    enumerate_chunk(v, lc, eo, c, [&](const Point& pt) {
      const auto key = key_for(pt);
      if (!key) {
        ++skipped[c];
        return;
      }
      ++evaluated[c];
      if (first_key[c] == none) {
        first_key[c] = *key;
      } else if (first_key[c] != *key) {
        mixed[c] = 1;
      }
      if (out.exact) {
        keys[c].push_back(*key);
      } else {
        const auto [cr, ci] = unit(*key, N);
        re[c].add(cr);
        im[c].add(ci);
      }
    });
  });
  u64 seen = none;
  bool is_mixed = false;
  u64 n_eval = 0;
  Neumaier r, i;
  for (std::size_t c = 0; c < chunks; ++c) {
    out.skipped_zero_arg += skipped[c];
    n_eval += evaluated[c];
    is_mixed = is_mixed || mixed[c];
    if (first_key[c] != none) {
      if (seen == none) {
        seen = first_key[c];
      } else if (seen != first_key[c]) {
        is_mixed = true;
      }
    }
    r.add(re[c].value());
    i.add(im[c].value());
  }
  if (out.exact) {
    out.histogram.assign(N, 0);
    for (const auto& part : keys) {
      for (u64 key : part) ++out.histogram[key];
    }
    out.exact_zero = cyclotomic_sum_is_zero(out.histogram);
    out.value = out.exact_zero ? std::complex<double>(0, 0) : histogram_value(out.histogram);
  } else {
    out.value = {r.value(), i.value()};
  }
  out.n_points = out.skipped_zero_arg + n_eval;
  out.constant = !is_mixed && seen != none;
  out.magnitude = std::abs(out.value);
  return out;
}

}  // namespace

SumResult char_sum(const VarietySpec& v, unsigned k, const IntPoly& P, const SumOptions& opts) {
  if (P.nvars() > v.m) throw Error(ErrorCode::ArityError, "P uses more variables than the variety");
  const IntPoly Pw = P.widened(v.m);
  VarietySpec w = v;
  if (opts.restrict_nonzero) w.neqs.push_back(Pw);
  const LevelContext lc = level_context(w, k);
  const Field& f = lc.ctx.field();
  const FieldPoly compiled = compile(Pw, f);
  return angle_sum(w, lc, k, false, opts, [&](const Point& pt) -> std::optional<u64> {
    const FieldElement val = eval(compiled, f, pt);
    if (val.is_zero()) return std::nullopt;
    return lc.level_dlog(val);
  });
}

SumResult monomial_sum(const VarietySpec& v, unsigned k, const IVec& l, const SumOptions& opts) {
  if (l.size() != v.m) throw Error(ErrorCode::ArityError, "exponent vector length differs from m");
  if (std::all_of(l.begin(), l.end(), [](const mpz_class& x) { return x == 0; })) {
    throw Error(ErrorCode::ZeroVectorL, "l must be nonzero");
  }
  const LevelContext lc = level_context(v, k);
  const mpz_class N = to_mpz(lc.level_order);
  std::vector<mpz_class> lr(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) lr[i] = mod_floor(l[i], N);
  return angle_sum(v, lc, k, true, opts, [&](const Point& pt) -> std::optional<u64> {
    mpz_class s = 0;
    for (std::size_t i = 0; i < pt.size(); ++i) {
      if (lr[i] != 0) s += lr[i] * to_mpz(lc.level_dlog(pt[i]));
    }
    return to_u64(mod_floor(s, N));
  });
}

// ---------------------------------------------------------------- tables

nlohmann::json SumTable::to_json() const {
  nlohmann::json rows_j = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = nlohmann::json::object();
    row["k"] = r.k;
    row["N_k"] = r.n_k;
    row["raw"] = format_double(r.raw);
    row["normalized"] = format_double(r.normalized);
    for (std::size_t i = 0; i < extra_columns.size(); ++i) row[extra_columns[i]] = r.extra.at(i);
    rows_j.push_back(std::move(row));
  }
  nlohmann::json cols = {"k", "N_k", "raw", "normalized"};
  for (const auto& c : extra_columns) cols.push_back(c);
  return {{"schema", "acfo.table/1"}, {"table", name}, {"columns", cols}, {"rows", rows_j}};
}

std::string SumTable::to_csv() const {
  std::ostringstream os;
  os << "k,N_k,raw,normalized";
  for (const auto& c : extra_columns) os << ',' << c;
  os << '\n';
  for (const auto& r : rows) {
    os << r.k << ',' << r.n_k << ',' << format_double(r.raw) << ',' << format_double(r.normalized);
    for (const auto& e : r.extra) os << ',' << e;
    os << '\n';
  }
  return os.str();
}

namespace {

// q^{k(d - 1/2)} as a double, via exact q^{kd} and a square root of q^k.
double weil_scale(u64 q, unsigned k, unsigned d) {
  mpz_class qk;
  mpz_ui_pow_ui(qk.get_mpz_t(), q, k);
  mpz_class qkd;
  mpz_pow_ui(qkd.get_mpz_t(), qk.get_mpz_t(), d);
  return qkd.get_d() / std::sqrt(qk.get_d());
}

std::string complex_part(double x) { return format_double(x); }

}  // namespace

SumTable lang_weil_table(const VarietySpec& v, unsigned d, const std::vector<unsigned>& ks, const SumOptions& opts) {
  SumTable t;
  t.name = "lang_weil";
  t.extra_columns = {"expected", "deviation", "empty"};
  const u64 q = v.q();
  for (unsigned k : ks) {
    EnumOptions eo;
    eo.threads = opts.threads;
    const u64 n = count_points(v, level_context(v, k), eo);
    mpz_class expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), q, static_cast<unsigned long>(k) * d);
    const mpz_class dev = abs(to_mpz(n) - expected);
    SumTable::Row row;
    row.k = k;
    row.n_k = n;
    row.raw = dev.get_d();
    row.normalized = row.raw / weil_scale(q, k, d);
    row.extra = {expected.get_str(), dev.get_str(), n == 0 ? "1" : "0"};
    t.rows.push_back(std::move(row));
  }
  return t;
}

SumTable weil_ratio_table(const VarietySpec& v, unsigned d, const IntPoly& P, const std::vector<unsigned>& ks,
                          const SumOptions& opts) {
  SumTable t;
  t.name = "weil_ratio";
  t.extra_columns = {"skipped", "re", "im", "exact_zero", "p_constant"};
  const u64 q = v.q();
  for (unsigned k : ks) {
    const SumResult s = char_sum(v, k, P, opts);
    SumTable::Row row;
    row.k = k;
    row.n_k = s.n_points;
    row.raw = s.magnitude;
    row.normalized = s.magnitude / weil_scale(q, k, d);
    // P constant on the evaluated points (including the all-zero case)
    const bool constant = s.constant || s.n_points == s.skipped_zero_arg;
    row.extra = {std::to_string(s.skipped_zero_arg), complex_part(s.value.real()), complex_part(s.value.imag()),
                 s.exact_zero ? "1" : "0", constant ? "1" : "0"};
    t.rows.push_back(std::move(row));
  }
  return t;
}

SumTable weyl_sums(const VarietySpec& v, const std::vector<unsigned>& ks, const std::vector<IVec>& ls,
                   const SumOptions& opts) {
  SumTable t;
  t.name = "weyl";
  t.extra_columns = {"l", "re", "im", "exact_zero"};
  for (const auto& l : ls) {
    if (std::all_of(l.begin(), l.end(), [](const mpz_class& x) { return x == 0; })) {
      throw Error(ErrorCode::ZeroVectorL, "l must be nonzero");
    }
  }
  for (unsigned k : ks) {
    for (const auto& l : ls) {
      const SumResult s = monomial_sum(v, k, l, opts);
      SumTable::Row row;
      row.k = k;
      row.n_k = s.n_points;
      row.raw = s.magnitude;
      row.normalized = s.n_points == 0 ? 0.0 : s.magnitude / static_cast<double>(s.n_points);
      std::string ltxt = "(";
      for (std::size_t i = 0; i < l.size(); ++i) ltxt += (i ? " " : "") + l[i].get_str();
      ltxt += ")";
      row.extra = {ltxt, complex_part(s.value.real()), complex_part(s.value.imag()), s.exact_zero ? "1" : "0"};
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

// ---------------------------------------------------------------- boxes

std::vector<BoxResult> box_discrepancy(const VarietySpec& v, unsigned k, const std::vector<Box>& boxes,
                                       const SumOptions& opts) {
  for (const auto& b : boxes) {
    if (b.lo.size() != v.m || b.hi.size() != v.m) throw Error(ErrorCode::BadBox, "box dimension differs from m");
    for (unsigned i = 0; i < v.m; ++i) {
      if (b.lo[i].value() >= b.hi[i].value()) throw Error(ErrorCode::BadBox, "box needs lo < hi in every coordinate");
    }
  }
  const LevelContext lc = level_context(v, k);
  EnumOptions eo;
  eo.torus_only = true;
  eo.threads = opts.threads;
  const std::size_t chunks = chunk_count(v, lc, eo);
  // exact comparison: lo < j/N < hi  <=>  lo*N < j < hi*N
  const mpz_class N = to_mpz(lc.level_order);
  std::vector<std::vector<std::pair<mpq_class, mpq_class>>> bounds;
  for (const auto& b : boxes) {
    std::vector<std::pair<mpq_class, mpq_class>> bb;
    for (unsigned i = 0; i < v.m; ++i) bb.emplace_back(b.lo[i].value() * N, b.hi[i].value() * N);
    bounds.push_back(std::move(bb));
  }
  std::vector<std::vector<u64>> counts(chunks, std::vector<u64>(boxes.size(), 0));
  std::vector<u64> totals(chunks, 0);
  parallel_chunks(chunks, opts.threads, [&](std::size_t c) {
    std::vector<mpz_class> d(v.m);
    enumerate_chunk(v, lc, eo, c, [&](const Point& pt) {
      ++totals[c];
      for (unsigned i = 0; i < v.m; ++i) d[i] = to_mpz(lc.level_dlog(pt[i]));
      for (std::size_t b = 0; b < boxes.size(); ++b) {
        bool inside = true;
        for (unsigned i = 0; i < v.m && inside; ++i) {
          inside = bounds[b][i].first < d[i] && d[i] < bounds[b][i].second;
        }
        if (inside) ++counts[c][b];
      }
    });
  });
  u64 total = 0;
  for (u64 x : totals) total += x;
  std::vector<BoxResult> out;
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    BoxResult r;
    r.n_k = total;
    for (std::size_t c = 0; c < chunks; ++c) r.count += counts[c][b];
    r.fraction = total == 0 ? mpq_class(0) : mpq_class(to_mpz(r.count), to_mpz(total));
    r.fraction.canonicalize();
    r.volume = 1;
    for (unsigned i = 0; i < v.m; ++i) r.volume *= boxes[b].hi[i].value() - boxes[b].lo[i].value();
    r.deviation = abs(r.fraction - r.volume);
    r.deviation_d = r.deviation.get_d();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace acfo
