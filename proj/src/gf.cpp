#include "acfo/gf.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "acfo/error.hpp"
#include "acfo/fpoly.hpp"

namespace acfo {

namespace detail {

void FieldData::mul(const u64* a, const u64* b, u64* out) const {
  const unsigned len = 2 * L - 1;
  std::array<u128, 128> prod;
  std::fill_n(prod.begin(), len, u128{0});
  for (unsigned i = 0; i < L; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < L; ++j) prod[i + j] += static_cast<u128>(a[i]) * b[j];
    // keep the accumulators far from overflow for wide primes
    if (p >= (u64{1} << 32)) {
      for (unsigned j = 0; j < L; ++j) prod[i + j] %= p;
    }
  }
  std::array<u64, 128> r;
  for (unsigned i = 0; i < len; ++i) r[i] = static_cast<u64>(prod[i] % p);
  for (unsigned i = len; i-- > L;) {
    const u64 t = r[i];
    if (t == 0) continue;
    r[i] = 0;
    for (unsigned j = 0; j < L; ++j) {
      const u64 sub = mulmod(t, modulus[j], p);
      u64& dst = r[i - L + j];
      dst = dst >= sub ? dst - sub : dst + (p - sub);
    }
  }
  std::copy(r.begin(), r.begin() + L, out);
}

u64 FieldData::index_of(const std::vector<u64>& c) const {
  u64 idx = 0;
  for (unsigned i = 0; i < L; ++i) idx = idx * p + c[i];
  return idx;
}

std::vector<u64> FieldData::coeffs_of(u64 index) const {
  std::vector<u64> c(L);
  for (unsigned i = L; i-- > 0;) {
    c[i] = index % p;
    index /= p;
  }
  return c;
}

void FieldData::build_tables() const {
  std::call_once(tables_once, [this] {
    log_of_index.assign(size, 0xffffffffu);
    index_of_log.assign(order, 0);
    std::vector<u64> cur(L, 0), next(L);
    cur[0] = 1;
    for (u64 i = 0; i < order; ++i) {
      const u64 idx = index_of(cur);
      index_of_log[i] = static_cast<std::uint32_t>(idx);
      log_of_index[idx] = static_cast<std::uint32_t>(i);
      mul(cur.data(), generator.data(), next.data());
      cur.swap(next);
    }
  });
}

}  // namespace detail

namespace {

using detail::FieldData;

std::vector<u64> raw_pow(const FieldData& d, std::vector<u64> base, u64 e) {
  std::vector<u64> result(d.L, 0), tmp(d.L);
  result[0] = 1;
  while (e) {
    if (e & 1) {
      d.mul(result.data(), base.data(), tmp.data());
      result.swap(tmp);
    }
    e >>= 1;
    if (e) {
      d.mul(base.data(), base.data(), tmp.data());
      base.swap(tmp);
    }
  }
  return result;
}

bool raw_is_one(const std::vector<u64>& c) {
  if (c.empty() || c[0] != 1) return false;
  return std::all_of(c.begin() + 1, c.end(), [](u64 v) { return v == 0; });
}

bool raw_is_primitive(const FieldData& d, const std::vector<u64>& c) {
  if (std::all_of(c.begin(), c.end(), [](u64 v) { return v == 0; })) return false;
  for (auto [q, e] : d.order_factors) {
    if (raw_is_one(raw_pow(d, c, d.order / q))) return false;
  }
  return true;
}

std::shared_ptr<FieldData> make_data(u64 p, unsigned L, const FieldLimits& limits) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (L == 0) throw Error(ErrorCode::InvalidArgument, "field degree must be positive");
  if (L > 64) throw Error(ErrorCode::SizeCapExceeded, "degree above 64");
  auto size = checked_pow(p, L, limits.max_order == ~u64{0} ? ~u64{0} : limits.max_order + 1);
  if (!size) {
    throw Error(ErrorCode::SizeCapExceeded,
                std::to_string(p) + "^" + std::to_string(L) + " - 1 exceeds the configured cap");
  }
  auto d = std::make_shared<FieldData>();
  d->p = p;
  d->L = L;
  d->size = *size;
  d->order = *size - 1;
  d->limits = limits;
  d->order_factors = factorize(d->order);
  if (!d->has_tables()) {
    for (auto [q, e] : d->order_factors) {
      const auto baby = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(q))));
      if (baby > limits.bsgs_budget) {
        throw Error(ErrorCode::SizeCapExceeded,
                    "prime factor " + std::to_string(q) + " of the unit group exceeds the dlog budget");
      }
    }
  }
  return d;
}

}  // namespace

// ---------------------------------------------------------------- Field

Field Field::create(u64 p, unsigned L, const FieldLimits& limits) {
  auto d = make_data(p, L, limits);
  if (L == 1) {
    d->modulus = {0, 1};
  } else {
    // a zero constant term makes x a factor, so start at c0 = 1
    for (u64 idx = d->size / p;; ++idx) {
      std::vector<u64> f = d->coeffs_of(idx);
      f.push_back(1);
      if (fp::is_irreducible(f, p)) {
        d->modulus = std::move(f);
        break;
      }
    }
  }
  for (u64 idx = 1; idx < d->size; ++idx) {
    std::vector<u64> c = d->coeffs_of(idx);
    if (raw_is_primitive(*d, c)) {
      d->generator = std::move(c);
      break;
    }
  }
  return Field(std::move(d));
}

Field Field::create(const mpz_class& p, unsigned L, const FieldLimits& limits) {
  if (p < 2 || mpz_sizeinbase(p.get_mpz_t(), 2) > 62) {
    if (p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
      throw Error(ErrorCode::NotPrime, p.get_str() + " is not prime");
    }
    if (p < 2) throw Error(ErrorCode::NotPrime, p.get_str() + " is not prime");
    throw Error(ErrorCode::SizeCapExceeded, "characteristic " + p.get_str() + " exceeds the field size cap");
  }
  return create(to_u64(p), L, limits);
}

Field Field::with_generator(u64 p, std::vector<u64> modulus, std::vector<u64> generator,
                            const FieldLimits& limits) {
  fp::trim(modulus);
  if (modulus.size() < 2) throw Error(ErrorCode::InvalidArgument, "modulus must have positive degree");
  const auto L = static_cast<unsigned>(modulus.size() - 1);
  auto d = make_data(p, L, limits);
  for (u64& c : modulus) {
    if (c >= p) throw Error(ErrorCode::InvalidArgument, "modulus coefficient out of range");
  }
  if (modulus.back() != 1) throw Error(ErrorCode::InvalidArgument, "modulus must be monic");
  if (!fp::is_irreducible(modulus, p)) throw Error(ErrorCode::InvalidArgument, "modulus is reducible");
  generator.resize(L, 0);
  for (u64 c : generator) {
    if (c >= p) throw Error(ErrorCode::InvalidArgument, "generator coefficient out of range");
  }
  d->modulus = std::move(modulus);
  if (!raw_is_primitive(*d, generator)) {
    throw Error(ErrorCode::InvalidArgument, "generator is not primitive");
  }
  d->generator = std::move(generator);
  return Field(std::move(d));
}

FieldElement Field::zero() const { return FieldElement(d_, std::vector<u64>(d_->L, 0)); }

FieldElement Field::one() const {
  std::vector<u64> c(d_->L, 0);
  c[0] = 1;
  return FieldElement(d_, std::move(c));
}

FieldElement Field::generator() const { return FieldElement(d_, d_->generator); }

FieldElement Field::from_int(i64 v) const {
  const i64 p = static_cast<i64>(d_->p);
  i64 r = v % p;
  if (r < 0) r += p;
  std::vector<u64> c(d_->L, 0);
  c[0] = static_cast<u64>(r);
  return FieldElement(d_, std::move(c));
}

FieldElement Field::from_coeffs(std::vector<u64> coeffs) const {
  if (coeffs.size() > d_->L) {
    throw Error(ErrorCode::InvalidArgument, "too many coefficients for degree " + std::to_string(d_->L));
  }
  coeffs.resize(d_->L, 0);
  for (u64& c : coeffs) c %= d_->p;
  return FieldElement(d_, std::move(coeffs));
}

FieldElement Field::from_index(u64 index) const {
  if (index >= d_->size) throw Error(ErrorCode::InvalidArgument, "element index out of range");
  return FieldElement(d_, d_->coeffs_of(index));
}

std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out;
  out.reserve(d_->size);
  for (u64 i = 0; i < d_->size; ++i) out.push_back(from_index(i));
  return out;
}

u64 Field::level_order(unsigned m) const {
  if (m == 0 || d_->L % m != 0) {
    throw Error(ErrorCode::NotADivisor, std::to_string(m) + " does not divide " + std::to_string(d_->L));
  }
  return *checked_pow(d_->p, m) - 1;
}

FieldElement Field::level_generator(unsigned m) const {
  const u64 sub = level_order(m);
  return generator().pow_u(d_->order / sub);
}

std::vector<FieldElement> Field::subfield_elements(unsigned m) const {
  const u64 sub = level_order(m);
  const FieldElement g = level_generator(m);
  std::vector<FieldElement> out;
  out.reserve(sub + 1);
  out.push_back(zero());
  FieldElement cur = one();
  for (u64 j = 0; j < sub; ++j) {
    out.push_back(cur);
    cur *= g;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- FieldElement

void FieldElement::check_same(const FieldElement& o) const {
  if (!ctx_ || ctx_ != o.ctx_) throw Error(ErrorCode::ContextMismatch, "elements from different fields");
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
}

bool FieldElement::is_one() const { return raw_is_one(c_); }

bool FieldElement::in_prime_field() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](u64 v) { return v == 0; });
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same(o);
  const u64 p = ctx_->p;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const u64 s = c_[i] + o.c_[i];
    c_[i] = s >= p ? s - p : s;
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_same(o);
  const u64 p = ctx_->p;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + (p - o.c_[i]);
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same(o);
  std::vector<u64> out(ctx_->L);
  ctx_->mul(c_.data(), o.c_.data(), out.data());
  c_.swap(out);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  check_same(o);
  return *this *= o.inverse();
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  const u64 p = ctx_->p;
  for (u64& v : r.c_) v = v == 0 ? 0 : p - v;
  return r;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
  // coefficient-lexicographic, constant term first
  return a.c_ <=> b.c_;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return pow_u(ctx_->order - 1);
}

FieldElement FieldElement::pow_u(u64 e) const { return FieldElement(ctx_, raw_pow(*ctx_, c_, e)); }

FieldElement FieldElement::pow(i64 e) const {
  if (e >= 0) return pow_u(static_cast<u64>(e));
  // -(e + 1) + 1 avoids overflow at INT64_MIN
  return inverse().pow_u(static_cast<u64>(-(e + 1)) + 1);
}

FieldElement FieldElement::pow_mpz(const mpz_class& e) const {
  if (is_zero()) {
    if (e < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return e == 0 ? Field(ctx_).one() : *this;
  }
  return pow_u(to_u64(mod_floor(e, to_mpz(ctx_->order))));
}

FieldElement FieldElement::frobenius(u64 j) const {
  FieldElement r = *this;
  for (u64 i = 0; i < j % ctx_->L; ++i) r = r.pow_u(ctx_->p);
  return r;
}

std::string FieldElement::to_string() const {
  if (!ctx_) return "<null>";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const u64 c = c_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

FieldElement elem_arith(const FieldElement& a, const FieldElement& b, FieldOp op, i64 exponent) {
  switch (op) {
    case FieldOp::Add: return a + b;
    case FieldOp::Sub: return a - b;
    case FieldOp::Mul: return a * b;
    case FieldOp::Div:
      if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
      return a / b;
    case FieldOp::Pow: return a.pow(exponent);
    case FieldOp::Frobenius:
      if (exponent < 0) throw Error(ErrorCode::InvalidArgument, "negative Frobenius index");
      return a.frobenius(static_cast<u64>(exponent));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown field operation");
}

// ---------------------------------------------------------------- dlog

namespace {

u64 bsgs(const FieldElement& gamma, const FieldElement& h, u64 ell) {
  const auto m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(ell))));
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  FieldElement cur = gamma.field().one();
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur.index(), j);
    cur *= gamma;
  }
  const FieldElement giant = gamma.pow_u(m).inverse();
  FieldElement y = h;
  for (u64 i = 0; i <= m; ++i) {
    if (auto it = baby.find(y.index()); it != baby.end()) return (i * m + it->second) % ell;
    y *= giant;
  }
  throw Error(ErrorCode::InvalidArgument, "baby-step giant-step failed; element outside subgroup");
}

}  // namespace

u64 dlog_pohlig_hellman(const FieldElement& a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroArgument, "dlog of zero");
  const Field f = a.field();
  const u64 order = f.order();
  const FieldElement G = f.generator();
  mpz_class x = 0, modulus = 1;
  for (auto [ell, e] : f.order_factorization()) {
    const u64 ne = *checked_pow(ell, e);
    const FieldElement gi = G.pow_u(order / ne);
    const FieldElement hi = a.pow_u(order / ne);
    const FieldElement gamma = gi.pow_u(ne / ell);
    const FieldElement gi_inv = gi.inverse();
    u64 xi = 0, ellk = 1;
    for (unsigned k = 0; k < e; ++k) {
      const FieldElement hk = (gi_inv.pow_u(xi) * hi).pow_u(ne / ellk / ell);
      const u64 dk = bsgs(gamma, hk, ell);
      xi += dk * ellk;
      ellk *= ell;
    }
    // CRT merge
    const mpz_class nem = to_mpz(ne);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), mpz_class(modulus % nem).get_mpz_t(), nem.get_mpz_t());
    const mpz_class t = mod_floor((to_mpz(xi) - x) * inv, nem);
    x += modulus * t;
    modulus *= nem;
  }
  return to_u64(mod_floor(x, to_mpz(order)));
}

u64 dlog(const FieldElement& a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroArgument, "dlog of zero");
  const auto& d = *a.field().data();
  if (d.has_tables()) {
    d.build_tables();
    return d.log_of_index[a.index()];
  }
  return dlog_pohlig_hellman(a);
}

u64 element_order(const FieldElement& a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroArgument, "order of zero");
  const Field f = a.field();
  u64 ord = f.order();
  for (auto [q, e] : f.order_factorization()) {
    for (unsigned i = 0; i < e && a.pow_u(ord / q).is_one(); ++i) ord /= q;
  }
  return ord;
}

bool subfield_test(const FieldElement& a, unsigned m) {
  const Field f = a.field();
  if (m == 0 || f.degree() % m != 0) {
    throw Error(ErrorCode::NotADivisor, std::to_string(m) + " does not divide " + std::to_string(f.degree()));
  }
  return a.frobenius(m) == a;
}

// ---------------------------------------------------------------- extension

FieldElement AmbientExtension::embed(const FieldElement& a) const {
  if (!(a.field() == base)) throw Error(ErrorCode::ContextMismatch, "element not from the base field");
  FieldElement acc = field.zero();
  FieldElement pw = field.one();
  for (u64 c : a.coeffs()) {
    if (c) acc += field.from_int(static_cast<i64>(c)) * pw;
    pw *= root;
  }
  return acc;
}

AmbientExtension extend_ambient(const Field& base, unsigned new_degree) {
  const unsigned L = base.degree();
  if (new_degree == 0 || new_degree % L != 0) {
    throw Error(ErrorCode::NotAMultiple,
                std::to_string(new_degree) + " is not a multiple of " + std::to_string(L));
  }
  if (new_degree == L) {
    FieldElement x = L == 1 ? base.zero() : base.from_coeffs({0, 1});
    return {base, base, x};
  }
  const Field target = Field::create(base.p(), new_degree, base.limits());
  const auto roots = fpoly::roots_in_subfield(target, fpoly::lift(target, base.modulus()), new_degree);
  if (roots.empty()) throw Error(ErrorCode::CoherentExtensionSearchExhausted, "modulus has no root");
  AmbientExtension via{base, target, roots.front()};
  const FieldElement image = via.embed(base.generator());
  const u64 n_old = base.order(), n_new = target.order();
  const u64 k = n_new / n_old;
  const u64 s = dlog(image);
  if (s % k != 0) throw Error(ErrorCode::CoherentExtensionSearchExhausted, "embedded generator has wrong order");
  const u64 s0 = s / k;
  const FieldElement H = target.generator();
  for (u64 j = 0; j < k; ++j) {
    const u64 x = s0 + j * n_old;
    if (gcd_u64(x, n_new) != 1) continue;
    const FieldElement g_new = H.pow_u(x);
    Field field = Field::with_generator(base.p(), target.modulus(), g_new.coeffs(), base.limits());
    return {base, field, field.from_coeffs(roots.front().coeffs())};
  }
  throw Error(ErrorCode::CoherentExtensionSearchExhausted, "no primitive lift of the base generator");
}

// ---------------------------------------------------------------- JSON

nlohmann::json field_to_json(const Field& f) {
  return {{"schema", "acfo.field/1"},
          {"p", f.p()},
          {"L", f.degree()},
          {"modulus", f.modulus()},
          {"generator", f.generator().coeffs()}};
}

Field field_from_json(const nlohmann::json& j, const FieldLimits& limits) {
  try {
    Field f = Field::with_generator(j.at("p").get<u64>(), j.at("modulus").get<std::vector<u64>>(),
                                    j.at("generator").get<std::vector<u64>>(), limits);
    if (j.contains("L") && j.at("L").get<unsigned>() != f.degree()) {
      throw Error(ErrorCode::InvalidArgument, "L disagrees with the modulus degree");
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed field JSON: ") + e.what());
  }
}

}  // namespace acfo
