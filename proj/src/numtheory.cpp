#include "acfo/numtheory.hpp"

#include <algorithm>
#include <numeric>

#include "acfo/error.hpp"

namespace acfo {

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : small) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : small) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    const u64 m = 128;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

Factorization factorize(u64 n) {
  std::vector<u64> primes;
  for (u64 q = 2; q < 1000 && q * q <= n; ++q) {
    while (n % q == 0) {
      primes.push_back(q);
      n /= q;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  Factorization result;
  for (u64 q : primes) {
    if (!result.empty() && result.back().first == q) {
      ++result.back().second;
    } else {
      result.emplace_back(q, 1);
    }
  }
  return result;
}

std::optional<u64> checked_pow(u64 base, unsigned exp, u64 cap) {
  u128 acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > cap) return std::nullopt;
  }
  return static_cast<u64>(acc);
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (auto [q, e] : factorize(n)) {
    const std::size_t base = out.size();
    u64 pw = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 euler_phi(u64 n) {
  u64 result = n;
  for (auto [q, e] : factorize(n)) result = result / q * (q - 1);
  return result;
}

u64 invmod(u64 a, u64 m) {
  mpz_class r;
  mpz_class am = to_mpz(a), mm = to_mpz(m);
  if (mpz_invert(r.get_mpz_t(), am.get_mpz_t(), mm.get_mpz_t()) == 0) {
    throw Error(ErrorCode::InvalidArgument, "element not invertible modulo " + std::to_string(m));
  }
  return to_u64(r);
}

u64 p_free_part(u64 n, u64 p) {
  if (p < 2) return n;
  while (n % p == 0) n /= p;
  return n;
}

unsigned valuation(const mpz_class& n, u64 p) {
  if (n == 0 || p < 2) return 0;
  mpz_class v = abs(n);
  const mpz_class pp = to_mpz(p);
  unsigned count = 0;
  while (mpz_divisible_p(v.get_mpz_t(), pp.get_mpz_t())) {
    v /= pp;
    ++count;
  }
  return count;
}

mpz_class to_mpz(u64 v) {
  mpz_class r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

mpz_class to_mpz_signed(i64 v) {
  if (v >= 0) return to_mpz(static_cast<u64>(v));
  // -(v + 1) avoids overflow at INT64_MIN
  return -to_mpz(static_cast<u64>(-(v + 1))) - 1;
}

u64 to_u64(const mpz_class& v) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
    throw Error(ErrorCode::InvalidArgument, "integer " + v.get_str() + " does not fit in 64 bits");
  }
  u64 out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

i64 to_i64(const mpz_class& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 62) {
    throw Error(ErrorCode::InvalidArgument, "integer " + v.get_str() + " does not fit in int64");
  }
  return v.get_si();
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class mod_floor(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace acfo
