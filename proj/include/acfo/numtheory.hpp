#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace acfo {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Prime-power factorization, primes ascending.
using Factorization = std::vector<std::pair<u64, unsigned>>;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 powmod(u64 base, u64 exp, u64 m);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);
/// Trial division up to a small bound followed by Pollard rho (Brent).
Factorization factorize(u64 n);

/// base^exp, or nullopt when the result does not fit below `cap`.
std::optional<u64> checked_pow(u64 base, unsigned exp, u64 cap = ~u64{0});

u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);
std::vector<u64> divisors(u64 n);
u64 euler_phi(u64 n);

/// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);

/// Largest divisor of n coprime to p (p = 0 leaves n unchanged).
u64 p_free_part(u64 n, u64 p);

/// Number of times p divides n (n > 0).
unsigned valuation(const mpz_class& n, u64 p);

mpz_class to_mpz(u64 v);
mpz_class to_mpz_signed(i64 v);
/// Throws InvalidArgument when the value does not fit.
u64 to_u64(const mpz_class& v);
i64 to_i64(const mpz_class& v);

/// Floor division for arbitrary-precision integers.
mpz_class floor_div(const mpz_class& a, const mpz_class& b);
/// Nonnegative residue of a modulo m (m > 0).
mpz_class mod_floor(const mpz_class& a, const mpz_class& m);

}  // namespace acfo
