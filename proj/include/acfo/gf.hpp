#pragma once

// Exact arithmetic in F_{p^L} = F_p[x]/(f) with a deterministic choice of
// modulus and multiplicative generator.

#include <compare>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "acfo/numtheory.hpp"
#include "json.hpp"

namespace acfo {

struct FieldLimits {
  /// Upper bound on p^L - 1.
  u64 max_order = u64{1} << 48;
  /// Largest baby-step table a single prime factor may require.
  u64 bsgs_budget = u64{1} << 24;
  /// Fields with at most this many units get full log/exp tables (built lazily).
  u64 table_cap = u64{1} << 20;
};

namespace detail {

struct FieldData {
  u64 p = 0;
  unsigned L = 0;
  std::vector<u64> modulus;    // monic, size L + 1, low to high
  std::vector<u64> generator;  // size L
  u64 size = 0;                // p^L
  u64 order = 0;               // p^L - 1
  Factorization order_factors;
  FieldLimits limits;

  mutable std::once_flag tables_once;
  mutable std::vector<std::uint32_t> log_of_index;
  mutable std::vector<std::uint32_t> index_of_log;

  void mul(const u64* a, const u64* b, u64* out) const;
  u64 index_of(const std::vector<u64>& c) const;
  std::vector<u64> coeffs_of(u64 index) const;
  bool has_tables() const { return order <= limits.table_cap; }
  void build_tables() const;
};

}  // namespace detail

class FieldElement;

/// Immutable, shareable handle to one finite field F_{p^L}. Copies are cheap
/// and refer to the same context; two handles are the same field iff they
/// share the context.
class Field {
 public:
  /// Lexicographically least monic irreducible modulus and least primitive
  /// generator, coefficient sequences compared from the constant term up.
  static Field create(u64 p, unsigned L, const FieldLimits& limits = {});
  static Field create(const mpz_class& p, unsigned L, const FieldLimits& limits = {});
  /// Explicit modulus and generator; both are validated.
  static Field with_generator(u64 p, std::vector<u64> modulus, std::vector<u64> generator,
                              const FieldLimits& limits = {});

  u64 p() const { return d_->p; }
  unsigned degree() const { return d_->L; }
  u64 size() const { return d_->size; }
  /// p^L - 1, the order of the unit group.
  u64 order() const { return d_->order; }
  const std::vector<u64>& modulus() const { return d_->modulus; }
  const Factorization& order_factorization() const { return d_->order_factors; }
  const FieldLimits& limits() const { return d_->limits; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement generator() const;
  FieldElement from_int(i64 v) const;
  FieldElement from_coeffs(std::vector<u64> coeffs) const;
  /// Enumeration index: coefficients read as base-p digits, constant term most
  /// significant. Index order is the coefficient-lexicographic order.
  FieldElement from_index(u64 index) const;

  /// All elements in index order.
  std::vector<FieldElement> elements() const;
  /// F_{p^m} inside this field, in index order.
  std::vector<FieldElement> subfield_elements(unsigned m) const;
  /// G^{(p^L-1)/(p^m-1)}, the generator of F_{p^m}^x induced by G.
  FieldElement level_generator(unsigned m) const;
  /// p^m - 1 for m | L.
  u64 level_order(unsigned m) const;

  bool operator==(const Field& other) const { return d_ == other.d_; }

  const std::shared_ptr<const detail::FieldData>& data() const { return d_; }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  friend class FieldElement;
  std::shared_ptr<const detail::FieldData> d_;
};

class FieldElement {
 public:
  FieldElement() = default;

  Field field() const { return Field(ctx_); }
  const std::vector<u64>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  u64 index() const { return ctx_->index_of(c_); }
  /// True when the element lies in the prime field.
  bool in_prime_field() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.c_ == b.c_; }
  /// Index order.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b);

  FieldElement inverse() const;
  FieldElement pow(i64 e) const;
  FieldElement pow_u(u64 e) const;
  FieldElement pow_mpz(const mpz_class& e) const;
  /// a^{p^j}
  FieldElement frobenius(u64 j) const;

  /// Polynomial notation in x, e.g. "x^2 + 2*x + 1"; prime-field elements print as integers.
  std::string to_string() const;

 private:
  FieldElement(std::shared_ptr<const detail::FieldData> ctx, std::vector<u64> c)
      : ctx_(std::move(ctx)), c_(std::move(c)) {}
  void check_same(const FieldElement& o) const;
  friend class Field;

  std::shared_ptr<const detail::FieldData> ctx_;
  std::vector<u64> c_;
};

enum class FieldOp { Add, Sub, Mul, Div, Pow, Frobenius };

/// Dispatching form of the element operations; `exponent` is used by Pow and
/// Frobenius only.
FieldElement elem_arith(const FieldElement& a, const FieldElement& b, FieldOp op, i64 exponent = 0);

/// Discrete logarithm base the field generator, in [0, p^L - 1).
u64 dlog(const FieldElement& a);
/// Pohlig-Hellman with baby-step/giant-step per prime factor; ignores tables.
u64 dlog_pohlig_hellman(const FieldElement& a);
/// Multiplicative order of a nonzero element.
u64 element_order(const FieldElement& a);

/// a^{p^m} = a, for m | L.
bool subfield_test(const FieldElement& a, unsigned m);

/// Result of moving to a larger ambient degree. `root` is the image of x under
/// the embedding F_{p^L} -> F_{p^{L'}}.
struct AmbientExtension {
  Field base;
  Field field;
  FieldElement root;

  FieldElement embed(const FieldElement& a) const;
};

/// New context of degree L' (a multiple of L) whose generator G' satisfies
/// G'^{(p^{L'}-1)/(p^L-1)} = embed(G).
AmbientExtension extend_ambient(const Field& base, unsigned new_degree);

nlohmann::json field_to_json(const Field& f);
Field field_from_json(const nlohmann::json& j, const FieldLimits& limits = {});

}  // namespace acfo
