#pragma once

// Multiplicative dependence patterns of root tuples and the sets Theta_P of
// patterns over all orderings of the nonzero roots of P.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acfo/chi.hpp"

namespace acfo {

/// z_i^{l_i} ... z_1^{l_1} = z_i^{l'_i} ... z_1^{l'_1}; index 0 holds z_1.
struct Relation {
  std::vector<mpz_class> left, right;
  bool operator==(const Relation&) const = default;
  bool operator<(const Relation& o) const;
};

struct DependencePattern {
  unsigned k = 0;
  std::map<unsigned, Relation> relations;  // keyed by i (1-based)
  /// Tie-break among free coordinates came from a bounded coset search.
  bool bounded_search = false;

  bool operator==(const DependencePattern& o) const { return k == o.k && relations == o.relations; }
  bool operator<(const DependencePattern& o) const;
  /// "z2^1 = z1^2 & z1^3 = 1", highest index first; "true" when empty.
  std::string to_string() const;
};

nlohmann::json to_json(const DependencePattern& d);

/// Nonzero algebraic number in the restricted characteristic-0 setting:
/// sign * prod p^e * (root of unity exp(2 pi i t)).
struct Char0Element {
  int sign = 1;
  std::map<mpz_class, mpz_class> prime_exps;
  CirclePoint root = CirclePoint(0, 1, 0);

  static Char0Element from_rational(const mpq_class& r);
  static Char0Element root_of_unity(u64 j, u64 n);
  /// Torsion part with the sign folded in.
  CirclePoint torsion() const;
  bool operator==(const Char0Element& o) const;
  std::string to_string() const;
};

DependencePattern dependence_pattern(const CharacterContext& ctx, const std::vector<FieldElement>& c);
DependencePattern dependence_pattern(const std::vector<Char0Element>& c);

/// Distinct nonzero roots of P, either in the splitting field over F_p or,
/// for p = 0, as Char0Elements.
struct RootSystem {
  u64 p = 0;
  std::vector<mpz_class> P;  // ascending coefficients
  unsigned splitting_degree = 0;
  std::optional<CharacterContext> ctx;
  std::vector<FieldElement> roots;
  std::vector<Char0Element> roots0;

  std::size_t size() const { return p == 0 ? roots0.size() : roots.size(); }
  /// Pattern of the tuple (roots[perm[0]], ..., roots[perm[k-1]]).
  DependencePattern pattern(const std::vector<std::size_t>& perm) const;
  std::vector<std::string> root_strings() const;
};

/// Phi_n, ascending coefficients.
std::vector<mpq_class> cyclotomic_polynomial(u64 n);

RootSystem root_system_charp(const std::vector<mpz_class>& P, u64 p, const FieldLimits& limits = {});
RootSystem root_system_char0(const std::vector<mpz_class>& P);

struct ThetaSet {
  std::vector<mpz_class> P;
  u64 p = 0;
  unsigned splitting_degree = 0;
  std::vector<std::string> roots;
  std::vector<DependencePattern> patterns;  // sorted, unique
};

/// Largest root count for which all k! orderings are enumerated.
inline constexpr std::size_t kMaxThetaRoots = 9;

ThetaSet theta_from_roots(const RootSystem& rs);
ThetaSet theta_charp(const std::vector<mpz_class>& P, u64 p, const FieldLimits& limits = {});
ThetaSet theta_char0_restricted(const std::vector<mpz_class>& P);

nlohmann::json to_json(const ThetaSet& t);

}  // namespace acfo
