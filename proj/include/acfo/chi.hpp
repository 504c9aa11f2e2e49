#pragma once

// The character chi: F_{p^L}^x -> U_(p), a -> dlog(a) / (p^L - 1), and the
// cyclotomic invariants identifying the resulting standard model.

#include <string>
#include <vector>

#include "acfo/circle.hpp"
#include "acfo/fpoly.hpp"
#include "acfo/gf.hpp"

namespace acfo {

class CharacterContext {
 public:
  explicit CharacterContext(Field f) : field_(std::move(f)) {}
  const Field& field() const { return field_; }
  u64 p() const { return field_.p(); }

 private:
  Field field_;
};

CirclePoint chi(const CharacterContext& ctx, const FieldElement& a);
/// G^{num (p^L - 1) / den}; NotRepresentedAtThisLevel when den does not divide p^L - 1.
FieldElement chi_inv(const CharacterContext& ctx, const CirclePoint& t);
bool order_lt(const CharacterContext& ctx, const FieldElement& a, const FieldElement& b);
bool pred_P_field(const CharacterContext& ctx, const FieldElement& a, u64 n, u64 r);

struct CyclotomicInvariant {
  u64 p = 0;
  unsigned n = 0;
  fp::Poly psi;  // monic, degree n, low to high

  std::string to_string() const;
};

/// Minimal polynomial of a_n = chi_inv(1 / (p^n - 1)).
CyclotomicInvariant cyclotomic_invariant(const CharacterContext& ctx, unsigned n);

struct CoherenceEntry {
  unsigned n = 0;
  unsigned n2 = 0;  // n == n2 marks the single-level checks
  bool ok = false;
  std::string message;
};

struct CoherenceReport {
  std::vector<CoherenceEntry> entries;
  bool ok() const;
};

/// Per level: Psi_n is irreducible of degree n with primitive roots. Per pair
/// n | n': some root a' of Psi_{n'} has a'^{(p^{n'}-1)/(p^n-1)} a root of Psi_n.
CoherenceReport verify_coherent_sequence(const std::vector<CyclotomicInvariant>& invariants);

/// Character on F_{p^L}, L the largest level, whose generator is the least
/// root of Psi_L compatible with every level.
CharacterContext build_from_invariants(u64 p, const std::vector<CyclotomicInvariant>& invariants);

nlohmann::json invariants_to_json(const std::vector<CyclotomicInvariant>& invariants);
std::vector<CyclotomicInvariant> invariants_from_json(const nlohmann::json& j);

}  // namespace acfo
