#pragma once

// Satisfiability of special sentences in some model of ACFO_p: for each
// pattern theta in Theta_P, a root-evaluation check on the field side and
// the group solver on the circle side.

#include <optional>

#include "acfo/depattern.hpp"
#include "acfo/formula.hpp"
#include "acfo/group_solver.hpp"

namespace acfo {

struct AcfResult {
  bool sat = false;
  std::vector<std::size_t> perm;   // z_j = roots[perm[j]]
  std::vector<std::string> roots;  // printed assignment
};

/// Orderings of the roots whose pattern is theta, with phi_r evaluated exactly.
AcfResult acf_check(const DependencePattern& theta, const RootSystem& rs, const Formula& phi_r, unsigned k);

struct DecideOptions {
  unsigned threads = 1;
  SolverLimits limits;
  FieldLimits field_limits;
};

struct Verdict {
  bool satisfiable = false;
  std::optional<std::size_t> theta_index;
  std::optional<DependencePattern> theta;
  std::size_t theta_count = 0;
  std::vector<std::string> field_witness;
  std::vector<CirclePoint> circle_witness;
  u64 p = 0;
  unsigned splitting_degree = 0;

  nlohmann::json to_json() const;
};

/// p prime, or p = 0 for polynomials with linear and cyclotomic factors only.
Verdict decide_special(const SpecialSentence& s, u64 p, const DecideOptions& opts = {});

/// Truth in the standard models F_{p^L} with the default generator, for
/// levels L = s, 2s, ..., max_mult * s: a brute-force search, not a decision
/// procedure.
struct StandardModelHit {
  unsigned level = 0;
  std::vector<std::string> roots;
  std::vector<CirclePoint> chi_values;
};

std::optional<StandardModelHit> standard_model_search(const SpecialSentence& s, u64 p, unsigned max_mult = 6,
                                                      u64 max_order = u64{1} << 40);

}  // namespace acfo
