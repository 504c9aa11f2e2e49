#pragma once

// Feasibility of multiplicative constraint systems in U_(p): congruences
// mod 1, order atoms and P[r,n] atoms on unknowns t_1..t_k.

#include <vector>

#include "acfo/depattern.hpp"
#include "acfo/formula.hpp"

namespace acfo {

/// c . t = b (mod 1), with b p-integral.
struct Congruence {
  IVec c;
  mpq_class b = 0;
};

struct GroupConstraintSystem {
  unsigned k = 0;
  u64 p = 0;
  std::vector<Congruence> congruences;
  std::vector<MultLiteral> literals;  // one DNF conjunction
  /// Adds t_1 < ... < t_k.
  bool ordered = false;
};

struct SolverLimits {
  u64 max_branches = u64{1} << 22;
  /// Cap on residue vectors tried for P[r,n] atoms.
  u64 residue_budget = u64{1} << 22;
  std::size_t max_disjuncts = 4096;
};

struct TmResult {
  bool sat = false;
  std::vector<CirclePoint> witness;
  std::size_t disjunct = 0;  // index of the satisfied DNF disjunct
  u64 branches = 0;
};

TmResult solve_system(const GroupConstraintSystem& s, const SolverLimits& limits = {});
/// Direct evaluation of every constraint at t.
bool check_witness(const GroupConstraintSystem& s, const std::vector<CirclePoint>& t);

/// Congruences sum (l_j - l'_j) t_j = 0 (mod 1), one per relation of theta.
std::vector<Congruence> theta_congruences(const DependencePattern& theta, unsigned k);

/// theta, the order prefix and phi_m, each DNF disjunct solved in turn.
TmResult tm_check(const DependencePattern& theta, unsigned k, const Formula& phi_m, u64 p,
                  const SolverLimits& limits = {});

}  // namespace acfo
