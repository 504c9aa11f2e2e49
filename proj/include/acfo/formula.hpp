#pragma once

// Special sentences: exists z1..zk : roots(P) ; ring: phi_r ; mult: phi_m.
// Terms and formulas keep their written shape so printing reproduces the
// input up to whitespace.

#include <memory>
#include <string>
#include <vector>

#include "acfo/chi.hpp"
#include "acfo/lattice.hpp"
#include "acfo/polynomial.hpp"

namespace acfo {

struct Term {
  enum class Kind { Num, Var, Add, Sub, Mul, Neg, Pow, Paren };
  Kind kind = Kind::Num;
  mpz_class value;  // Num literal, or the exponent of Pow
  unsigned var = 0; // 1-based; 0 stands for t in the roots polynomial
  std::vector<Term> kids;
};

struct MultAtom {
  enum class Op { Lt, Eq, Ne, Pred };
  Op op = Op::Eq;
  Term lhs, rhs;  // Pred uses lhs only
  mpz_class r, n;
};

struct RingAtom {
  bool equal = true;  // '=' or '!='
  Term lhs, rhs;
};

struct Formula {
  enum class Kind { True, False, Ring, Mult, Not, And, Or, Paren };
  Kind kind = Kind::True;
  RingAtom ring;
  MultAtom mult;
  std::vector<Formula> kids;
};

struct SpecialSentence {
  unsigned k = 0;
  Term roots;
  Formula ring;
  Formula mult;

  /// Ascending integer coefficients of P(t).
  std::vector<mpz_class> P() const;
  std::string to_string() const;
};

SpecialSentence parse_sentence(const std::string& text);
/// Drops all whitespace; print(parse(s)) == normalize_sentence(s).
std::string normalize_sentence(const std::string& text);

std::string term_to_string(const Term& t, const std::string& var_prefix);
std::string formula_to_string(const Formula& f);

/// Ring term as a polynomial in z1..zk.
IntPoly term_poly(const Term& t, unsigned k);
/// Multiplicative term as an exponent vector over z1..zk.
IVec term_exponents(const Term& t, unsigned k);

/// A literal of the multiplicative part after negation normal form. Only
/// Pred atoms stay negated; order and equality negations are expanded.
struct MultLiteral {
  MultAtom::Op op = MultAtom::Op::Eq;
  IVec lhs, rhs;  // exponent vectors; Pred uses lhs
  mpz_class r, n;
  bool negated = false;
};

using Conjunction = std::vector<MultLiteral>;

/// Disjunctive normal form; throws SizeCapExceeded past max_disjuncts.
std::vector<Conjunction> mult_dnf(const Formula& f, unsigned k, std::size_t max_disjuncts = 4096);

/// phi_r at a root assignment.
bool eval_ring(const Formula& f, unsigned k, const Field& field, const std::vector<FieldElement>& z);
/// phi_m at circle values t_j = chi(z_j).
bool eval_mult(const Formula& f, unsigned k, const std::vector<CirclePoint>& t);
bool eval_literal(const MultLiteral& l, const std::vector<CirclePoint>& t);
/// sum e_j t_j in U.
CirclePoint monomial_value(const IVec& e, const std::vector<CirclePoint>& t);

}  // namespace acfo
