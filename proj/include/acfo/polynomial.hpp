#pragma once

// Sparse multivariate integer polynomials, their text syntax, and the
// compiled form used to evaluate them over a finite field.

#include <map>
#include <string>
#include <vector>

#include "acfo/fpoly.hpp"
#include "acfo/gf.hpp"

namespace acfo {

class IntPoly {
 public:
  using Exps = std::vector<unsigned>;

  explicit IntPoly(unsigned m = 0) : m_(m) {}
  static IntPoly constant(unsigned m, const mpz_class& c);
  static IntPoly variable(unsigned m, unsigned index);

  unsigned nvars() const { return m_; }
  const std::map<Exps, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  void add_term(Exps e, const mpz_class& c);

  unsigned total_degree() const;
  unsigned degree_in(unsigned var) const;
  bool involves(unsigned var) const { return degree_in(var) > 0; }
  /// Copy with m raised to at least `m`.
  IntPoly widened(unsigned m) const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly operator-() const;
  IntPoly pow(unsigned e) const;
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.m_ == b.m_ && a.terms_ == b.terms_; }

  /// Text in variables prefix1..prefixm, highest total degree first. With
  /// `indexed` false and m == 1 the variable is written as the bare prefix.
  std::string to_string(const std::string& prefix = "x", bool indexed = true) const;

  /// Parses +, -, *, ^ (natural exponents), parentheses, integer literals and
  /// variables prefix<i> (1-based) or the bare prefix when not indexed. m = 0
  /// infers the variable count from the largest index used.
  static IntPoly parse(const std::string& text, unsigned m = 0, const std::string& prefix = "x",
                       bool indexed = true);

 private:
  unsigned m_;
  std::map<Exps, mpz_class> terms_;
};

/// Coefficients of a univariate polynomial in `var`, low to high.
std::vector<mpz_class> parse_univariate(const std::string& text, const std::string& var = "t");
std::string univariate_to_string(const std::vector<mpz_class>& coeffs, const std::string& var = "t");

/// IntPoly with coefficients reduced into one Field.
struct FieldPoly {
  unsigned m = 0;
  std::vector<std::pair<FieldElement, IntPoly::Exps>> terms;
  std::vector<unsigned> degree_in;  // per variable

  bool is_zero() const { return terms.empty(); }
};

FieldPoly compile(const IntPoly& p, const Field& f);
FieldElement eval(const FieldPoly& p, const Field& f, const std::vector<FieldElement>& point);
/// Univariate polynomial in variable `var`, all other coordinates taken from `point`.
fpoly::Poly specialize(const FieldPoly& p, const Field& f, const std::vector<FieldElement>& point, unsigned var);

}  // namespace acfo
