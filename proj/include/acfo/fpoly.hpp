#pragma once

// Univariate polynomials: over the prime field F_p (plain coefficient vectors)
// and over an ambient Field (FieldElement coefficients), with root finding.

#include <vector>

#include "acfo/gf.hpp"

namespace acfo {

namespace fp {

/// Coefficients low to high, no trailing zeros; the zero polynomial is empty.
using Poly = std::vector<u64>;

void trim(Poly& a);
unsigned degree(const Poly& a);  // degree of the zero polynomial reported as 0
Poly add(const Poly& a, const Poly& b, u64 p);
Poly sub(const Poly& a, const Poly& b, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 p);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p);
Poly powmod(const Poly& base, u64 e, const Poly& m, u64 p);
Poly monic(const Poly& a, u64 p);
Poly gcd(Poly a, Poly b, u64 p);
Poly derivative(const Poly& a, u64 p);

bool is_irreducible(const Poly& f, u64 p);
/// Product of the distinct monic irreducible factors of f.
Poly radical(const Poly& f, u64 p);
/// Degrees (with repetition) of the irreducible factors of a squarefree f.
std::vector<unsigned> distinct_degree_factor_degrees(const Poly& f, u64 p);

/// Reduce integer coefficients mod p and trim.
Poly from_integers(const std::vector<mpz_class>& coeffs, u64 p);

}  // namespace fp

namespace fpoly {

/// Coefficients low to high over one Field; empty vector is zero.
using Poly = std::vector<FieldElement>;

void trim(Poly& a);
Poly lift(const Field& f, const fp::Poly& a);
Poly mul(const Poly& a, const Poly& b);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& base, u64 e, const Poly& m);
Poly gcd(const Field& f, Poly a, Poly b);
FieldElement eval(const Field& f, const Poly& a, const FieldElement& x);

/// Distinct roots of a nonzero polynomial lying in the subfield F_{p^s}, in
/// index order. Small subfields are scanned; larger ones use gcd with
/// x^{p^s} - x followed by equal-degree splitting.
std::vector<FieldElement> roots_in_subfield(const Field& f, const Poly& a, unsigned s);
std::vector<FieldElement> roots_by_scan(const Field& f, const Poly& a, unsigned s);
std::vector<FieldElement> roots_by_splitting(const Field& f, const Poly& a, unsigned s);

}  // namespace fpoly

}  // namespace acfo
