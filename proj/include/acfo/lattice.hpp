#pragma once

// Integer lattices: Hermite and Smith normal forms, kernels, and the
// incremental relation lattice modulo N.

#include <vector>

#include "acfo/numtheory.hpp"

namespace acfo {

using IVec = std::vector<mpz_class>;
using IMat = std::vector<IVec>;  // row-major

IMat identity_matrix(std::size_t n);
IMat mat_mul(const IMat& a, const IMat& b);
IVec mat_vec(const IMat& a, const IVec& v);
IMat transpose(const IMat& a, std::size_t cols_if_empty = 0);

/// Row Hermite normal form: nonzero rows only, pivots positive and strictly
/// moving right, entries above each pivot reduced into [0, pivot).
IMat hnf(IMat a, std::size_t cols = 0);

/// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}.
struct Smith {
  IMat U, D, V;
  std::size_t rank = 0;
};
Smith smith(const IMat& a, std::size_t cols = 0);

/// Basis (as rows) of the integer kernel {x : A x = 0}.
IMat kernel_basis(const IMat& a, std::size_t cols);

/// The lattice W spanned by added vectors together with N Z^m, kept in HNF,
/// and its dual relation lattice {l : l . w = 0 mod N for all w in W}.
class ModLattice {
 public:
  ModLattice(std::size_t m, const mpz_class& N);
  /// Returns true when W grew.
  bool add(const IVec& v);
  /// W = Z^m, equivalently the relation lattice is N Z^m.
  bool is_full() const;
  const IMat& hnf_rows() const { return h_; }
  /// Basis rows (in HNF) of {l : H l = 0 mod N}, i.e. the columns of N H^{-1}.
  IMat relation_basis() const;
  const mpz_class& modulus() const { return n_; }

 private:
  std::size_t m_;
  mpz_class n_;
  IMat h_;  // m x m upper triangular
};

/// Representative of v mod N in (-N/2, N/2], componentwise.
IVec symmetric_mod(const IVec& v, const mpz_class& N);

}  // namespace acfo
