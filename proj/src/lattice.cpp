#include "acfo/lattice.hpp"

#include <algorithm>

#include "acfo/error.hpp"

namespace acfo {

IMat identity_matrix(std::size_t n) {
  IMat r(n, IVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

IMat mat_mul(const IMat& a, const IMat& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  IMat r(a.size(), IVec(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

IVec mat_vec(const IMat& a, const IVec& v) {
  IVec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  }
  return r;
}

IMat transpose(const IMat& a, std::size_t cols_if_empty) {
  const std::size_t cols = a.empty() ? cols_if_empty : a[0].size();
  IMat r(cols, IVec(a.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) r[j][i] = a[i][j];
  }
  return r;
}

namespace {

// row_i <- a*row_i + b*row_j, row_j <- c*row_i + d*row_j (simultaneously)
void combine_rows(IMat& m, std::size_t i, std::size_t j, const mpz_class& a, const mpz_class& b,
                  const mpz_class& c, const mpz_class& d) {
  for (std::size_t k = 0; k < m[i].size(); ++k) {
    const mpz_class x = m[i][k], y = m[j][k];
    m[i][k] = a * x + b * y;
    m[j][k] = c * x + d * y;
  }
}

void combine_cols(IMat& m, std::size_t i, std::size_t j, const mpz_class& a, const mpz_class& b,
                  const mpz_class& c, const mpz_class& d) {
  for (auto& row : m) {
    const mpz_class x = row[i], y = row[j];
    row[i] = a * x + b * y;
    row[j] = c * x + d * y;
  }
}

// g = s*x + t*y with g = gcd >= 0
void xgcd(const mpz_class& x, const mpz_class& y, mpz_class& g, mpz_class& s, mpz_class& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
}

}  // namespace

IMat hnf(IMat a, std::size_t cols) {
  if (a.empty()) return a;
  cols = a[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    // fold all rows below into `row` on this column
    for (std::size_t r = row + 1; r < a.size(); ++r) {
      if (a[r][col] == 0) continue;
      if (a[row][col] == 0) {
        std::swap(a[row], a[r]);
        continue;
      }
      mpz_class g, s, t;
      xgcd(a[row][col], a[r][col], g, s, t);
      const mpz_class u = a[row][col] / g, v = a[r][col] / g;
      combine_rows(a, row, r, s, t, -v, u);
    }
    if (a[row][col] == 0) continue;
    if (a[row][col] < 0) {
      for (auto& x : a[row]) x = -x;
    }
    for (std::size_t r = 0; r < row; ++r) {
      const mpz_class q = floor_div(a[r][col], a[row][col]);
      if (q == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= q * a[row][k];
    }
    ++row;
  }
  a.resize(row);
  return a;
}

Smith smith(const IMat& a, std::size_t cols) {
  const std::size_t rows = a.size();
  if (!a.empty()) cols = a[0].size();
  Smith s;
  s.D = a;
  if (s.D.empty()) s.D.assign(0, IVec(cols, 0));
  s.U = identity_matrix(rows);
  s.V = identity_matrix(cols);
  IMat& D = s.D;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // choose a nonzero pivot of least magnitude in the remaining block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (D[i][j] != 0 && (pr == rows || abs(D[i][j]) < abs(D[pr][pc]))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(D[t], D[pr]);
    std::swap(s.U[t], s.U[pr]);
    combine_cols(D, t, pc, 0, 1, 1, 0);
    combine_cols(s.V, t, pc, 0, 1, 1, 0);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D[i][t] == 0) continue;
        if (mpz_divisible_p(D[i][t].get_mpz_t(), D[t][t].get_mpz_t())) {
          const mpz_class q = D[i][t] / D[t][t];
          combine_rows(D, t, i, 1, 0, -q, 1);
          combine_rows(s.U, t, i, 1, 0, -q, 1);
          continue;
        }
        mpz_class g, x, y;
        xgcd(D[t][t], D[i][t], g, x, y);
        const mpz_class u = D[t][t] / g, v = D[i][t] / g;
        combine_rows(D, t, i, x, y, -v, u);
        combine_rows(s.U, t, i, x, y, -v, u);
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D[t][j] == 0) continue;
        if (mpz_divisible_p(D[t][j].get_mpz_t(), D[t][t].get_mpz_t())) {
          const mpz_class q = D[t][j] / D[t][t];
          combine_cols(D, t, j, 1, 0, -q, 1);
          combine_cols(s.V, t, j, 1, 0, -q, 1);
          continue;
        }
        mpz_class g, x, y;
        xgcd(D[t][t], D[t][j], g, x, y);
        const mpz_class u = D[t][t] / g, v = D[t][j] / g;
        combine_cols(D, t, j, x, y, -v, u);
        combine_cols(s.V, t, j, x, y, -v, u);
      }
      for (std::size_t i = t + 1; i < rows; ++i) dirty = dirty || D[i][t] != 0;
      if (dirty) continue;
      // divisibility: fold any entry not divisible by the pivot into row t
      std::size_t bad_r = rows;
      for (std::size_t i = t + 1; i < rows && bad_r == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!mpz_divisible_p(D[i][j].get_mpz_t(), D[t][t].get_mpz_t())) {
            bad_r = i;
            break;
          }
        }
      }
      if (bad_r == rows) break;
      combine_rows(D, t, bad_r, 1, 1, 0, 1);
      combine_rows(s.U, t, bad_r, 1, 1, 0, 1);
    }
    if (D[t][t] < 0) {
      for (auto& x : D[t]) x = -x;
      for (auto& x : s.U[t]) x = -x;
    }
  }
  s.rank = t;
  return s;
}

IMat kernel_basis(const IMat& a, std::size_t cols) {
  if (a.empty()) return identity_matrix(cols);
  const Smith s = smith(a, cols);
  IMat out;
  for (std::size_t j = s.rank; j < cols; ++j) {
    IVec v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = s.V[i][j];
    out.push_back(std::move(v));
  }
  return hnf(out, cols);
}

ModLattice::ModLattice(std::size_t m, const mpz_class& N) : m_(m), n_(N), h_(m, IVec(m, 0)) {
  if (N <= 0) throw Error(ErrorCode::InvalidArgument, "lattice modulus must be positive");
  for (std::size_t i = 0; i < m; ++i) h_[i][i] = N;
}

bool ModLattice::add(const IVec& v0) {
  IVec v(m_);
  for (std::size_t i = 0; i < m_; ++i) v[i] = mod_floor(v0.at(i), n_);
  bool grew = false;
  for (std::size_t i = 0; i < m_; ++i) {
    if (v[i] == 0) continue;
    mpz_class g, s, t;
    xgcd(h_[i][i], v[i], g, s, t);
    if (g == h_[i][i]) {
      // pivot already divides; clear v[i] with the existing row
      const mpz_class q = v[i] / h_[i][i];
      for (std::size_t k = i; k < m_; ++k) v[k] = mod_floor(v[k] - q * h_[i][k], n_);
      continue;
    }
    grew = true;
    const mpz_class u = h_[i][i] / g, w = v[i] / g;
    IVec row(m_), rest(m_);
    for (std::size_t k = i; k < m_; ++k) {
      row[k] = s * h_[i][k] + t * v[k];
      rest[k] = u * v[k] - w * h_[i][k];
    }
    for (std::size_t k = i + 1; k < m_; ++k) {
      row[k] = mod_floor(row[k], n_);
      rest[k] = mod_floor(rest[k], n_);
    }
    row[i] = g;
    rest[i] = 0;
    h_[i] = std::move(row);
    v = std::move(rest);
  }
  if (grew) {
    // reduce above the diagonal
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t r = 0; r < j; ++r) {
        const mpz_class q = floor_div(h_[r][j], h_[j][j]);
        if (q == 0) continue;
        for (std::size_t k = j; k < m_; ++k) h_[r][k] -= q * h_[j][k];
      }
    }
  }
  return grew;
}

bool ModLattice::is_full() const {
  for (std::size_t i = 0; i < m_; ++i) {
    if (h_[i][i] != 1) return false;
  }
  return true;
}

IMat ModLattice::relation_basis() const {
  IMat cols;
  for (std::size_t j = 0; j < m_; ++j) {
    // H x = N e_j by back substitution; x is integral since N Z^m is inside W
    IVec x(m_, 0);
    for (std::size_t i = m_; i-- > 0;) {
      mpz_class rhs = i == j ? n_ : mpz_class(0);
      for (std::size_t k = i + 1; k < m_; ++k) rhs -= h_[i][k] * x[k];
      if (!mpz_divisible_p(rhs.get_mpz_t(), h_[i][i].get_mpz_t())) {
        throw Error(ErrorCode::InvalidArgument, "relation lattice is not integral");
      }
      x[i] = rhs / h_[i][i];
    }
    cols.push_back(std::move(x));
  }
  return hnf(cols, m_);
}

IVec symmetric_mod(const IVec& v, const mpz_class& N) {
  IVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    r[i] = mod_floor(v[i], N);
    if (2 * r[i] > N) r[i] -= N;
  }
  return r;
}

}  // namespace acfo
