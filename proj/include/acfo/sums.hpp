#pragma once

// Multiplicative character sums over varieties, point-count tables, Weyl
// sums and box discrepancies.

#include <complex>
#include <string>
#include <vector>

#include "acfo/variety.hpp"

namespace acfo {

struct SumOptions {
  unsigned threads = 1;
  /// Largest angle modulus kept as an exact histogram.
  u64 angle_cap = u64{1} << 20;
  /// Drop points where P vanishes instead of counting them as skipped.
  bool restrict_nonzero = false;
};

struct SumResult {
  unsigned k = 0;
  u64 n_points = 0;  // evaluated + skipped
  u64 skipped_zero_arg = 0;
  u64 modulus = 0;   // angles are j / modulus
  bool exact = false;  // histogram path taken
  std::vector<u64> histogram;  // counts per j, exact path only
  bool exact_zero = false;     // the sum is 0 in Z[zeta]
  bool constant = false;       // a single angle occurred
  std::complex<double> value;
  double magnitude = 0;
};

/// sum over a in V(F_{q^k}) with P(a) != 0 of chi(P(a)).
SumResult char_sum(const VarietySpec& v, unsigned k, const IntPoly& P, const SumOptions& opts = {});
/// sum over a in V^x(F_{q^k}) of chi(a^l); l may have negative entries.
SumResult monomial_sum(const VarietySpec& v, unsigned k, const IVec& l, const SumOptions& opts = {});

/// Sum of c_j zeta_N^j from a histogram, reduced in the power basis of Z[zeta_N].
bool cyclotomic_sum_is_zero(const std::vector<u64>& counts);
/// Compensated float evaluation of the same sum.
std::complex<double> histogram_value(const std::vector<u64>& counts);

/// Table with the fixed leading columns k, N_k, raw, normalized.
struct SumTable {
  std::string name;
  std::vector<std::string> extra_columns;
  struct Row {
    unsigned k = 0;
    u64 n_k = 0;
    double raw = 0;
    double normalized = 0;
    std::vector<std::string> extra;
  };
  std::vector<Row> rows;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

/// N_k against q^{kd}: raw = |N_k - q^{kd}|, normalized = raw / q^{k(d-1/2)}.
SumTable lang_weil_table(const VarietySpec& v, unsigned d, const std::vector<unsigned>& ks, const SumOptions& opts = {});
/// raw = |S_k|, normalized = |S_k| / q^{k(d-1/2)}.
SumTable weil_ratio_table(const VarietySpec& v, unsigned d, const IntPoly& P, const std::vector<unsigned>& ks,
                          const SumOptions& opts = {});
/// raw = |S_k(l)|, normalized = |S_k(l)| / N_k over the torus.
SumTable weyl_sums(const VarietySpec& v, const std::vector<unsigned>& ks, const std::vector<IVec>& ls,
                   const SumOptions& opts = {});

struct Box {
  std::vector<CirclePoint> lo, hi;
};

struct BoxResult {
  u64 count = 0;
  u64 n_k = 0;
  mpq_class fraction, volume, deviation;
  double deviation_d = 0;
};

/// Strict box counts over V^x(F_{q^k}) against the volume prod (l(hi) - l(lo)).
std::vector<BoxResult> box_discrepancy(const VarietySpec& v, unsigned k, const std::vector<Box>& boxes,
                                       const SumOptions& opts = {});

/// Shortest round-trip decimal text for a double; stable across runs.
std::string format_double(double x);

}  // namespace acfo
