#pragma once

// Quasi-affine varieties Z(P) \ Z(Q) over F_q, their points over F_{q^k},
// relation lattices of the torus part, largeness, product sets and
// hyper-arcs.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acfo/chi.hpp"
#include "acfo/lattice.hpp"
#include "acfo/polynomial.hpp"

namespace acfo {

using Point = std::vector<FieldElement>;

struct VarietySpec {
  unsigned m = 0;
  CharacterContext base;
  /// q = p^base_level; must divide the base field degree.
  unsigned base_level = 1;
  std::vector<IntPoly> eqs;
  std::vector<IntPoly> neqs;
  std::optional<unsigned> claimed_dim;

  VarietySpec(unsigned m_, CharacterContext base_, unsigned base_level_ = 1)
      : m(m_), base(std::move(base_)), base_level(base_level_) {}
  /// Parses each polynomial in x1..xm.
  static VarietySpec make(unsigned m, const CharacterContext& base, const std::vector<std::string>& eqs,
                          const std::vector<std::string>& neqs = {}, unsigned base_level = 1);
  u64 q() const;
};

nlohmann::json variety_to_json(const VarietySpec& v);
/// {m, p, base_level, eqs[], neqs[], claimed_dim, L?}
VarietySpec variety_from_json(const nlohmann::json& j, const FieldLimits& limits = {});

/// Where level k lives: the ambient context (coherent with the base) and the
/// degree s = base_level * k of F_{q^k} inside it.
struct LevelContext {
  CharacterContext ctx;
  unsigned degree = 0;
  u64 level_order = 0;  // p^s - 1
  std::vector<FieldElement> elements;  // F_{p^s} in index order

  /// dlog relative to the level generator, in [0, p^s - 1).
  u64 level_dlog(const FieldElement& a) const;
};

/// The base field itself when s | L, otherwise extend_ambient to lcm(L, s).
LevelContext level_context(const VarietySpec& v, unsigned k);
/// Subfield of degree s inside an existing context.
LevelContext level_context_in(const CharacterContext& ctx, unsigned s);

struct EnumOptions {
  bool torus_only = false;
  unsigned threads = 1;
  /// Cap on the number of tuples the search may visit before pruning.
  double budget = 4e10;
};

/// Fixed chunk count for a level; independent of the thread count.
std::size_t chunk_count(const VarietySpec& v, const LevelContext& lc, const EnumOptions& opts);
/// Points of one chunk, in enumeration order, passed to `visit`.
void enumerate_chunk(const VarietySpec& v, const LevelContext& lc, const EnumOptions& opts, std::size_t chunk,
                     const std::function<void(const Point&)>& visit);
/// Runs fn(chunk) for every chunk on up to `threads` workers.
void parallel_chunks(std::size_t chunks, unsigned threads, const std::function<void(std::size_t)>& fn);

/// All points, coefficient-lexicographic order.
std::vector<Point> enumerate_points(const VarietySpec& v, const LevelContext& lc, const EnumOptions& opts);
std::vector<Point> enumerate_points(const VarietySpec& v, unsigned k, const EnumOptions& opts);
u64 count_points(const VarietySpec& v, const LevelContext& lc, const EnumOptions& opts);

struct RelationLattice {
  unsigned k = 0;
  mpz_class N;  // q^k - 1
  IMat basis;   // HNF rows
  bool trivial = false;  // the lattice is N Z^m
  u64 n_points = 0;
};

RelationLattice relation_lattice(const VarietySpec& v, unsigned k, unsigned threads = 1);

struct LargenessVerdict {
  enum class Kind { Large, NotLarge, Unknown };
  Kind kind = Kind::Unknown;
  unsigned level = 0;  // witness level for Large, k_max otherwise
  IVec relation;       // NotLarge only
  std::string constant;  // NotLarge only, as a field element at level 2*k_max
  CirclePoint constant_chi;
  bool heuristic = false;

  std::string to_string() const;
};

LargenessVerdict largeness_verdict(const VarietySpec& v, unsigned k_max, unsigned threads = 1);

struct ProductSetResult {
  unsigned steps = 0;  // smallest s with S^s = S^{s+1}
  bool stabilized = false;
  bool full = false;
  u64 size = 0;
  u64 torus_size = 0;
};

ProductSetResult product_set_oracle(const VarietySpec& v, unsigned k, unsigned steps, u64 cap = 1u << 22);

struct HyperArc {
  unsigned m = 0;
  u64 q = 1;
  std::vector<CirclePoint> lo, hi, e;

  /// Validates the shape, lo < hi and the no-wrap condition lo <= lo*e, hi <= hi*e.
  static HyperArc make(u64 q, std::vector<CirclePoint> lo, std::vector<CirclePoint> hi,
                       std::vector<CirclePoint> e = {});
};

bool hyperarc_contains(const HyperArc& h, const Point& a, const CharacterContext& ctx);

struct ProbeResult {
  bool found = false;
  unsigned k = 0;  // witness level, or k_max when not found
  Point point;
  std::vector<CirclePoint> chi_values;
  std::optional<CharacterContext> ctx;
};

enum class ProbePath { Direct, FrobeniusPullback };

/// Scans V^x(F_{q^k}) for k = 1..k_max for a point in H.
ProbeResult genericity_probe(const VarietySpec& v, const HyperArc& h, unsigned k_max, ProbePath path = ProbePath::Direct,
                             unsigned threads = 1);

}  // namespace acfo
