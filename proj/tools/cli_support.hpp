#pragma once

// Shared plumbing for the acfo command line: run configuration, output
// sinks and argument parsing helpers.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "acfo/error.hpp"
#include "acfo/gf.hpp"
#include "acfo/polynomial.hpp"
#include "acfo/variety.hpp"
#include "json.hpp"

namespace acfo::cli {

struct RunConfig {
  unsigned threads = 1;
  u64 seed = 1;
  std::string format = "json";  // json | csv | text
  std::string output;           // empty: stdout
  u64 max_order = u64{1} << 48;
  double enum_budget = 4e10;
  u64 dlog_budget = u64{1} << 24;
  u64 angle_cap = u64{1} << 20;

  FieldLimits field_limits() const {
    FieldLimits l;
    l.max_order = max_order;
    l.bsgs_budget = dlog_budget;
    return l;
  }
};

/// Writes to --output or stdout; the file is only created on success.
class Sink {
 public:
  explicit Sink(const RunConfig& cfg) : path_(cfg.output) {}
  std::ostream& out() { return buf_; }
  void flush() {
    if (path_.empty()) {
      std::cout << buf_.str();
      std::cout.flush();
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path_);
    f << buf_.str();
  }

 private:
  std::string path_;
  std::ostringstream buf_;
};

inline void emit_json(const RunConfig& cfg, const nlohmann::json& j) {
  Sink s(cfg);
  s.out() << j.dump(2) << "\n";
  s.flush();
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, path + ": " + e.what());
  }
}

inline VarietySpec load_variety(const std::string& path, const RunConfig& cfg) {
  return variety_from_json(read_json(path), cfg.field_limits());
}

/// "1,-1" -> {1, -1}
inline IVec parse_ivec(const std::string& text) {
  IVec v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      v.emplace_back(part.empty() ? std::string("x") : part);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::SyntaxError, "bad integer '" + part + "' in '" + text + "'");
    }
  }
  if (v.empty()) throw Error(ErrorCode::SyntaxError, "empty integer list");
  return v;
}

/// "0,1/3" -> circle points
inline std::vector<CirclePoint> parse_points(const std::string& text, u64 p) {
  std::vector<CirclePoint> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(CirclePoint::parse(part, p));
  return out;
}

/// A field element written as a polynomial in x with integer coefficients,
/// e.g. "x^2+2" or "3".
inline FieldElement parse_element(const Field& f, const std::string& text) {
  const auto c = parse_univariate(text, "x");
  FieldElement x = f.degree() > 1 ? f.from_coeffs({0, 1}) : f.zero();
  if (f.degree() == 1 && c.size() > 1) throw Error(ErrorCode::InvalidArgument, "x is not an element of a prime field");
  FieldElement acc = f.zero();
  for (std::size_t i = c.size(); i-- > 0;) {
    const mpz_class r = ((c[i] % f.p()) + f.p()) % f.p();
    acc = acc * x + f.from_int(static_cast<i64>(r.get_ui()));
  }
  return acc;
}

/// "1..5" or "1,2,4"
inline std::vector<unsigned> parse_levels(const std::string& text) {
  std::vector<unsigned> ks;
  const auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const unsigned a = std::stoul(text.substr(0, dots)), b = std::stoul(text.substr(dots + 2));
      for (unsigned k = a; k <= b; ++k) ks.push_back(k);
    } else {
      std::stringstream ss(text);
      std::string part;
      while (std::getline(ss, part, ',')) ks.push_back(std::stoul(part));
    }
  } catch (const std::exception&) {
    throw Error(ErrorCode::SyntaxError, "bad level list '" + text + "'");
  }
  if (ks.empty() || ks.front() == 0) throw Error(ErrorCode::InvalidArgument, "levels start at 1");
  return ks;
}

}  // namespace acfo::cli
