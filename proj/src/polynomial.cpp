#include "acfo/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "acfo/error.hpp"

namespace acfo {

IntPoly IntPoly::constant(unsigned m, const mpz_class& c) {
  IntPoly r(m);
  r.add_term(Exps(m, 0), c);
  return r;
}

IntPoly IntPoly::variable(unsigned m, unsigned index) {
  if (index >= m) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  IntPoly r(m);
  Exps e(m, 0);
  e[index] = 1;
  r.add_term(e, 1);
  return r;
}

bool IntPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                                                terms_.begin()->first.end(),
                                                                [](unsigned v) { return v == 0; }));
}

void IntPoly::add_term(Exps e, const mpz_class& c) {
  if (e.size() != m_) throw Error(ErrorCode::InvalidArgument, "exponent vector of wrong length");
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(std::move(e), c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned IntPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (unsigned v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

unsigned IntPoly::degree_in(unsigned var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
  return d;
}

IntPoly IntPoly::widened(unsigned m) const {
  if (m <= m_) return *this;
  IntPoly r(m);
  for (const auto& [e, c] : terms_) {
    Exps w = e;
    w.resize(m, 0);
    r.add_term(std::move(w), c);
  }
  return r;
}

namespace {

void align(IntPoly& a, IntPoly& b) {
  const unsigned m = std::max(a.nvars(), b.nvars());
  a = a.widened(m);
  b = b.widened(m);
}

}  // namespace

IntPoly operator+(const IntPoly& a0, const IntPoly& b0) {
  IntPoly a = a0, b = b0;
  align(a, b);
  for (const auto& [e, c] : b.terms()) a.add_term(e, c);
  return a;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a0, const IntPoly& b0) {
  IntPoly a = a0, b = b0;
  align(a, b);
  IntPoly r(a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      IntPoly::Exps e(a.nvars());
      for (unsigned i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(std::move(e), ca * cb);
    }
  }
  return r;
}

IntPoly IntPoly::operator-() const {
  IntPoly r(m_);
  for (const auto& [e, c] : terms_) r.add_term(e, -c);
  return r;
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly r = constant(m_, 1);
  IntPoly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::string IntPoly::to_string(const std::string& prefix, bool indexed) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exps, mpz_class>> order(terms_.begin(), terms_.end());
  // highest total degree first, then lexicographically larger exponents first
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    unsigned da = 0, db = 0;
    for (unsigned v : a.first) da += v;
    for (unsigned v : b.first) db += v;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : order) {
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool any_var = false;
    std::ostringstream vars;
    for (unsigned i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any_var) vars << "*";
      any_var = true;
      vars << prefix;
      if (indexed) vars << (i + 1);
      if (e[i] > 1) vars << "^" << e[i];
    }
    if (!any_var) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << vars.str();
    }
  }
  return os.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& text, unsigned m, const std::string& prefix, bool indexed)
      : s_(text), m_(m), prefix_(prefix), indexed_(indexed) {}

  IntPoly run() {
    IntPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r.widened(std::max(m_, used_));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, msg + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  IntPoly expr() {
    skip();
    IntPoly r;
    if (eat('-')) {
      r = -term();
    } else {
      eat('+');
      r = term();
    }
    for (;;) {
      if (eat('+')) {
        r = r + term();
      } else if (eat('-')) {
        r = r - term();
      } else {
        return r;
      }
    }
  }

  IntPoly term() {
    IntPoly r = factor();
    while (eat('*')) r = r * factor();
    return r;
  }

  IntPoly factor() {
    IntPoly base = atom();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a natural exponent");
      const unsigned long e = std::stoul(s_.substr(start, pos_ - start));
      if (e > 1000000) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  IntPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      IntPoly r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return IntPoly::constant(0, mpz_class(s_.substr(start, pos_ - start)));
    }
    if (s_.compare(pos_, prefix_.size(), prefix_) == 0) {
      pos_ += prefix_.size();
      unsigned idx = 1;
      if (indexed_) {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a variable index after '" + prefix_ + "'");
        idx = static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
        if (idx == 0) fail("variables are numbered from 1");
      }
      if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) fail("unknown identifier");
      if (m_ != 0 && idx > m_) {
        throw Error(ErrorCode::ArityError, prefix_ + std::to_string(idx) + " exceeds " + std::to_string(m_) + " variables");
      }
      used_ = std::max(used_, idx);
      return IntPoly::variable(idx, idx - 1);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  unsigned m_;
  std::string prefix_;
  bool indexed_;
  std::size_t pos_ = 0;
  unsigned used_ = 0;
};

}  // namespace

IntPoly IntPoly::parse(const std::string& text, unsigned m, const std::string& prefix, bool indexed) {
  return PolyParser(text, m, prefix, indexed).run();
}

std::vector<mpz_class> parse_univariate(const std::string& text, const std::string& var) {
  const IntPoly p = IntPoly::parse(text, 1, var, false);
  std::vector<mpz_class> out(p.is_zero() ? 0 : p.degree_in(0) + 1, 0);
  for (const auto& [e, c] : p.terms()) out[e[0]] = c;
  return out;
}

std::string univariate_to_string(const std::vector<mpz_class>& coeffs, const std::string& var) {
  IntPoly p(1);
  for (unsigned i = 0; i < coeffs.size(); ++i) p.add_term({i}, coeffs[i]);
  return p.to_string(var, false);
}

FieldPoly compile(const IntPoly& p, const Field& f) {
  FieldPoly out;
  out.m = p.nvars();
  out.degree_in.assign(out.m, 0);
  const mpz_class pm = to_mpz(f.p());
  for (const auto& [e, c] : p.terms()) {
    const u64 r = to_u64(mod_floor(c, pm));
    if (r == 0) continue;
    out.terms.emplace_back(f.from_int(static_cast<i64>(r)), e);
    for (unsigned i = 0; i < out.m; ++i) out.degree_in[i] = std::max(out.degree_in[i], e[i]);
  }
  return out;
}

namespace {

std::vector<std::vector<FieldElement>> power_tables(const FieldPoly& p, const Field& f,
                                                    const std::vector<FieldElement>& point, int skip) {
  std::vector<std::vector<FieldElement>> pw(p.m);
  for (unsigned i = 0; i < p.m; ++i) {
    if (static_cast<int>(i) == skip || p.degree_in[i] == 0) continue;
    pw[i].reserve(p.degree_in[i] + 1);
    pw[i].push_back(f.one());
    for (unsigned d = 1; d <= p.degree_in[i]; ++d) pw[i].push_back(pw[i].back() * point[i]);
  }
  return pw;
}

}  // namespace

FieldElement eval(const FieldPoly& p, const Field& f, const std::vector<FieldElement>& point) {
  if (point.size() < p.m) throw Error(ErrorCode::ArityError, "point has too few coordinates");
  const auto pw = power_tables(p, f, point, -1);
  FieldElement acc = f.zero();
  for (const auto& [c, e] : p.terms) {
    FieldElement t = c;
    for (unsigned i = 0; i < p.m; ++i) {
      if (e[i]) t *= pw[i][e[i]];
    }
    acc += t;
  }
  return acc;
}

fpoly::Poly specialize(const FieldPoly& p, const Field& f, const std::vector<FieldElement>& point, unsigned var) {
  const auto pw = power_tables(p, f, point, static_cast<int>(var));
  fpoly::Poly out(p.degree_in.at(var) + 1, f.zero());
  for (const auto& [c, e] : p.terms) {
    FieldElement t = c;
    for (unsigned i = 0; i < p.m; ++i) {
      if (i != var && e[i]) t *= pw[i][e[i]];
    }
    out[e[var]] += t;
  }
  fpoly::trim(out);
  return out;
}

}  // namespace acfo
