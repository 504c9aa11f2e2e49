#include "acfo/formula.hpp"

#include <cctype>

#include "acfo/error.hpp"

namespace acfo {

// ---------------------------------------------------------------- lexer

namespace {

struct Token {
  enum class Kind { Ident, Num, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::Kind::Ident;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) t.text += s[i++];
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::Kind::Num;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) t.text += s[i++];
    } else if (c == '!' && i + 1 < s.size() && s[i + 1] == '=') {
      t.kind = Token::Kind::Sym;
      t.text = "!=";
      i += 2;
    } else if (std::string("()[],;:+-*^=<").find(c) != std::string::npos) {
      t.kind = Token::Kind::Sym;
      t.text = std::string(1, c);
      ++i;
    } else {
      throw Error(ErrorCode::SyntaxError, "unexpected character '" + std::string(1, c) + "' at position " + std::to_string(i));
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = s.size();
  out.push_back(end);
  return out;
}

enum class Mode { Roots, Ring, Mult };

class Parser {
 public:
  explicit Parser(const std::string& s) : toks_(tokenize(s)) {}

  SpecialSentence sentence() {
    SpecialSentence out;
    expect_ident("exists");
    while (peek().kind == Token::Kind::Ident && peek().text != "roots" && peek().text.size() > 1 && peek().text[0] == 'z') {
      const std::string want = "z" + std::to_string(out.k + 1);
      if (peek().text != want) fail("variables must be z1 .. zk in order, expected " + want);
      ++i_;
      ++out.k;
    }
    k_ = out.k;
    expect_sym(":");
    expect_ident("roots");
    expect_sym("(");
    out.roots = sum(Mode::Roots);
    expect_sym(")");
    expect_sym(";");
    expect_ident("ring");
    expect_sym(":");
    out.ring = formula(Mode::Ring);
    expect_sym(";");
    expect_ident("mult");
    expect_sym(":");
    out.mult = formula(Mode::Mult);
    if (peek().kind != Token::Kind::End) fail("trailing input");
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  unsigned k_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
  bool is_sym(const std::string& s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Sym && peek(ahead).text == s;
  }
  bool is_ident(const std::string& s) const { return peek().kind == Token::Kind::Ident && peek().text == s; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw Error(ErrorCode::SyntaxError,
                what + " at position " + std::to_string(t.pos) + (t.kind == Token::Kind::End ? " (end of input)" : " near '" + t.text + "'"));
  }
  void expect_sym(const std::string& s) {
    if (!is_sym(s)) fail("expected '" + s + "'");
    ++i_;
  }
  void expect_ident(const std::string& s) {
    if (!is_ident(s)) fail("expected '" + s + "'");
    ++i_;
  }
  mpz_class number() {
    if (peek().kind != Token::Kind::Num) fail("expected a number");
    return mpz_class(toks_[i_++].text);
  }
  mpz_class signed_number() {
    if (is_sym("-")) {
      ++i_;
      return -number();
    }
    return number();
  }

  static Term node(Term::Kind k, std::vector<Term> kids) {
    Term t;
    t.kind = k;
    t.kids = std::move(kids);
    return t;
  }

  Term variable(Mode mode) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail("expected a variable");
    Term v;
    v.kind = Term::Kind::Var;
    if (mode == Mode::Roots) {
      if (t.text != "t") fail("the roots polynomial is in t");
      v.var = 0;
    } else {
      if (t.text.size() < 2 || t.text[0] != 'z' ||
          !std::all_of(t.text.begin() + 1, t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
          t.text[1] == '0') {
        fail("expected a variable z1 .. zk");
      }
      const unsigned long j = std::stoul(t.text.substr(1));
      if (j > k_) throw Error(ErrorCode::ArityError, t.text + " is not among z1 .. z" + std::to_string(k_));
      v.var = static_cast<unsigned>(j);
    }
    ++i_;
    return v;
  }

  // ring and roots terms
  Term sum(Mode mode) {
    if (mode == Mode::Mult) return mprod();
    Term acc = product(mode);
    while (is_sym("+") || is_sym("-")) {
      const bool plus = is_sym("+");
      ++i_;
      acc = node(plus ? Term::Kind::Add : Term::Kind::Sub, {acc, product(mode)});
    }
    return acc;
  }
  Term product(Mode mode) {
    Term acc = unary(mode);
    while (is_sym("*")) {
      ++i_;
      acc = node(Term::Kind::Mul, {acc, unary(mode)});
    }
    return acc;
  }
  Term unary(Mode mode) {
    if (is_sym("-")) {
      ++i_;
      return node(Term::Kind::Neg, {unary(mode)});
    }
    Term base = primary(mode);
    if (is_sym("^")) {
      ++i_;
      Term p = node(Term::Kind::Pow, {base});
      p.value = number();
      return p;
    }
    return base;
  }
  Term primary(Mode mode) {
    if (is_sym("(")) {
      ++i_;
      Term inner = sum(mode);
      expect_sym(")");
      return node(Term::Kind::Paren, {inner});
    }
    if (peek().kind == Token::Kind::Num) {
      Term n;
      n.kind = Term::Kind::Num;
      n.value = number();
      return n;
    }
    return variable(mode);
  }

  // multiplicative terms: products of z_j^e and 1
  Term mprod() {
    Term acc = mpow();
    while (is_sym("*")) {
      ++i_;
      acc = node(Term::Kind::Mul, {acc, mpow()});
    }
    return acc;
  }
  Term mpow() {
    Term base;
    if (is_sym("(")) {
      ++i_;
      base = node(Term::Kind::Paren, {mprod()});
      expect_sym(")");
    } else if (peek().kind == Token::Kind::Num) {
      if (peek().text != "1") fail("the only constant in a multiplicative term is 1");
      base.kind = Term::Kind::Num;
      base.value = number();
    } else {
      base = variable(Mode::Mult);
    }
    if (is_sym("^")) {
      ++i_;
      Term p = node(Term::Kind::Pow, {base});
      p.value = signed_number();
      return p;
    }
    return base;
  }

  Formula formula(Mode mode) {
    Formula first = conj(mode);
    if (!is_ident("or")) return first;
    Formula f;
    f.kind = Formula::Kind::Or;
    f.kids.push_back(std::move(first));
    while (is_ident("or")) {
      ++i_;
      f.kids.push_back(conj(mode));
    }
    return f;
  }
  Formula conj(Mode mode) {
    Formula first = negation(mode);
    if (!is_ident("and")) return first;
    Formula f;
    f.kind = Formula::Kind::And;
    f.kids.push_back(std::move(first));
    while (is_ident("and")) {
      ++i_;
      f.kids.push_back(negation(mode));
    }
    return f;
  }
  Formula negation(Mode mode) {
    if (is_ident("not")) {
      ++i_;
      Formula f;
      f.kind = Formula::Kind::Not;
      f.kids.push_back(negation(mode));
      return f;
    }
    if (is_ident("true") || is_ident("false")) {
      Formula f;
      f.kind = is_ident("true") ? Formula::Kind::True : Formula::Kind::False;
      ++i_;
      return f;
    }
    if (is_sym("(")) {
      // a parenthesized formula, or an atom whose first term starts with '('
      const std::size_t save = i_;
      try {
        ++i_;
        Formula inner = formula(mode);
        expect_sym(")");
        if (!(is_sym("=") || is_sym("!=") || is_sym("<") || is_sym("*") || is_sym("^") || is_sym("+") || is_sym("-"))) {
          Formula f;
          f.kind = Formula::Kind::Paren;
          f.kids.push_back(std::move(inner));
          return f;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SyntaxError) throw;
      }
      i_ = save;
    }
    return atom(mode);
  }
  Formula atom(Mode mode) {
    Formula f;
    if (mode == Mode::Mult && is_ident("P") && is_sym("[", 1)) {
      i_ += 2;
      f.kind = Formula::Kind::Mult;
      f.mult.op = MultAtom::Op::Pred;
      f.mult.r = signed_number();
      expect_sym(",");
      f.mult.n = number();
      if (f.mult.n < 1) fail("P[r,n] needs n >= 1");
      expect_sym("]");
      expect_sym("(");
      f.mult.lhs = mprod();
      expect_sym(")");
      return f;
    }
    Term lhs = sum(mode);
    if (mode == Mode::Ring) {
      f.kind = Formula::Kind::Ring;
      if (is_sym("=")) {
        f.ring.equal = true;
      } else if (is_sym("!=")) {
        f.ring.equal = false;
      } else {
        fail("expected '=' or '!='");
      }
      ++i_;
      f.ring.lhs = std::move(lhs);
      f.ring.rhs = sum(mode);
      return f;
    }
    f.kind = Formula::Kind::Mult;
    if (is_sym("<")) {
      f.mult.op = MultAtom::Op::Lt;
    } else if (is_sym("=")) {
      f.mult.op = MultAtom::Op::Eq;
    } else if (is_sym("!=")) {
      f.mult.op = MultAtom::Op::Ne;
    } else {
      fail("expected '<', '=' or '!='");
    }
    ++i_;
    f.mult.lhs = std::move(lhs);
    f.mult.rhs = mprod();
    return f;
  }
};

}  // namespace

SpecialSentence parse_sentence(const std::string& text) { return Parser(text).sentence(); }

std::string normalize_sentence(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

// ---------------------------------------------------------------- printing

std::string term_to_string(const Term& t, const std::string& prefix) {
  switch (t.kind) {
    case Term::Kind::Num:
      return t.value.get_str();
    case Term::Kind::Var:
      return t.var == 0 ? "t" : prefix + std::to_string(t.var);
    case Term::Kind::Add:
      return term_to_string(t.kids[0], prefix) + " + " + term_to_string(t.kids[1], prefix);
    case Term::Kind::Sub:
      return term_to_string(t.kids[0], prefix) + " - " + term_to_string(t.kids[1], prefix);
    case Term::Kind::Mul:
      return term_to_string(t.kids[0], prefix) + "*" + term_to_string(t.kids[1], prefix);
    case Term::Kind::Neg:
      return "-" + term_to_string(t.kids[0], prefix);
    case Term::Kind::Pow:
      return term_to_string(t.kids[0], prefix) + "^" + t.value.get_str();
    case Term::Kind::Paren:
      return "(" + term_to_string(t.kids[0], prefix) + ")";
  }
  return {};
}

std::string formula_to_string(const Formula& f) {
  auto join = [&](const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < f.kids.size(); ++i) out += (i ? sep : "") + formula_to_string(f.kids[i]);
    return out;
  };
  switch (f.kind) {
    case Formula::Kind::True:
      return "true";
    case Formula::Kind::False:
      return "false";
    case Formula::Kind::Ring:
      return term_to_string(f.ring.lhs, "z") + (f.ring.equal ? " = " : " != ") + term_to_string(f.ring.rhs, "z");
    case Formula::Kind::Mult: {
      const MultAtom& a = f.mult;
      if (a.op == MultAtom::Op::Pred) {
        return "P[" + a.r.get_str() + "," + a.n.get_str() + "](" + term_to_string(a.lhs, "z") + ")";
      }
      const char* op = a.op == MultAtom::Op::Lt ? " < " : a.op == MultAtom::Op::Eq ? " = " : " != ";
      return term_to_string(a.lhs, "z") + op + term_to_string(a.rhs, "z");
    }
    case Formula::Kind::Not:
      return "not " + formula_to_string(f.kids[0]);
    case Formula::Kind::And:
      return join(" and ");
    case Formula::Kind::Or:
      return join(" or ");
    case Formula::Kind::Paren:
      return "(" + formula_to_string(f.kids[0]) + ")";
  }
  return {};
}

std::string SpecialSentence::to_string() const {
  std::string out = "exists";
  for (unsigned j = 1; j <= k; ++j) out += " z" + std::to_string(j);
  out += " : roots(" + term_to_string(roots, "z") + ") ; ring: " + formula_to_string(ring) +
         " ; mult: " + formula_to_string(mult);
  return out;
}

// ---------------------------------------------------------------- semantics

IntPoly term_poly(const Term& t, unsigned k) {
  const unsigned m = std::max(k, 1u);
  switch (t.kind) {
    case Term::Kind::Num:
      return IntPoly::constant(m, t.value);
    case Term::Kind::Var:
      return IntPoly::variable(m, t.var == 0 ? 0 : t.var - 1);
    case Term::Kind::Add:
      return term_poly(t.kids[0], k) + term_poly(t.kids[1], k);
    case Term::Kind::Sub:
      return term_poly(t.kids[0], k) - term_poly(t.kids[1], k);
    case Term::Kind::Mul:
      return term_poly(t.kids[0], k) * term_poly(t.kids[1], k);
    case Term::Kind::Neg:
      return -term_poly(t.kids[0], k);
    case Term::Kind::Pow:
      if (t.value < 0 || !t.value.fits_uint_p()) throw Error(ErrorCode::InvalidArgument, "ring exponents are small naturals");
      return term_poly(t.kids[0], k).pow(static_cast<unsigned>(t.value.get_ui()));
    case Term::Kind::Paren:
      return term_poly(t.kids[0], k);
  }
  return IntPoly(m);
}

std::vector<mpz_class> SpecialSentence::P() const {
  const IntPoly p = term_poly(roots, 1);
  std::vector<mpz_class> out(p.is_zero() ? 0 : p.degree_in(0) + 1, 0);
  for (const auto& [e, c] : p.terms()) out[e[0]] = c;
  return out;
}

IVec term_exponents(const Term& t, unsigned k) {
  IVec out(k, 0);
  switch (t.kind) {
    case Term::Kind::Num:
      if (t.value != 1) throw Error(ErrorCode::InvalidArgument, "constant other than 1 in a multiplicative term");
      return out;
    case Term::Kind::Var:
      out.at(t.var - 1) = 1;
      return out;
    case Term::Kind::Mul: {
      const IVec a = term_exponents(t.kids[0], k), b = term_exponents(t.kids[1], k);
      for (unsigned j = 0; j < k; ++j) out[j] = a[j] + b[j];
      return out;
    }
    case Term::Kind::Pow: {
      const IVec a = term_exponents(t.kids[0], k);
      for (unsigned j = 0; j < k; ++j) out[j] = a[j] * t.value;
      return out;
    }
    case Term::Kind::Paren:
      return term_exponents(t.kids[0], k);
    default:
      throw Error(ErrorCode::InvalidArgument, "not a multiplicative term");
  }
}

CirclePoint monomial_value(const IVec& e, const std::vector<CirclePoint>& t) {
  CirclePoint acc = CirclePoint::identity(t.empty() ? 0 : t[0].char_p());
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] != 0) acc = cp_mul(acc, cp_pow(t.at(j), e[j]));
  }
  return acc;
}

bool eval_literal(const MultLiteral& l, const std::vector<CirclePoint>& t) {
  const CirclePoint a = monomial_value(l.lhs, t);
  bool v = false;
  switch (l.op) {
    case MultAtom::Op::Lt:
      v = cp_compare(a, monomial_value(l.rhs, t)) < 0;
      break;
    case MultAtom::Op::Eq:
      v = a == monomial_value(l.rhs, t);
      break;
    case MultAtom::Op::Ne:
      v = !(a == monomial_value(l.rhs, t));
      break;
    case MultAtom::Op::Pred: {
      if (!l.n.fits_ulong_p()) throw Error(ErrorCode::InvalidArgument, "P[r,n] with n too large");
      const mpz_class r = mod_floor(l.r, l.n);
      v = pred_P(a, l.n.get_ui(), r.get_ui());
      break;
    }
  }
  return v != l.negated;
}

namespace {

MultLiteral literal(const MultAtom& a, unsigned k) {
  MultLiteral l;
  l.op = a.op;
  l.lhs = term_exponents(a.lhs, k);
  if (a.op != MultAtom::Op::Pred) l.rhs = term_exponents(a.rhs, k);
  l.r = a.r;
  l.n = a.n;
  return l;
}

}  // namespace

bool eval_mult(const Formula& f, unsigned k, const std::vector<CirclePoint>& t) {
  switch (f.kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Mult:
      return eval_literal(literal(f.mult, k), t);
    case Formula::Kind::Not:
      return !eval_mult(f.kids[0], k, t);
    case Formula::Kind::And:
      return std::all_of(f.kids.begin(), f.kids.end(), [&](const Formula& g) { return eval_mult(g, k, t); });
    case Formula::Kind::Or:
      return std::any_of(f.kids.begin(), f.kids.end(), [&](const Formula& g) { return eval_mult(g, k, t); });
    case Formula::Kind::Paren:
      return eval_mult(f.kids[0], k, t);
    case Formula::Kind::Ring:
      throw Error(ErrorCode::InvalidArgument, "ring atom in the multiplicative part");
  }
  return false;
}

bool eval_ring(const Formula& f, unsigned k, const Field& field, const std::vector<FieldElement>& z) {
  switch (f.kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Ring: {
      const IntPoly d = term_poly(f.ring.lhs, k) - term_poly(f.ring.rhs, k);
      std::vector<FieldElement> pt = z;
      if (pt.empty()) pt.push_back(field.zero());  // k = 0: constant atoms
      const bool zero = eval(compile(d, field), field, pt).is_zero();
      return zero == f.ring.equal;
    }
    case Formula::Kind::Not:
      return !eval_ring(f.kids[0], k, field, z);
    case Formula::Kind::And:
      return std::all_of(f.kids.begin(), f.kids.end(), [&](const Formula& g) { return eval_ring(g, k, field, z); });
    case Formula::Kind::Or:
      return std::any_of(f.kids.begin(), f.kids.end(), [&](const Formula& g) { return eval_ring(g, k, field, z); });
    case Formula::Kind::Paren:
      return eval_ring(f.kids[0], k, field, z);
    case Formula::Kind::Mult:
      throw Error(ErrorCode::InvalidArgument, "multiplicative atom in the ring part");
  }
  return false;
}

// ---------------------------------------------------------------- DNF

namespace {

using Dnf = std::vector<Conjunction>;

Dnf product(const Dnf& a, const Dnf& b, std::size_t cap) {
  if (a.size() * b.size() > cap) {
    throw Error(ErrorCode::SizeCapExceeded, "DNF exceeds " + std::to_string(cap) + " disjuncts");
  }
  Dnf out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Conjunction c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

Dnf dnf(const Formula& f, unsigned k, bool neg, std::size_t cap) {
  auto check = [&](const Dnf& d) {
    if (d.size() > cap) throw Error(ErrorCode::SizeCapExceeded, "DNF exceeds " + std::to_string(cap) + " disjuncts");
    return d;
  };
  switch (f.kind) {
    case Formula::Kind::True:
      return neg ? Dnf{} : Dnf{Conjunction{}};
    case Formula::Kind::False:
      return neg ? Dnf{Conjunction{}} : Dnf{};
    case Formula::Kind::Paren:
      return dnf(f.kids[0], k, neg, cap);
    case Formula::Kind::Not:
      return dnf(f.kids[0], k, !neg, cap);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const bool conj = (f.kind == Formula::Kind::And) != neg;
      Dnf acc = conj ? Dnf{Conjunction{}} : Dnf{};
      for (const auto& g : f.kids) {
        Dnf d = dnf(g, k, neg, cap);
        if (conj) {
          acc = product(acc, d, cap);
        } else {
          acc.insert(acc.end(), d.begin(), d.end());
          check(acc);
        }
      }
      return acc;
    }
    case Formula::Kind::Mult: {
      const MultLiteral l = literal(f.mult, k);
      auto lit = [&](MultAtom::Op op, const IVec& a, const IVec& b) {
        MultLiteral x = l;
        x.op = op;
        x.lhs = a;
        x.rhs = b;
        return x;
      };
      const MultLiteral lt = lit(MultAtom::Op::Lt, l.lhs, l.rhs), gt = lit(MultAtom::Op::Lt, l.rhs, l.lhs),
                        eq = lit(MultAtom::Op::Eq, l.lhs, l.rhs);
      switch (l.op) {
        case MultAtom::Op::Lt:
          return neg ? Dnf{{gt}, {eq}} : Dnf{{lt}};
        case MultAtom::Op::Eq:
          return neg ? Dnf{{lt}, {gt}} : Dnf{{eq}};
        case MultAtom::Op::Ne:
          return neg ? Dnf{{eq}} : Dnf{{lt}, {gt}};
        case MultAtom::Op::Pred: {
          MultLiteral x = l;
          x.negated = neg;
          return Dnf{{x}};
        }
      }
      return {};
    }
    case Formula::Kind::Ring:
      throw Error(ErrorCode::InvalidArgument, "ring atom in the multiplicative part");
  }
  return {};
}

}  // namespace

std::vector<Conjunction> mult_dnf(const Formula& f, unsigned k, std::size_t max_disjuncts) {
  return dnf(f, k, false, max_disjuncts);
}

}  // namespace acfo
