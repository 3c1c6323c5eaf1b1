#pragma once

// Species equations: the expression tree, the DSL parser and printer, and
// extraction of the coefficients p_0(z)..p_m(z) of a nested equivalence
//   G = p_0(Z) + p_1(Z) G + ... + p_m(Z) G^m.

#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "agc/errors.hpp"
#include "agc/rational.hpp"
#include "agc/series.hpp"

namespace agc {

struct Expr {
  enum class Kind { Constant, Z, E, Name, Sum, Product, Power };

  Kind kind = Kind::Constant;
  Integer value = 0;       // Constant
  std::string name;        // Name
  unsigned exponent = 1;   // Power, always >= 1
  std::vector<Expr> children;

  static Expr constant(Integer v) {
    Expr e;
    e.kind = Kind::Constant;
    e.value = std::move(v);
    return e;
  }
  static Expr atom_z() {
    Expr e;
    e.kind = Kind::Z;
    return e;
  }
  static Expr atom_e() {
    Expr e;
    e.kind = Kind::E;
    return e;
  }
  static Expr reference(std::string n) {
    Expr e;
    e.kind = Kind::Name;
    e.name = std::move(n);
    return e;
  }
  static Expr sum(std::vector<Expr> terms) {
    Expr e;
    e.kind = Kind::Sum;
    e.children = std::move(terms);
    return e;
  }
  static Expr product(std::vector<Expr> factors) {
    Expr e;
    e.kind = Kind::Product;
    e.children = std::move(factors);
    return e;
  }
  static Expr power(Expr base, unsigned k) {
    Expr e;
    e.kind = Kind::Power;
    e.exponent = k;
    e.children.push_back(std::move(base));
    return e;
  }

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Equation {
  std::string name;
  Expr rhs;
  friend bool operator==(const Equation&, const Equation&) = default;
};

/// Coefficients p_0..p_m of a polynomial self-recursion; p_m is nonzero unless m = 0.
struct Extraction {
  std::vector<NatPolynomial> coefficients;

  std::size_t degree() const { return coefficients.size() - 1; }
  const NatPolynomial& p(std::size_t i) const { return coefficients.at(i); }
  friend bool operator==(const Extraction&, const Extraction&) = default;
};

/// Closed right-hand side that mentions E: sum of c * z^a * E(z)^b.
struct ExponentialPolynomial {
  std::map<std::pair<unsigned, unsigned>, Integer> terms;

  std::complex<double> at_one() const {
    double v = 0.0;
    for (const auto& [key, c] : terms) v += c.convert_to<double>() * std::exp(static_cast<double>(key.second));
    return {v, 0.0};
  }
  friend bool operator==(const ExponentialPolynomial&, const ExponentialPolynomial&) = default;
};

/// Structural polynomial P_F(y) = p_0(1) + p_1(1) y + ... + p_m(1) y^m.
struct StructuralPolynomial {
  std::vector<Integer> coefficients;

  std::size_t degree() const {
    for (std::size_t i = coefficients.size(); i > 0; --i)
      if (coefficients[i - 1] != 0) return i - 1;
    return 0;
  }

  template <class T>
  std::complex<T> operator()(std::complex<T> y) const {
    std::complex<T> acc = 0;
    for (std::size_t i = coefficients.size(); i > 0; --i) acc = acc * y + static_cast<T>(coefficients[i - 1].template convert_to<long double>());
    return acc;
  }

  std::string to_string(char var = 'z') const {
    std::string out;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      if (coefficients[i] == 0) continue;
      if (!out.empty()) out += "+";
      const bool unit = coefficients[i] == 1;
      if (i == 0 || !unit) out += coefficients[i].str();
      if (i >= 1) out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const StructuralPolynomial&, const StructuralPolynomial&) = default;
};

inline StructuralPolynomial structural_polynomial(const Extraction& eq) {
  StructuralPolynomial p;
  for (const auto& pi : eq.coefficients) p.coefficients.push_back(pi.at_one());
  return p;
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline void print_expr(const Expr& e, std::string& out);

inline bool needs_parens(const Expr& child, Expr::Kind parent) {
  switch (parent) {
    case Expr::Kind::Sum:
      return child.kind == Expr::Kind::Sum;
    case Expr::Kind::Product:
      return child.kind == Expr::Kind::Sum || child.kind == Expr::Kind::Product;
    case Expr::Kind::Power:
      return child.kind == Expr::Kind::Sum || child.kind == Expr::Kind::Product || child.kind == Expr::Kind::Power;
    default:
      return false;
  }
}

inline void print_child(const Expr& child, Expr::Kind parent, std::string& out) {
  if (needs_parens(child, parent)) {
    out += '(';
    print_expr(child, out);
    out += ')';
  } else {
    print_expr(child, out);
  }
}

inline void print_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::Constant:
      out += e.value.str();
      break;
    case Expr::Kind::Z:
      out += 'Z';
      break;
    case Expr::Kind::E:
      out += 'E';
      break;
    case Expr::Kind::Name:
      out += e.name;
      break;
    case Expr::Kind::Sum:
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += " + ";
        print_child(e.children[i], e.kind, out);
      }
      break;
    case Expr::Kind::Product:
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += '*';
        print_child(e.children[i], e.kind, out);
      }
      break;
    case Expr::Kind::Power:
      print_child(e.children.front(), e.kind, out);
      out += '^' + std::to_string(e.exponent);
      break;
  }
}

}  // namespace detail

inline std::string to_string(const Expr& e) {
  std::string out;
  detail::print_expr(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Expansion into polynomials in (Z, E, self)

namespace detail {

using Monomial = std::array<unsigned, 3>;  // exponents of Z, E, self
using MultiPoly = std::map<Monomial, Integer>;

inline MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly c = a;
  for (const auto& [m, v] : b) c[m] += v;
  std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
  return c;
}

inline MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly c;
  for (const auto& [ma, va] : a)
    for (const auto& [mb, vb] : b) c[{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}] += va * vb;
  std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
  return c;
}

struct OpenReference {
  std::string name;
};

// Throws OpenReference when a name is neither `self` nor in `closed`.
inline MultiPoly expand(const Expr& e, const std::string& self, const std::map<std::string, MultiPoly>& closed) {
  switch (e.kind) {
    case Expr::Kind::Constant: {
      MultiPoly p;
      if (e.value != 0) p[{0, 0, 0}] = e.value;
      return p;
    }
    case Expr::Kind::Z:
      return {{{1, 0, 0}, 1}};
    case Expr::Kind::E:
      return {{{0, 1, 0}, 1}};
    case Expr::Kind::Name: {
      if (e.name == self) return {{{0, 0, 1}, 1}};
      auto it = closed.find(e.name);
      if (it == closed.end()) throw OpenReference{e.name};
      return it->second;
    }
    case Expr::Kind::Sum: {
      MultiPoly acc;
      for (const auto& c : e.children) acc = poly_add(acc, expand(c, self, closed));
      return acc;
    }
    case Expr::Kind::Product: {
      MultiPoly acc{{{0, 0, 0}, 1}};
      for (const auto& c : e.children) acc = poly_mul(acc, expand(c, self, closed));
      return acc;
    }
    case Expr::Kind::Power: {
      const MultiPoly base = expand(e.children.front(), self, closed);
      MultiPoly acc{{{0, 0, 0}, 1}};
      for (unsigned k = 0; k < e.exponent; ++k) acc = poly_mul(acc, base);
      return acc;
    }
  }
  return {};
}

inline void collect_references(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Name) out.insert(e.name);
  for (const auto& c : e.children) collect_references(c, out);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// NestedSystem

class NestedSystem {
 public:
  NestedSystem() = default;

  explicit NestedSystem(std::vector<Equation> equations) : equations_(std::move(equations)) { analyze(); }

  const std::vector<Equation>& equations() const { return equations_; }

  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  const Equation& equation(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw UndefinedName(std::string(name));
    return equations_[*i];
  }

  std::size_t index(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw UndefinedName(std::string(name));
    return *i;
  }

  bool has_extraction(std::string_view name) const {
    return std::holds_alternative<Extraction>(info_.at(index(name)).extraction);
  }

  const Extraction& extraction(std::string_view name) const {
    const auto& info = info_.at(index(name));
    if (const auto* ex = std::get_if<Extraction>(&info.extraction)) return *ex;
    throw NotPolynomialInSelf(std::string(name), std::get<std::string>(info.extraction));
  }

  // Present when the right side is non-recursive and involves E.
  const std::optional<ExponentialPolynomial>& exponential_form(std::string_view name) const {
    return info_.at(index(name)).exponential;
  }

  bool is_recursive(std::string_view name) const { return info_.at(index(name)).recursive; }

  friend bool operator==(const NestedSystem& a, const NestedSystem& b) { return a.equations_ == b.equations_; }

 private:
  struct NameInfo {
    bool recursive = false;
    std::variant<Extraction, std::string> extraction = std::string("not analyzed");
    std::optional<ExponentialPolynomial> exponential;
  };

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < equations_.size(); ++i)
      if (equations_[i].name == name) return i;
    return std::nullopt;
  }

  void analyze() {
    const std::size_t k = equations_.size();
    std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) {
      std::set<std::string> refs;
      detail::collect_references(equations_[i].rhs, refs);
      for (const auto& r : refs) reach[i][index(r)] = true;
    }
    for (std::size_t m = 0; m < k; ++m)
      for (std::size_t i = 0; i < k; ++i)
        if (reach[i][m])
          for (std::size_t j = 0; j < k; ++j)
            if (reach[m][j]) reach[i][j] = true;

    std::vector<bool> closed(k);
    for (std::size_t i = 0; i < k; ++i) {
      bool c = !reach[i][i];
      for (std::size_t j = 0; j < k && c; ++j)
        if (reach[i][j] && reach[j][j]) c = false;
      closed[i] = c;
    }

    // Expand closed names in dependency order (acyclic, so repeated sweeps terminate).
    std::map<std::string, detail::MultiPoly> closed_polys;
    for (bool progress = true; progress;) {
      progress = false;
      for (std::size_t i = 0; i < k; ++i) {
        if (!closed[i] || closed_polys.count(equations_[i].name)) continue;
        try {
          closed_polys[equations_[i].name] = detail::expand(equations_[i].rhs, "", closed_polys);
          progress = true;
        } catch (const detail::OpenReference&) {
        }
      }
    }

    info_.assign(k, {});
    for (std::size_t i = 0; i < k; ++i) {
      const std::string& name = equations_[i].name;
      auto& info = info_[i];
      info.recursive = reach[i][i];
      detail::MultiPoly poly;
      if (closed[i]) {
        poly = closed_polys.at(name);
      } else {
        std::string blocker;
        for (std::size_t j = 0; j < k; ++j)
          if (j != i && reach[i][j] && !closed[j]) {
            blocker = equations_[j].name;
            break;
          }
        if (!blocker.empty()) {
          const bool mutual = reach[i][i] && reach[index(blocker)][i];
          info.extraction = (mutual ? "mutually recursive with '" : "depends on recursive species '") + blocker + "'";
          continue;
        }
        poly = detail::expand(equations_[i].rhs, name, closed_polys);
      }

      bool has_e = false;
      std::size_t m = 0;
      for (const auto& [mono, v] : poly) {
        if (mono[1] > 0) has_e = true;
        m = std::max<std::size_t>(m, mono[2]);
      }
      if (has_e) {
        if (info.recursive) {
          info.extraction = std::string("coefficient involves E");
        } else {
          ExponentialPolynomial ep;
          for (const auto& [mono, v] : poly) ep.terms[{mono[0], mono[1]}] = v;
          info.exponential = std::move(ep);
          info.extraction = std::string("closed right side involves E");
        }
        continue;
      }

      std::vector<std::vector<Integer>> coeffs(m + 1);
      for (const auto& [mono, v] : poly) {
        auto& c = coeffs[mono[2]];
        if (c.size() <= mono[0]) c.resize(mono[0] + 1);
        c[mono[0]] += v;
      }
      Extraction ex;
      for (auto& c : coeffs) ex.coefficients.emplace_back(std::move(c));
      info.extraction = std::move(ex);
    }
  }

  std::vector<Equation> equations_;
  std::vector<NameInfo> info_;
};

inline std::string to_string(const NestedSystem& sys) {
  std::string out;
  for (const auto& eq : sys.equations()) out += eq.name + " = " + to_string(eq.rhs) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Parser
//
//   system   := { equation }
//   equation := NAME "=" expr
//   expr     := term { "+" term }
//   term     := factor { "*" factor }
//   factor   := atom [ "^" NAT ]
//   atom     := NAT | "Z" | "E" | NAME | "(" expr ")"

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  std::vector<Equation> system() {
    std::vector<Equation> eqs;
    std::set<std::string> seen;
    while (tok_.kind != Tok::End) {
      if (tok_.kind != Tok::Name) fail("species name");
      Token name = tok_;
      if (seen.count(name.text)) fail("a species name not defined earlier");
      advance();
      if (tok_.kind != Tok::Equals) fail("'='");
      advance();
      eqs.push_back({name.text, expr()});
      seen.insert(name.text);
    }
    return eqs;
  }

 private:
  enum class Tok { Nat, Name, Z, E, Equals, Plus, Star, Caret, LParen, RParen, End };

  struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
  };

  [[noreturn]] void fail(const std::string& expected) const { throw SyntaxError(tok_.line, tok_.column, expected); }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void advance() {
    skip_space();
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = column_;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        tok_.text += text_[pos_];
        bump();
      }
      tok_.kind = Tok::Nat;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        tok_.text += text_[pos_];
        bump();
      }
      tok_.kind = tok_.text == "Z" ? Tok::Z : tok_.text == "E" ? Tok::E : Tok::Name;
      return;
    }
    switch (c) {
      case '=': tok_.kind = Tok::Equals; break;
      case '+': tok_.kind = Tok::Plus; break;
      case '*': tok_.kind = Tok::Star; break;
      case '^': tok_.kind = Tok::Caret; break;
      case '(': tok_.kind = Tok::LParen; break;
      case ')': tok_.kind = Tok::RParen; break;
      default:
        fail("a token (got '" + std::string(1, c) + "')");
    }
    tok_.text = std::string(1, c);
    bump();
  }

  Expr expr() {
    std::vector<Expr> terms;
    terms.push_back(term());
    while (tok_.kind == Tok::Plus) {
      advance();
      terms.push_back(term());
    }
    return terms.size() == 1 ? std::move(terms.front()) : Expr::sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors;
    factors.push_back(factor());
    while (tok_.kind == Tok::Star) {
      advance();
      factors.push_back(factor());
    }
    return factors.size() == 1 ? std::move(factors.front()) : Expr::product(std::move(factors));
  }

  Expr factor() {
    Expr base = atom();
    if (tok_.kind != Tok::Caret) return base;
    advance();
    if (tok_.kind != Tok::Nat) fail("exponent");
    const Integer k(tok_.text);
    if (k < 1 || k > 1000) fail("exponent between 1 and 1000");
    advance();
    return Expr::power(std::move(base), k.convert_to<unsigned>());
  }

  Expr atom() {
    switch (tok_.kind) {
      case Tok::Nat: {
        Expr e = Expr::constant(Integer(tok_.text));
        advance();
        return e;
      }
      case Tok::Z:
        advance();
        return Expr::atom_z();
      case Tok::E:
        advance();
        return Expr::atom_e();
      case Tok::Name: {
        Expr e = Expr::reference(tok_.text);
        advance();
        return e;
      }
      case Tok::LParen: {
        advance();
        Expr e = expr();
        if (tok_.kind != Tok::RParen) fail("')'");
        advance();
        return e;
      }
      default:
        fail("term");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token tok_;
};

}  // namespace detail

inline NestedSystem parse(std::string_view text) {
  std::vector<Equation> eqs = detail::Parser(text).system();
  std::set<std::string> defined;
  for (const auto& eq : eqs) defined.insert(eq.name);
  for (const auto& eq : eqs) {
    std::set<std::string> refs;
    detail::collect_references(eq.rhs, refs);
    for (const auto& r : refs)
      if (!defined.count(r)) throw UndefinedName(r);
  }
  return NestedSystem(std::move(eqs));
}

}  // namespace agc
