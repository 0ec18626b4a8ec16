#pragma once

// Arithmetic expressions over rationals, named parameters and basis atoms.
//
// One grammar serves three contexts:
//   * scalar       -- plain arithmetic: `mu(1+sigma)/tau`, `w_34^2 - 1`
//   * index pairs  -- Salamon slots: a two-digit literal `ij` is e^{ij}
//   * basis atoms  -- `e3`, `e12`, `e345` are basis vectors / forms
//
// Multiplication is `*`, `×`, `·` or juxtaposition (`2 x`, `x23`, `a(13+24)`).
// `^` takes an integer exponent; `sqrt(..)` / `√(..)` needs a rational square.
// Identifiers are letters (any non-ASCII byte counts as a letter), with digits
// allowed only after an underscore: `w_34` is one name, `x23` is x times e^{23}.

#include "lietwist/error.hpp"
#include "lietwist/rational.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lietwist {

/// Parameter name -> value.
class ParamBinding {
 public:
  ParamBinding() = default;
  ParamBinding(std::initializer_list<std::pair<const std::string, Rational>> init) {
    for (const auto& [k, v] : init) bind(k, v);
  }

  static bool valid_name(std::string_view name) {
    if (name.empty()) return false;
    auto c0 = static_cast<unsigned char>(name[0]);
    if (!(std::isalpha(c0) || c0 >= 0x80)) return false;
    for (char ch : name) {
      auto c = static_cast<unsigned char>(ch);
      if (!(std::isalnum(c) || c == '_' || c >= 0x80)) return false;
    }
    return true;
  }

  /// Adds a new name; rejects duplicates and malformed names.
  void bind(const std::string& name, const Rational& value) {
    if (!valid_name(name)) throw DomainError("invalid parameter name '" + name + "'");
    if (!values_.emplace(name, value).second) {
      throw DomainError("duplicate parameter '" + name + "'");
    }
  }

  /// Adds or overwrites.
  void set(const std::string& name, const Rational& value) {
    if (!valid_name(name)) throw DomainError("invalid parameter name '" + name + "'");
    values_[name] = value;
  }

  std::optional<Rational> get(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const std::string& name) const { return values_.contains(name); }
  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  std::string str() const {
    std::string s;
    for (const auto& [k, v] : values_) {
      if (!s.empty()) s += ", ";
      s += k + "=" + v.str();
    }
    return s;
  }

  friend bool operator==(const ParamBinding&, const ParamBinding&) = default;

 private:
  std::map<std::string, Rational> values_;
};

enum class AtomMode {
  scalar,      ///< no atoms
  index_pair,  ///< two-digit literals are e^{ij}
  basis,       ///< eN... are basis atoms
};

/// Multi-index of an atom, digits as written (1-based).
using AtomIndex = std::vector<int>;

/// Result of evaluation: a scalar, or a linear combination of atoms.
struct LinearValue {
  Rational scalar;
  std::map<AtomIndex, Rational> terms;
  bool is_form = false;

  static LinearValue of_scalar(Rational r) { return {std::move(r), {}, false}; }
  static LinearValue of_atom(AtomIndex idx) {
    LinearValue v;
    v.terms[std::move(idx)] = 1;
    v.is_form = true;
    return v;
  }

  /// The atom combination; a zero scalar counts as the empty combination.
  std::map<AtomIndex, Rational> as_form() const {
    if (is_form) return terms;
    if (scalar.is_zero()) return {};
    throw EvalError("expected a combination of basis elements, got the scalar " + scalar.str());
  }

  void prune() {
    std::erase_if(terms, [](const auto& kv) { return kv.second.is_zero(); });
  }
};

/// Position-tagged atom occurrence, for validation before evaluation.
struct AtomOccurrence {
  AtomIndex index;
  std::size_t position;
};

class Expr {
 public:
  /// Parses `text`; error positions are reported as `base_offset + offset`.
  static Expr parse(std::string_view text, AtomMode mode, std::size_t base_offset = 0);

  LinearValue evaluate(const ParamBinding& binding) const { return eval(*root_, binding); }

  Rational evaluate_scalar(const ParamBinding& binding) const {
    auto v = evaluate(binding);
    if (v.is_form) throw EvalError("expected a scalar expression");
    return v.scalar;
  }

  std::set<std::string> parameters() const {
    std::set<std::string> out;
    collect_params(*root_, out);
    return out;
  }

  std::vector<AtomOccurrence> atoms() const {
    std::vector<AtomOccurrence> out;
    collect_atoms(*root_, out);
    for (auto& occ : out) occ.position += base_offset_;
    return out;
  }

  const std::string& source() const { return source_; }

 private:
  enum class Kind { number, param, atom, neg, add, sub, mul, div, pow, sqrt };

  struct Node {
    Kind kind;
    std::size_t pos = 0;
    Rational number;
    std::string name;
    AtomIndex atom;
    int exponent = 0;
    std::shared_ptr<const Node> lhs, rhs;
  };
  using NodePtr = std::shared_ptr<const Node>;

  struct Token {
    enum class Type { number, ident, atom, op, sqrt, end } type;
    std::string text;
    char op = 0;
    std::size_t pos = 0;
  };

  class Parser;

  static LinearValue eval(const Node& n, const ParamBinding& b);
  static void collect_params(const Node& n, std::set<std::string>& out) {
    if (n.kind == Kind::param) out.insert(n.name);
    if (n.lhs) collect_params(*n.lhs, out);
    if (n.rhs) collect_params(*n.rhs, out);
  }
  static void collect_atoms(const Node& n, std::vector<AtomOccurrence>& out) {
    if (n.kind == Kind::atom) out.push_back({n.atom, n.pos});
    if (n.lhs) collect_atoms(*n.lhs, out);
    if (n.rhs) collect_atoms(*n.rhs, out);
  }

  std::string source_;
  std::size_t base_offset_ = 0;
  NodePtr root_;
};

// ---------------------------------------------------------------------------

class Expr::Parser {
 public:
  Parser(std::string_view text, AtomMode mode, std::size_t base) : text_(text), mode_(mode), base_(base) {
    tokenize();
  }

  NodePtr parse_all() {
    auto e = expression();
    if (peek().type != Token::Type::end) fail("unexpected '" + peek().text + "'", peek().pos);
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t pos) const { throw ParseError(msg, base_ + pos); }

  static bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }

  // Multi-byte operator glyphs: returns the ASCII operator and byte length.
  std::optional<std::pair<char, std::size_t>> glyph(std::size_t i) const {
    auto at = [&](std::string_view g) { return text_.substr(i, g.size()) == g; };
    if (at("\xC3\x97")) return std::pair{'*', 2};      // ×
    if (at("\xC2\xB7")) return std::pair{'*', 2};      // ·
    if (at("\xE2\x8B\x85")) return std::pair{'*', 3};  // ⋅
    if (at("\xE2\x88\x92")) return std::pair{'-', 3};  // −
    if (at("\xE2\x88\x9A")) return std::pair{'r', 3};  // √
    return std::nullopt;
  }

  void tokenize() {
    std::size_t i = 0;
    const std::size_t n = text_.size();
    while (i < n) {
      auto c = static_cast<unsigned char>(text_[i]);
      if (std::isspace(c)) {
        ++i;
        continue;
      }
      if (auto g = glyph(i)) {
        if (g->first == 'r') {
          tokens_.push_back({Token::Type::sqrt, "\xE2\x88\x9A", 0, i});
        } else {
          tokens_.push_back({Token::Type::op, std::string(1, g->first), g->first, i});
        }
        i += g->second;
        continue;
      }
      if (std::isdigit(c)) {
        std::size_t j = i;
        while (j < n && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        tokens_.push_back({Token::Type::number, std::string(text_.substr(i, j - i)), 0, i});
        i = j;
        continue;
      }
      if (ident_start(c)) {
        std::size_t j = i;
        bool underscore = false;
        while (j < n) {
          auto d = static_cast<unsigned char>(text_[j]);
          if (glyph(j)) break;
          if (d == '_') {
            underscore = true;
          } else if (std::isdigit(d)) {
            if (!underscore) break;
          } else if (!(std::isalpha(d) || d >= 0x80)) {
            break;
          }
          ++j;
        }
        std::string word(text_.substr(i, j - i));
        if (mode_ == AtomMode::basis && word == "e" && j < n && std::isdigit(static_cast<unsigned char>(text_[j]))) {
          std::size_t k = j;
          while (k < n && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
          tokens_.push_back({Token::Type::atom, std::string(text_.substr(j, k - j)), 0, i});
          i = k;
          continue;
        }
        if (word == "sqrt") {
          tokens_.push_back({Token::Type::sqrt, word, 0, i});
        } else {
          tokens_.push_back({Token::Type::ident, word, 0, i});
        }
        i = j;
        continue;
      }
      if (std::string_view("+-*/^()").find(static_cast<char>(c)) != std::string_view::npos) {
        tokens_.push_back({Token::Type::op, std::string(1, static_cast<char>(c)), static_cast<char>(c), i});
        ++i;
        continue;
      }
      fail(std::string("unexpected character '") + static_cast<char>(c) + "'", i);
    }
    tokens_.push_back({Token::Type::end, "end of input", 0, n});

    if (mode_ == AtomMode::index_pair) {
      // A two-digit literal is an index pair unless it touches '/' or '^'.
      for (std::size_t t = 0; t < tokens_.size(); ++t) {
        auto& tok = tokens_[t];
        if (tok.type != Token::Type::number || tok.text.size() != 2) continue;
        bool prev_op = t > 0 && tokens_[t - 1].type == Token::Type::op &&
                       (tokens_[t - 1].op == '/' || tokens_[t - 1].op == '^');
        bool next_op = tokens_[t + 1].type == Token::Type::op && (tokens_[t + 1].op == '/' || tokens_[t + 1].op == '^');
        if (!prev_op && !next_op) tok.type = Token::Type::atom;
      }
    }
  }

  const Token& peek() const { return tokens_[cursor_]; }
  const Token& next() { return tokens_[cursor_++]; }
  bool peek_op(char op) const { return peek().type == Token::Type::op && peek().op == op; }

  static NodePtr make(Kind k, std::size_t pos, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->pos = pos;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  // expression := ['+'|'-'] term (('+'|'-') term)*
  NodePtr expression() {
    NodePtr lhs;
    if (peek_op('-')) {
      auto pos = next().pos;
      lhs = make(Kind::neg, pos, term());
    } else {
      if (peek_op('+')) next();
      lhs = term();
    }
    while (peek_op('+') || peek_op('-')) {
      const auto& t = next();
      lhs = make(t.op == '+' ? Kind::add : Kind::sub, t.pos, lhs, term());
    }
    return lhs;
  }

  bool starts_primary() const {
    switch (peek().type) {
      case Token::Type::number:
      case Token::Type::ident:
      case Token::Type::atom:
      case Token::Type::sqrt:
        return true;
      case Token::Type::op:
        return peek().op == '(';
      default:
        return false;
    }
  }

  // term := signed (('*' | '/') signed | <juxtaposed power>)*
  NodePtr term() {
    auto lhs = signed_factor();
    while (true) {
      if (peek_op('*') || peek_op('/')) {
        const auto& t = next();
        lhs = make(t.op == '*' ? Kind::mul : Kind::div, t.pos, lhs, signed_factor());
      } else if (starts_primary()) {
        auto pos = peek().pos;
        lhs = make(Kind::mul, pos, lhs, power());
      } else {
        return lhs;
      }
    }
  }

  NodePtr signed_factor() {
    if (peek_op('-')) {
      auto pos = next().pos;
      return make(Kind::neg, pos, signed_factor());
    }
    if (peek_op('+')) {
      next();
      return signed_factor();
    }
    return power();
  }

  // power := primary ('^' ['-'] INT)?
  NodePtr power() {
    auto base = primary();
    if (!peek_op('^')) return base;
    auto pos = next().pos;
    bool negative = false;
    if (peek_op('-')) {
      next();
      negative = true;
    }
    if (peek().type != Token::Type::number) fail("expected an integer exponent", peek().pos);
    const auto& t = next();
    if (t.text.size() > 4) fail("exponent too large", t.pos);
    auto n = make(Kind::pow, pos, base);
    auto node = std::const_pointer_cast<Node>(n);
    node->exponent = std::stoi(t.text) * (negative ? -1 : 1);
    return n;
  }

  NodePtr primary() {
    const auto& t = next();
    switch (t.type) {
      case Token::Type::number: {
        auto n = std::const_pointer_cast<Node>(make(Kind::number, t.pos));
        n->number = Rational::parse(t.text);
        return n;
      }
      case Token::Type::ident: {
        auto n = std::const_pointer_cast<Node>(make(Kind::param, t.pos));
        n->name = t.text;
        return n;
      }
      case Token::Type::atom: {
        auto n = std::const_pointer_cast<Node>(make(Kind::atom, t.pos));
        for (char d : t.text) {
          if (d == '0') fail("index digit 0", t.pos);
          n->atom.push_back(d - '0');
        }
        return n;
      }
      case Token::Type::sqrt: {
        if (peek_op('(')) {
          next();
          auto inner = expression();
          if (!peek_op(')')) fail("expected ')'", peek().pos);
          next();
          return make(Kind::sqrt, t.pos, inner);
        }
        return make(Kind::sqrt, t.pos, primary());
      }
      case Token::Type::op:
        if (t.op == '(') {
          auto inner = expression();
          if (!peek_op(')')) fail("expected ')'", peek().pos);
          next();
          return inner;
        }
        fail("unexpected '" + t.text + "'", t.pos);
      case Token::Type::end:
        fail("unexpected end of input", t.pos);
    }
    fail("unexpected token", t.pos);
  }

  std::string_view text_;
  AtomMode mode_;
  std::size_t base_;
  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
};

inline Expr Expr::parse(std::string_view text, AtomMode mode, std::size_t base_offset) {
  Expr e;
  e.source_ = std::string(text);
  e.base_offset_ = base_offset;
  Parser p(text, mode, base_offset);
  e.root_ = p.parse_all();
  return e;
}

inline LinearValue Expr::eval(const Node& n, const ParamBinding& b) {
  auto scale = [](LinearValue v, const Rational& s) {
    if (!v.is_form) {
      v.scalar *= s;
      return v;
    }
    for (auto& [k, c] : v.terms) c *= s;
    v.prune();
    return v;
  };
  auto combine = [](LinearValue a, const LinearValue& c, int sign) {
    if (!a.is_form && !c.is_form) {
      if (sign > 0) a.scalar += c.scalar;
      else a.scalar -= c.scalar;
      return a;
    }
    auto lhs = a.as_form();
    for (const auto& [k, v] : c.as_form()) {
      if (sign > 0) lhs[k] += v;
      else lhs[k] -= v;
    }
    LinearValue r;
    r.is_form = true;
    r.terms = std::move(lhs);
    r.prune();
    return r;
  };

  switch (n.kind) {
    case Kind::number:
      return LinearValue::of_scalar(n.number);
    case Kind::param: {
      auto v = b.get(n.name);
      if (!v) throw UnboundParameter(n.name);
      return LinearValue::of_scalar(*v);
    }
    case Kind::atom:
      return LinearValue::of_atom(n.atom);
    case Kind::neg:
      return scale(eval(*n.lhs, b), Rational(-1));
    case Kind::add:
      return combine(eval(*n.lhs, b), eval(*n.rhs, b), +1);
    case Kind::sub:
      return combine(eval(*n.lhs, b), eval(*n.rhs, b), -1);
    case Kind::mul: {
      auto l = eval(*n.lhs, b);
      auto r = eval(*n.rhs, b);
      if (l.is_form && r.is_form) throw EvalError("product of two basis combinations");
      if (l.is_form) return scale(std::move(l), r.scalar);
      return scale(std::move(r), l.scalar);
    }
    case Kind::div: {
      auto l = eval(*n.lhs, b);
      auto r = eval(*n.rhs, b);
      if (r.is_form) throw EvalError("division by a basis combination");
      if (r.scalar.is_zero()) throw EvalError("division by zero");
      return scale(std::move(l), r.scalar.inverse());
    }
    case Kind::pow: {
      auto l = eval(*n.lhs, b);
      if (l.is_form) throw EvalError("power of a basis combination");
      if (n.exponent < 0 && l.scalar.is_zero()) throw EvalError("division by zero");
      return LinearValue::of_scalar(l.scalar.pow(n.exponent));
    }
    case Kind::sqrt: {
      auto l = eval(*n.lhs, b);
      if (l.is_form) throw EvalError("square root of a basis combination");
      auto r = l.scalar.sqrt();
      if (!r) throw EvalError("square root of " + l.scalar.str() + " is not rational");
      return LinearValue::of_scalar(*r);
    }
  }
  throw EvalError("corrupt expression");
}

/// Convenience: evaluate a scalar expression in one call.
inline Rational eval_scalar(std::string_view text, const ParamBinding& binding = {}) {
  return Expr::parse(text, AtomMode::scalar).evaluate_scalar(binding);
}

}  // namespace lietwist
