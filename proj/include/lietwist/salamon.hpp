#pragma once

#include "lietwist/algebra.hpp"
#include "lietwist/error.hpp"
#include "lietwist/expr.hpp"

#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lietwist {

/// Structure equations "(de^1, ..., de^n)" parsed once, instantiable at any
/// parameter binding. de^k = sum s^k_{ij} e^{ij} gives c^k_{ij} = -s^k_{ij}.
class SalamonTemplate {
 public:
  static SalamonTemplate parse(std::string_view text) {
    SalamonTemplate t;
    t.source_ = std::string(text);
    std::size_t open = text.find_first_not_of(" \t\r\n");
    if (open == std::string_view::npos || text[open] != '(') throw ParseError("expected '('", open == std::string_view::npos ? 0 : open);
    std::size_t close = text.find_last_not_of(" \t\r\n");
    if (text[close] != ')' || close == open) throw ParseError("expected ')'", close + 1);

    int depth = 0;
    std::size_t start = open + 1;
    for (std::size_t i = open + 1; i <= close; ++i) {
      char c = text[i];
      if (c == '(') ++depth;
      if (c == ')' && i < close) {
        if (--depth < 0) throw ParseError("unbalanced ')'", i);
      }
      if ((c == ',' && depth == 0) || i == close) {
        if (i == close && depth != 0) throw ParseError("unbalanced '('", i);
        std::string_view slot = text.substr(start, i - start);
        if (slot.find_first_not_of(" \t\r\n") == std::string_view::npos) throw ParseError("empty slot", start);
        t.slots_.push_back(Expr::parse(slot, AtomMode::index_pair, start));
        start = i + 1;
      }
    }

    const std::size_t n = t.slots_.size();
    if (n > 9) throw ParseError("juxtaposed-digit notation supports at most 9 slots", open);
    for (const auto& e : t.slots_) {
      for (const auto& occ : e.atoms()) {
        for (int d : occ.index) {
          if (d < 1 || static_cast<std::size_t>(d) > n) {
            throw ParseError("index digit " + std::to_string(d) + " exceeds dimension " + std::to_string(n), occ.position);
          }
        }
        if (occ.index[0] == occ.index[1]) throw ParseError("repeated index in e^{ii}", occ.position);
      }
    }
    return t;
  }

  std::size_t dim() const { return slots_.size(); }
  const std::string& source() const { return source_; }

  std::set<std::string> parameters() const {
    std::set<std::string> out;
    for (const auto& e : slots_) out.merge(e.parameters());
    return out;
  }

  LieAlgebra instantiate(const ParamBinding& binding) const {
    const std::size_t n = dim();
    LieAlgebra L(n);
    // d[i][j] collects c^k_{ij} for i < j.
    std::vector<std::vector<Vec>> c(n, std::vector<Vec>(n, zero_vec(n)));
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& [idx, s] : slots_[k].evaluate(binding).as_form()) {
        auto i = static_cast<std::size_t>(idx[0] - 1), j = static_cast<std::size_t>(idx[1] - 1);
        if (i < j) {
          c[i][j][k] -= s;
        } else {
          c[j][i][k] += s;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) L.set_bracket(i, j, c[i][j]);
    return L;
  }

 private:
  std::string source_;
  std::vector<Expr> slots_;
};

inline LieAlgebra parse_salamon(std::string_view text, const ParamBinding& binding = {}) {
  return SalamonTemplate::parse(text).instantiate(binding);
}

namespace detail {

inline std::string salamon_coefficient(const Rational& mag) {
  if (mag == Rational(1)) return "";
  std::string s = mag.str();
  if (mag.is_integer() && s.size() == 2) s += "/1";
  return s + "*";
}

}  // namespace detail

/// Canonical structure equations, e.g. "(0,-12,-13,0)".
inline std::string print_salamon(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  if (n > 9) throw DomainError("print_salamon supports dimension at most 9");
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < n; ++k) {
    if (k) os << ",";
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational s = -L.structure_constant(i, j, k);
        if (s.is_zero()) continue;
        if (s.sign() < 0) {
          os << "-";
        } else if (!first) {
          os << "+";
        }
        os << detail::salamon_coefficient(s.abs()) << i + 1 << j + 1;
        first = false;
      }
    }
    if (first) os << "0";
  }
  os << ")";
  return os.str();
}

/// Linear combination of basis atoms written like "e12 + sigma e36".
/// Parsed once, evaluated per binding.
class FormTemplate {
 public:
  static FormTemplate parse(std::string_view text, std::size_t dim, std::size_t degree, std::size_t base_offset = 0) {
    FormTemplate t;
    t.expr_ = Expr::parse(text, AtomMode::basis, base_offset);
    t.dim_ = dim;
    t.degree_ = degree;
    for (const auto& occ : t.expr_.atoms()) {
      if (occ.index.size() != degree) {
        throw ParseError("expected a degree-" + std::to_string(degree) + " basis element", occ.position);
      }
      for (int d : occ.index) {
        if (static_cast<std::size_t>(d) > dim) throw ParseError("basis index exceeds dimension " + std::to_string(dim), occ.position);
      }
    }
    return t;
  }

  std::set<std::string> parameters() const { return expr_.parameters(); }
  const std::string& source() const { return expr_.source(); }

  KForm form(const ParamBinding& binding) const {
    KForm f(degree_, dim_);
    for (const auto& [idx, c] : expr_.evaluate(binding).as_form()) {
      KForm::Index i;
      for (int d : idx) i.push_back(static_cast<std::size_t>(d - 1));
      f.add(i, c);
    }
    return f;
  }

  /// Coordinates, for degree-1 atoms read as vectors e_i.
  Vec vector(const ParamBinding& binding) const {
    if (degree_ != 1) throw DomainError("not a vector expression");
    return form(binding).as_covector();
  }

 private:
  Expr expr_;
  std::size_t dim_ = 0;
  std::size_t degree_ = 1;
};

inline KForm parse_form(std::string_view text, std::size_t dim, std::size_t degree, const ParamBinding& binding = {}) {
  return FormTemplate::parse(text, dim, degree).form(binding);
}

inline Vec parse_vector(std::string_view text, std::size_t dim, const ParamBinding& binding = {}) {
  return FormTemplate::parse(text, dim, 1).vector(binding);
}

}  // namespace lietwist
