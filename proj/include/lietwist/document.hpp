#pragma once

#include "lietwist/algebra.hpp"
#include "lietwist/error.hpp"
#include "lietwist/expr.hpp"
#include "lietwist/hermitian.hpp"
#include "lietwist/salamon.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace lietwist {

/// Malformed input document; line and column are 1-based.
class DocumentError : public Error {
 public:
  DocumentError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// One representation image: rho(e_label) as a matrix, with its source line.
struct RhoImage {
  std::size_t label;
  Matrix matrix;
  std::size_t line;
};

/// Sectioned text input:
///
///   [algebra]   dim = 4; structure = (0,-12,-13,0); other keys bind parameters;
///               basis = e3..e6 names the basis e3..e6 instead of e1..e4
///   [complex]   e1 -> e4; e2 -> e3          (one image per line or ';'-separated)
///   [metric]    omega = 3 e14 + e23   or   row = 3, 0, 0, 0  (one per row)
///   [rho1]      e1 = 0, -1; 1, 0            (rows ';'-separated, entries ',')
///   [rho2]      same, for the second representation
///   [params]    sigma = 3
///
/// '#' starts a comment. Every section is optional at parse time; accessors
/// throw when the section they need is missing.
class InputDocument {
 public:
  static InputDocument parse(std::string_view text, std::string source = "<input>") {
    InputDocument d;
    d.source_ = std::move(source);
    d.read(text);
    d.resolve();
    return d;
  }

  static InputDocument load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
  }

  const std::string& source() const { return source_; }
  /// Label of the first basis vector minus one (2 for basis = e3..e6).
  std::size_t offset() const { return offset_; }
  const ParamBinding& params() const { return params_; }
  bool has_algebra() const { return algebra_.has_value(); }
  bool has_complex() const { return J_.has_value(); }
  bool has_metric() const { return g_.has_value(); }
  bool has_rho(int which) const { return sections_.contains(which == 1 ? "rho1" : "rho2"); }

  std::size_t dim() const {
    if (!dim_) throw error(1, "document has no [algebra] section");
    return *dim_;
  }

  const LieAlgebra& algebra() const {
    if (!algebra_) throw error(1, "document has no [algebra] section");
    return *algebra_;
  }

  const Endo& complex_structure() const {
    if (!J_) throw error(1, "document has no [complex] section");
    return *J_;
  }

  /// Metric matrix as given; only symmetry is enforced here.
  const Metric& metric() const {
    if (!g_) throw error(1, "document has no [metric] section");
    return *g_;
  }

  const std::optional<KForm>& omega() const { return omega_; }

  HermitianStructure hermitian() const { return HermitianStructure(algebra(), complex_structure(), metric()); }
  HermitianStructure hermitian_unchecked() const {
    return HermitianStructure::unchecked(algebra(), complex_structure(), metric());
  }

  /// Images of rho{which}: source_dim matrices of size target_dim, missing
  /// basis vectors mapping to zero. Keys name source basis vectors in the
  /// source's labels, e_{source_offset+1} .. e_{source_offset+source_dim}.
  std::vector<Endo> rho(int which, std::size_t source_dim, std::size_t target_dim, std::size_t source_offset = 0) const {
    std::vector<Endo> out(source_dim, Matrix(target_dim, target_dim));
    const auto& images = which == 1 ? rho1_ : rho2_;
    for (const auto& im : images) {
      if (im.label <= source_offset || im.label > source_offset + source_dim) {
        throw error(im.line, "e" + std::to_string(im.label) + " is not a basis vector of the source");
      }
      if (im.matrix.rows() != target_dim || im.matrix.cols() != target_dim) {
        throw error(im.line, "image must be " + std::to_string(target_dim) + "x" + std::to_string(target_dim));
      }
      out[im.label - source_offset - 1] = im.matrix;
    }
    return out;
  }

 private:
  struct Pending {
    std::string text;
    std::size_t line, column;
  };

  struct Line {
    std::size_t number;
    std::string text;   // comment stripped
    std::size_t start;  // column offset of text within the raw line
  };

  DocumentError error(std::size_t line, const std::string& what, std::size_t column = 1) const {
    return DocumentError(source_, line, column, what);
  }

  static std::string trim(std::string_view s, std::size_t* offset = nullptr) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
      if (offset) *offset = s.size();
      return {};
    }
    auto e = s.find_last_not_of(" \t\r");
    if (offset) *offset = b;
    return std::string(s.substr(b, e - b + 1));
  }

  void read(std::string_view text) {
    static const std::vector<std::string> known = {"algebra", "complex", "metric", "rho1", "rho2", "params"};
    std::istringstream in{std::string(text)};
    std::string raw, current;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
      ++number;
      std::string_view body(raw);
      body = body.substr(0, body.find('#'));
      std::size_t off = 0;
      std::string t = trim(body, &off);
      if (t.empty()) continue;
      if (t.front() == '[') {
        if (t.back() != ']') throw error(number, "unterminated section header", off + 1);
        current = t.substr(1, t.size() - 2);
        if (std::find(known.begin(), known.end(), current) == known.end()) throw error(number, "unknown section [" + current + "]", off + 1);
        if (sections_.contains(current)) throw error(number, "repeated section [" + current + "]", off + 1);
        sections_[current] = number;
        continue;
      }
      if (current.empty()) throw error(number, "content before the first section", off + 1);
      lines_[current].push_back({number, t, off});
    }
  }

  /// Splits "key = value" (or "key -> value" when arrow) into trimmed key,
  /// value and the value's 0-based column.
  std::tuple<std::string, std::string, std::size_t> key_value(const Line& l, std::string_view sep) const {
    auto at = l.text.find(sep);
    if (at == std::string::npos) throw error(l.number, "expected 'key " + std::string(sep) + " value'", l.start + 1);
    std::size_t voff = 0;
    std::string value = trim(std::string_view(l.text).substr(at + sep.size()), &voff);
    return {trim(std::string_view(l.text).substr(0, at)), value, l.start + at + sep.size() + voff};
  }

  /// Runs fn, mapping parse and evaluation errors to this line.
  template <class F>
  auto at_line(std::size_t line, std::size_t column, F&& fn) const {
    try {
      return fn();
    } catch (const ParseError& e) {
      throw error(line, e.message(), column + e.position() + 1);
    } catch (const UnboundParameter& e) {
      throw error(line, e.what(), column + 1);
    } catch (const EvalError& e) {
      throw error(line, e.what(), column + 1);
    }
  }

  Rational scalar(const std::string& text, std::size_t line, std::size_t column) const {
    return at_line(line, column, [&] { return Expr::parse(text, AtomMode::scalar).evaluate_scalar(params_); });
  }

  static std::optional<std::size_t> label(std::string_view key) {
    if (key.size() < 2 || key.size() > 4 || key[0] != 'e' || key.find_first_not_of("0123456789", 1) != std::string_view::npos) return std::nullopt;
    return std::stoul(std::string(key.substr(1)));
  }

  /// 0-based index of the basis vector named `key`; limit 0 means unbounded.
  std::size_t basis_index(const std::string& key, const Line& l, std::size_t limit) const {
    auto k = label(key);
    if (!k) throw error(l.number, "expected a basis vector eK, got '" + key + "'", l.start + 1);
    if (*k <= offset_ || (limit && *k > offset_ + limit)) throw error(l.number, "basis vector " + key + " out of range", l.start + 1);
    return *k - offset_ - 1;
  }

  void read_basis(const Pending& b) {
    auto dots = b.text.find("..");
    std::optional<std::size_t> lo, hi;
    if (dots != std::string::npos) {
      lo = label(trim(std::string_view(b.text).substr(0, dots)));
      hi = label(trim(std::string_view(b.text).substr(dots + 2)));
    }
    if (!lo || !hi || *lo < 1 || *hi < *lo || *hi > 9) throw error(b.line, "expected 'basis = eA..eB' with 1 <= A <= B <= 9", b.column + 1);
    offset_ = *lo - 1;
    basis_count_ = *hi - *lo + 1;
  }

  /// Salamon string in the document's labels. With an offset the string is
  /// parsed in dimension offset + n with leading zero slots, then restricted.
  LieAlgebra parse_structure(const std::string& text, std::size_t line, std::size_t column) const {
    if (offset_ == 0) return at_line(line, column, [&] { return parse_salamon(text, params_); });
    auto open = text.find('(');
    if (open == std::string::npos) throw error(line, "expected '('", column + 1);
    std::string pad;
    for (std::size_t i = 0; i < offset_; ++i) pad += "0,";
    std::string padded = text.substr(0, open + 1) + pad + text.substr(open + 1);
    LieAlgebra big;
    try {
      big = parse_salamon(padded, params_);
    } catch (const ParseError& e) {
      std::size_t pos = e.position() > open ? (e.position() >= open + 1 + pad.size() ? e.position() - pad.size() : open + 1) : e.position();
      std::string msg = e.message();
      if (auto at = msg.find(" exceeds dimension"); at != std::string::npos) msg = msg.substr(0, at) + " is outside the basis";
      throw error(line, msg, column + pos + 1);
    } catch (const Error& e) {
      throw error(line, e.what(), column + 1);
    }
    const std::size_t n = big.dim() - offset_;
    LieAlgebra L(n);
    for (std::size_t i = 0; i < big.dim(); ++i) {
      for (std::size_t j = 0; j < big.dim(); ++j) {
        for (std::size_t k = 0; k < big.dim(); ++k) {
          if (big.structure_constant(i, j, k).is_zero()) continue;
          if (i < offset_ || j < offset_ || k < offset_) throw error(line, "structure uses a label below e" + std::to_string(offset_ + 1), column + 1);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Vec v = big.bracket(offset_ + i, offset_ + j);
        L.set_bracket(i, j, Vec(v.begin() + static_cast<std::ptrdiff_t>(offset_), v.end()));
      }
    }
    return L;
  }

  Vec parse_vector_at(const std::string& text, std::size_t n, std::size_t line, std::size_t column) const {
    Vec v = at_line(line, column, [&] { return FormTemplate::parse(text, offset_ + n, 1).vector(params_); });
    if (!is_zero(std::span<const Rational>(v.data(), offset_))) throw error(line, "vector uses a label below e" + std::to_string(offset_ + 1), column + 1);
    return Vec(v.begin() + static_cast<std::ptrdiff_t>(offset_), v.end());
  }

  KForm parse_form_at(const std::string& text, std::size_t n, std::size_t line, std::size_t column) const {
    KForm big = at_line(line, column, [&] { return FormTemplate::parse(text, offset_ + n, 2).form(params_); });
    KForm f(2, n);
    for (const auto& [idx, c] : big.coefficients()) {
      if (idx[0] < offset_) throw error(line, "form uses a label below e" + std::to_string(offset_ + 1), column + 1);
      f.set({idx[0] - offset_, idx[1] - offset_}, c);
    }
    return f;
  }

  void resolve() {
    std::optional<Pending> structure, dim_decl, basis;

    for (const char* section : {"params", "algebra"}) {
      for (const auto& l : lines_[section]) {
        auto [key, value, col] = key_value(l, "=");
        if (std::string_view(section) == "algebra" && key == "structure") {
          structure = Pending{value, l.number, col};
        } else if (std::string_view(section) == "algebra" && key == "basis") {
          basis = Pending{value, l.number, col};
        } else if (std::string_view(section) == "algebra" && key == "dim") {
          dim_decl = Pending{value, l.number, col};
        } else {
          if (!ParamBinding::valid_name(key)) throw error(l.number, "invalid parameter name '" + key + "'", l.start + 1);
          if (params_.contains(key)) throw error(l.number, "parameter '" + key + "' assigned twice", l.start + 1);
          params_.set(key, scalar(value, l.number, col));
        }
      }
    }

    if (sections_.contains("algebra")) {
      if (!structure) throw error(sections_["algebra"], "[algebra] needs 'structure = (...)'");
      if (basis) read_basis(*basis);
      algebra_ = parse_structure(structure->text, structure->line, structure->column);
      dim_ = algebra_->dim();
      if (basis && basis_count_ != *dim_) {
        throw error(basis->line, "basis names " + std::to_string(basis_count_) + " vectors but the structure has " + std::to_string(*dim_) + " slots", basis->column + 1);
      }
      if (dim_decl) {
        Rational n = scalar(dim_decl->text, dim_decl->line, dim_decl->column);
        if (n != Rational(static_cast<long>(*dim_))) {
          throw error(dim_decl->line, "dim = " + n.str() + " but the structure has " + std::to_string(*dim_) + " slots", dim_decl->column + 1);
        }
      }
    }

    if (sections_.contains("complex")) {
      std::size_t n = dim();
      std::vector<std::pair<Vec, Vec>> images;
      for (const auto& l : lines_["complex"]) {
        std::size_t piece_start = 0;
        while (piece_start <= l.text.size()) {
          auto end = l.text.find(';', piece_start);
          if (end == std::string::npos) end = l.text.size();
          Line piece{l.number, l.text.substr(piece_start, end - piece_start), l.start + piece_start};
          std::size_t lead = 0;
          piece.text = trim(piece.text, &lead);
          piece.start += lead;
          if (!piece.text.empty()) {
            auto [key, value, col] = key_value(piece, "->");
            std::size_t idx = basis_index(key, piece, n);
            Vec v = parse_vector_at(value, n, l.number, col);
            images.push_back({basis_vec(n, idx), v});
          }
          piece_start = end + 1;
        }
      }
      try {
        J_ = almost_complex_from_images(n, images);
      } catch (const DomainError& e) {
        throw error(sections_["complex"], e.what());
      }
    }

    if (sections_.contains("metric")) {
      std::size_t n = dim();
      std::optional<std::size_t> omega_line;
      std::vector<Vec> rows;
      std::size_t first_row = 0;
      for (const auto& l : lines_["metric"]) {
        auto [key, value, col] = key_value(l, "=");
        if (key == "omega") {
          if (omega_line || !rows.empty()) throw error(l.number, "[metric] takes either one omega or matrix rows", l.start + 1);
          omega_ = parse_form_at(value, n, l.number, col);
          omega_line = l.number;
        } else if (key == "row") {
          if (omega_line) throw error(l.number, "[metric] takes either one omega or matrix rows", l.start + 1);
          if (rows.empty()) first_row = l.number;
          Vec row = parse_row(value, l.number, col);
          if (row.size() != n) throw error(l.number, "row needs " + std::to_string(n) + " entries", col + 1);
          rows.push_back(row);
        } else {
          throw error(l.number, "unknown [metric] key '" + key + "'", l.start + 1);
        }
      }
      if (omega_line) {
        if (!J_) throw error(*omega_line, "omega needs a [complex] section");
        try {
          g_ = metric_from(*omega_, *J_);
        } catch (const DomainError& e) {
          throw error(*omega_line, e.what());
        }
      } else {
        if (rows.size() != n) throw error(rows.empty() ? sections_["metric"] : first_row, "metric needs " + std::to_string(n) + " rows");
        try {
          g_ = Metric(Matrix::from_rows(rows));
        } catch (const DomainError& e) {
          throw error(first_row, e.what());
        }
      }
    }

    for (int which : {1, 2}) {
      auto& images = which == 1 ? rho1_ : rho2_;
      for (const auto& l : lines_[which == 1 ? "rho1" : "rho2"]) {
        auto [key, value, col] = key_value(l, "=");
        auto idx = label(key);
        if (!idx || *idx == 0) throw error(l.number, "expected a basis vector eK, got '" + key + "'", l.start + 1);
        std::vector<Vec> rows;
        std::size_t row_start = 0;
        while (row_start <= value.size()) {
          auto end = value.find(';', row_start);
          if (end == std::string::npos) end = value.size();
          rows.push_back(parse_row(value.substr(row_start, end - row_start), l.number, col + row_start));
          if (rows.back().size() != rows.front().size()) throw error(l.number, "rows of different length", col + row_start + 1);
          row_start = end + 1;
        }
        if (rows.size() != rows.front().size()) throw error(l.number, "image matrix is not square", col + 1);
        for (const auto& im : images)
          if (im.label == *idx) throw error(l.number, key + " given twice", l.start + 1);
        images.push_back({*idx, Matrix::from_rows(rows), l.number});
      }
    }
  }

  Vec parse_row(const std::string& text, std::size_t line, std::size_t column) const {
    Vec row;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find(',', start);
      if (end == std::string::npos) end = text.size();
      std::size_t lead = 0;
      std::string entry = trim(std::string_view(text).substr(start, end - start), &lead);
      if (entry.empty()) throw error(line, "empty matrix entry", column + start + 1);
      row.push_back(scalar(entry, line, column + start + lead));
      start = end + 1;
    }
    return row;
  }

  std::string source_;
  std::size_t offset_ = 0, basis_count_ = 0;
  std::map<std::string, std::size_t> sections_;
  std::map<std::string, std::vector<Line>> lines_;
  ParamBinding params_;
  std::optional<std::size_t> dim_;
  std::optional<LieAlgebra> algebra_;
  std::optional<Endo> J_;
  std::optional<Metric> g_;
  std::optional<KForm> omega_;
  std::vector<RhoImage> rho1_, rho2_;
};

/// The same form with every basis label raised by `offset`, for printing in
/// a document's own labels.
inline KForm relabel(const KForm& f, std::size_t offset) {
  if (offset == 0) return f;
  KForm out(f.degree(), f.dim() + offset);
  for (const auto& [idx, c] : f.coefficients()) {
    KForm::Index shifted = idx;
    for (auto& i : shifted) i += offset;
    out.set(shifted, c);
  }
  return out;
}

}  // namespace lietwist
