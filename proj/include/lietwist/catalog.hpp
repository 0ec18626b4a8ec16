#pragma once

#include "lietwist/algebra.hpp"
#include "lietwist/error.hpp"
#include "lietwist/expr.hpp"
#include "lietwist/hermitian.hpp"
#include "lietwist/random.hpp"
#include "lietwist/salamon.hpp"
#include "lietwist/twist.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#ifndef LIETWIST_DEFAULT_CATALOG
#define LIETWIST_DEFAULT_CATALOG "data/families.txt"
#endif

namespace lietwist {

/// Malformed catalog data; `line` is 1-based (0 when unknown).
class CatalogError : public Error {
 public:
  CatalogError(const std::string& what, std::size_t line)
      : Error(line ? "catalog line " + std::to_string(line) + ": " + what : "catalog: " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnknownFamily : public Error {
 public:
  explicit UnknownFamily(const std::string& id) : Error("unknown family '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

/// The rejection budget ran out: the constraints are (nearly) unsatisfiable.
class SamplerExhausted : public Error {
 public:
  explicit SamplerExhausted(const std::string& id)
      : Error("sampler exhausted for family '" + id + "': constraints rejected every draw") {}
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) out.push_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

/// `lhs OP rhs` with OP in > >= < <= !=, or `square(expr)`.
class Constraint {
 public:
  enum class Op { gt, ge, lt, le, ne, square };

  static Constraint parse(std::string_view text) {
    Constraint c;
    c.text_ = detail::trim(text);
    const std::string& t = c.text_;
    if (t.rfind("square(", 0) == 0) {
      if (t.back() != ')') throw ParseError("square(...) must close at the end", t.size());
      c.op_ = Op::square;
      c.lhs_ = Expr::parse(std::string_view(t).substr(7, t.size() - 8), AtomMode::scalar, 7);
      return c;
    }
    std::optional<std::size_t> at;
    std::size_t len = 0;
    int depth = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      char ch = t[i];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (depth != 0) continue;
      std::size_t l = 0;
      Op op{};
      bool two = i + 1 < t.size() && t[i + 1] == '=';
      if (ch == '>') op = two ? Op::ge : Op::gt, l = two ? 2 : 1;
      else if (ch == '<') op = two ? Op::le : Op::lt, l = two ? 2 : 1;
      else if (ch == '!' && two) op = Op::ne, l = 2;
      if (!l) continue;
      if (at) throw ParseError("more than one comparison", i);
      at = i;
      len = l;
      c.op_ = op;
      i += l - 1;
    }
    if (!at) throw ParseError("expected a comparison (> >= < <= !=) or square(...)", 0);
    c.lhs_ = Expr::parse(std::string_view(t).substr(0, *at), AtomMode::scalar);
    c.rhs_ = Expr::parse(std::string_view(t).substr(*at + len), AtomMode::scalar, *at + len);
    return c;
  }

  Op op() const { return op_; }
  const std::string& text() const { return text_; }
  const Expr& lhs() const { return lhs_; }

  std::set<std::string> parameters() const {
    auto p = lhs_.parameters();
    if (op_ != Op::square) p.merge(rhs_.parameters());
    return p;
  }

  /// False also when either side cannot be evaluated (division by zero, ...).
  bool holds(const ParamBinding& b) const {
    try {
      Rational l = lhs_.evaluate_scalar(b);
      if (op_ == Op::square) return l.sign() >= 0 && l.sqrt().has_value();
      Rational r = rhs_.evaluate_scalar(b);
      switch (op_) {
        case Op::gt: return l > r;
        case Op::ge: return l >= r;
        case Op::lt: return l < r;
        case Op::le: return l <= r;
        case Op::ne: return l != r;
        case Op::square: break;
      }
    } catch (const EvalError&) {
    }
    return false;
  }

 private:
  std::string text_;
  Op op_ = Op::gt;
  Expr lhs_, rhs_;
};

enum class Builder { none, worked_rr31, example_2p2q };

/// Which transcription of a family to evaluate.
enum class Variant {
  printed,      ///< fields as printed
  probe_omega,  ///< printed structure and J, omega with the e^{12} summand restored
  erratum,      ///< printed fields overridden by the erratum_* fields
};

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::printed: return "printed";
    case Variant::probe_omega: return "probe-e12";
    case Variant::erratum: return "erratum";
  }
  return "?";
}

/// Raw evaluation of a family at a binding. No invariant is enforced; `g`
/// is empty when omega is not J-invariant.
struct FamilyData {
  LieAlgebra L;
  Endo J;
  KForm omega;
  std::optional<Metric> g;
};

/// One classified family: structure equations, J, omega and constraints
/// over named parameters, or a builder assembling it from twist data.
class Family {
 public:
  using Fields = std::map<std::string, std::string>;

  static inline const std::set<std::string> known_fields = {
      "id", "title", "structure", "J", "omega", "params", "constraints", "implied", "probe_omega",
      "erratum_structure", "erratum_J", "erratum_omega", "builder"};

  /// `lines` maps field names to their 1-based source line, for messages.
  static Family from_fields(const Fields& fields, const std::map<std::string, std::size_t>& lines = {}) {
    auto line_of = [&](const std::string& k) {
      auto it = lines.find(k);
      return it == lines.end() ? std::size_t{0} : it->second;
    };
    for (const auto& [k, v] : fields) {
      if (!known_fields.contains(k)) throw CatalogError("unknown field '" + k + "'", line_of(k));
    }
    Family f;
    f.fields_ = fields;
    auto get = [&](const std::string& k) -> std::optional<std::string> {
      auto it = fields.find(k);
      if (it == fields.end()) return std::nullopt;
      return it->second;
    };
    auto id = get("id");
    if (!id || id->empty()) throw CatalogError("record without id", line_of("id"));
    f.id_ = *id;
    f.title_ = get("title").value_or("");
    if (auto p = get("params")) f.params_ = detail::split(*p, ',');
    for (const auto& p : f.params_) {
      if (!ParamBinding::valid_name(p)) throw CatalogError(f.id_ + ": invalid parameter name '" + p + "'", line_of("params"));
    }
    std::set<std::string> declared(f.params_.begin(), f.params_.end());
    if (declared.size() != f.params_.size()) throw CatalogError(f.id_ + ": repeated parameter", line_of("params"));

    auto wrap = [&](const std::string& field, auto&& fn) {
      try {
        return fn();
      } catch (const ParseError& e) {
        throw CatalogError(f.id_ + ": " + field + ": " + e.message() + " at column " + std::to_string(e.position() + 1),
                           line_of(field));
      }
    };
    auto check_params = [&](const std::string& field, const std::set<std::string>& used) {
      for (const auto& p : used) {
        if (!declared.contains(p)) throw CatalogError(f.id_ + ": " + field + " uses undeclared parameter '" + p + "'", line_of(field));
      }
    };
    auto constraints = [&](const std::string& field, std::vector<Constraint>& out) {
      if (auto c = get(field)) {
        for (const auto& piece : detail::split(*c, ';')) {
          out.push_back(wrap(field, [&] { return Constraint::parse(piece); }));
          check_params(field, out.back().parameters());
        }
      }
    };
    constraints("constraints", f.constraints_);
    constraints("implied", f.implied_);
    for (const auto* list : {&f.constraints_, &f.implied_}) {
      for (const auto& c : *list) {
        if (c.op() != Constraint::Op::square) continue;
        auto used = c.parameters();
        std::optional<std::string> solve;
        for (const auto& p : f.params_)
          if (used.contains(p)) solve = p;
        if (!solve) throw CatalogError(f.id_ + ": square() without parameters", line_of("constraints"));
        f.square_solve_.push_back({c, *solve});
      }
    }

    if (auto b = get("builder")) {
      if (*b == "worked_rr31") f.builder_ = Builder::worked_rr31;
      else if (*b == "example_2p2q") f.builder_ = Builder::example_2p2q;
      else throw CatalogError(f.id_ + ": unknown builder '" + *b + "'", line_of("builder"));
      for (const char* k : {"structure", "J", "omega", "probe_omega", "erratum_structure", "erratum_J", "erratum_omega"}) {
        if (fields.contains(k)) throw CatalogError(f.id_ + ": builder records take no '" + std::string(k) + "' field", line_of(k));
      }
      for (const auto& p : builder_params(f.builder_)) {
        if (!declared.contains(p)) throw CatalogError(f.id_ + ": builder needs parameter '" + p + "'", line_of("params"));
      }
      return f;
    }

    for (const char* k : {"structure", "J", "omega"}) {
      if (!fields.contains(k)) throw CatalogError(f.id_ + ": missing field '" + std::string(k) + "'", line_of("id"));
    }
    auto structure = [&](const std::string& field) {
      auto t = wrap(field, [&] { return SalamonTemplate::parse(*get(field)); });
      if (t.dim() != 6) throw CatalogError(f.id_ + ": " + field + " must have 6 slots", line_of(field));
      check_params(field, t.parameters());
      return t;
    };
    auto complex = [&](const std::string& field) {
      auto images = wrap(field, [&] { return parse_images(*get(field)); });
      for (const auto& im : images) check_params(field, im.image.parameters());
      return images;
    };
    auto form = [&](const std::string& field) {
      auto t = wrap(field, [&] { return FormTemplate::parse(*get(field), 6, 2); });
      check_params(field, t.parameters());
      return t;
    };
    f.structure_ = structure("structure");
    f.J_ = complex("J");
    f.omega_ = form("omega");
    if (get("probe_omega")) f.probe_omega_ = form("probe_omega");
    if (get("erratum_structure")) f.erratum_structure_ = structure("erratum_structure");
    if (get("erratum_J")) f.erratum_J_ = complex("erratum_J");
    if (get("erratum_omega")) f.erratum_omega_ = form("erratum_omega");
    return f;
  }

  const std::string& id() const { return id_; }
  const std::string& title() const { return title_; }
  const Fields& fields() const { return fields_; }
  std::string field(const std::string& key) const {
    auto it = fields_.find(key);
    return it == fields_.end() ? std::string() : it->second;
  }
  const std::vector<std::string>& params() const { return params_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Constraint>& implied() const { return implied_; }
  Builder builder() const { return builder_; }
  std::size_t dim() const { return 6; }

  bool has_variant(Variant v) const {
    switch (v) {
      case Variant::printed: return true;
      case Variant::probe_omega: return probe_omega_.has_value();
      case Variant::erratum: return erratum_structure_ || erratum_J_ || erratum_omega_;
    }
    return false;
  }

  /// Copy with one field replaced, recompiled (used to inject mutations).
  Family with_field(const std::string& key, const std::string& value) const {
    Fields f = fields_;
    f[key] = value;
    return from_fields(f);
  }

  bool satisfies(const ParamBinding& b) const {
    for (const auto* list : {&constraints_, &implied_})
      for (const auto& c : *list)
        if (!c.holds(b)) return false;
    return true;
  }

  /// Conditions violated by `b`, by source text.
  std::vector<std::string> violations(const ParamBinding& b) const {
    std::vector<std::string> out;
    for (const auto* list : {&constraints_, &implied_})
      for (const auto& c : *list)
        if (!c.holds(b)) out.push_back(c.text());
    return out;
  }

  /// Builder families only: the twist data the product is assembled from.
  TwistData twist_data(const ParamBinding& b) const {
    auto v = [&](const std::string& name) {
      auto r = b.get(name);
      if (!r) throw UnboundParameter(name);
      return *r;
    };
    switch (builder_) {
      case Builder::worked_rr31: {
        HermitianStructure h1 = abelian_factor(1);
        Matrix g = Matrix::identity(4);
        g(0, 0) = v("sigma");
        g(3, 3) = v("sigma");
        Endo J = almost_complex_from_images(4, {{basis_vec(4, 0), basis_vec(4, 3)}, {basis_vec(4, 1), basis_vec(4, 2)}});
        HermitianStructure h2(parse_salamon("(0,-12,-13,0)"), J, Metric(g));
        Representation rho2(h2.algebra(), h1.algebra(),
                            {complex_scalar(-1, v("x_1")), Matrix(2, 2), Matrix(2, 2), complex_scalar(0, v("t_1"))});
        return TwistData(h1, h2, Representation::zero(h1.algebra(), h2.algebra()), rho2);
      }
      case Builder::example_2p2q: {
        Rational a = v("a"), c = v("c");
        std::vector<std::vector<Rational>> A = {{a, -a}, {c, -c}};
        std::vector<std::vector<Rational>> B = {{v("b_1"), v("b_2")}, {v("d_1"), v("d_2")}};
        std::vector<std::vector<Rational>> zero(4, std::vector<Rational>{Rational(0)});
        return build_example_2p2q(1, 2, A, B, zero, zero);
      }
      case Builder::none: break;
    }
    throw DomainError(id_ + " is not assembled from twist data");
  }

  /// Evaluates the chosen transcription. Throws EvalError or
  /// UnboundParameter when the binding does not evaluate, DomainError when
  /// the variant does not exist or the J images do not span.
  FamilyData evaluate(const ParamBinding& b, Variant variant = Variant::printed) const {
    if (!has_variant(variant)) throw DomainError(id_ + " has no " + to_string(variant) + " variant");
    if (builder_ != Builder::none) {
      TwistData td = twist_data(b);
      FamilyData d{product_algebra(td), block_diagonal(td.h1().J(), td.h2().J()), KForm(2, 6),
                   Metric(block_diagonal(td.h1().metric().matrix(), td.h2().metric().matrix()))};
      d.omega = fundamental_form(d.J, *d.g);
      return d;
    }
    bool err = variant == Variant::erratum;
    const SalamonTemplate& s = err && erratum_structure_ ? *erratum_structure_ : *structure_;
    const std::vector<JImage>& jt = err && erratum_J_ ? *erratum_J_ : J_;
    const FormTemplate& w = variant == Variant::probe_omega ? *probe_omega_ : (err && erratum_omega_ ? *erratum_omega_ : *omega_);
    std::vector<std::pair<Vec, Vec>> images;
    for (const auto& im : jt) images.push_back({basis_vec(6, im.index), im.image.vector(b)});
    FamilyData d{s.instantiate(b), almost_complex_from_images(6, images), w.form(b), std::nullopt};
    try {
      d.g = metric_from(d.omega, d.J);
    } catch (const DomainError&) {
    }
    return d;
  }

  /// Checked Hermitian structure at `b`. Violated constraints and broken
  /// invariants are errors naming the family.
  HermitianStructure instantiate(const ParamBinding& b, Variant variant = Variant::printed) const {
    auto bad = violations(b);
    if (!bad.empty()) throw DomainError(id_ + ": binding violates '" + bad.front() + "'");
    FamilyData d = evaluate(b, variant);
    if (!d.g) throw DomainError(id_ + ": transcription defect: omega is not J-invariant");
    try {
      return HermitianStructure(std::move(d.L), std::move(d.J), std::move(*d.g));
    } catch (const DomainError& e) {
      throw DomainError(id_ + ": transcription defect: " + e.what());
    }
  }

  /// One constraint-satisfying binding drawn from `rng`. `draws` counts
  /// every candidate, rejected or not.
  ParamBinding draw(Rng& rng, std::size_t& draws, std::size_t budget = 10000) const {
    for (std::size_t attempt = 0; attempt <= budget; ++attempt) {
      ++draws;
      ParamBinding b;
      for (const auto& p : params_) b.set(p, rng.rational());
      if (!solve_squares(b, rng)) continue;
      if (!satisfies(b)) continue;
      try {
        evaluate(b);
      } catch (const EvalError&) {
        continue;
      }
      return b;
    }
    throw SamplerExhausted(id_);
  }

 private:
  struct JImage {
    std::size_t index;
    FormTemplate image;
  };

  static std::vector<std::string> builder_params(Builder b) {
    switch (b) {
      case Builder::worked_rr31: return {"x_1", "t_1", "sigma"};
      case Builder::example_2p2q: return {"a", "b_1", "b_2", "c", "d_1", "d_2"};
      case Builder::none: break;
    }
    return {};
  }

  static std::vector<JImage> parse_images(std::string_view text) {
    std::vector<JImage> out;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find(';', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view item = text.substr(start, end - start);
      auto arrow = item.find("->");
      if (arrow == std::string_view::npos) throw ParseError("expected 'eK -> image'", start);
      std::string lhs = detail::trim(item.substr(0, arrow));
      if (lhs.size() != 2 || lhs[0] != 'e' || lhs[1] < '1' || lhs[1] > '6') throw ParseError("left side must be e1..e6", start);
      out.push_back({static_cast<std::size_t>(lhs[1] - '1'), FormTemplate::parse(item.substr(arrow + 2), 6, 1, start + arrow + 2)});
      start = end + 1;
    }
    if (out.size() != 3) throw ParseError("J needs exactly 3 basis images", 0);
    return out;
  }

  /// Sets the solved parameter of every square() so its expression is r^2.
  bool solve_squares(ParamBinding& b, Rng& rng) const {
    for (const auto& [c, p] : square_solve_) {
      Rational r = rng.rational();
      try {
        auto at = [&](const Rational& v) {
          b.set(p, v);
          return c.lhs().evaluate_scalar(b);
        };
        Rational e0 = at(0), e1 = at(1) - e0;
        if (at(2) != e0 + 2 * e1) throw DomainError(id_ + ": square(" + c.lhs().source() + ") is not affine in " + p);
        if (e1.is_zero()) return false;
        b.set(p, (r * r - e0) / e1);
      } catch (const EvalError&) {
        return false;
      }
    }
    return true;
  }

  std::string id_, title_;
  Fields fields_;
  std::vector<std::string> params_;
  std::vector<Constraint> constraints_, implied_;
  std::vector<std::pair<Constraint, std::string>> square_solve_;
  Builder builder_ = Builder::none;
  std::optional<SalamonTemplate> structure_, erratum_structure_;
  std::vector<JImage> J_;
  std::optional<std::vector<JImage>> erratum_J_;
  std::optional<FormTemplate> omega_, probe_omega_, erratum_omega_;
};

/// Per-family seed so families draw from independent streams.
inline std::uint64_t family_seed(const std::string& id, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h ^ (seed * 0x9E3779B97F4A7C15ull);
}

inline ParamBinding sample_params(const Family& f, std::uint64_t seed) {
  Rng rng(family_seed(f.id(), seed));
  std::size_t draws = 0;
  return f.draw(rng, draws);
}

inline HermitianStructure instantiate(const Family& f, const ParamBinding& b, Variant v = Variant::printed) {
  return f.instantiate(b, v);
}

struct SampleVerdict {
  ParamBinding binding;
  bool jacobi = false;
  bool integrable = false;
  bool posdef = false;
  bool balanced = false;
  bool lcb = false;
  bool lck = false;
  bool kahler = false;
  std::optional<KForm> theta;
  std::string note;

  bool pass() const { return jacobi && integrable && posdef && balanced; }
};

/// Evaluates every verdict at `b`; failures are recorded, never thrown.
inline SampleVerdict judge(const Family& f, const ParamBinding& b, Variant variant = Variant::printed) {
  SampleVerdict v;
  v.binding = b;
  FamilyData d;
  try {
    d = f.evaluate(b, variant);
  } catch (const Error& e) {
    v.note = e.what();
    return v;
  }
  auto note = [&](const std::string& s) {
    if (v.note.empty()) v.note = s;
  };
  auto jd = jacobi_defect(d.L);
  v.jacobi = jd.empty();
  if (!v.jacobi) {
    const auto& t = jd.front();
    note("Jacobi fails at (e" + std::to_string(t.i + 1) + ", e" + std::to_string(t.j + 1) + ", e" + std::to_string(t.k + 1) + ")");
  }
  auto N = nijenhuis(d.L, d.J);
  v.integrable = N.integrable();
  if (!v.integrable) {
    auto [ij, val] = N.defects().front();
    note("N(e" + std::to_string(ij.first + 1) + ", e" + std::to_string(ij.second + 1) + ") != 0");
  }
  if (!d.g) {
    note("omega is not J-invariant");
    return v;
  }
  v.posdef = d.g->positive_definite();
  if (!v.posdef) note("metric is not positive-definite");
  if (!d.g->matrix().inverse()) {
    note("metric is singular");
    return v;
  }
  KForm theta = lee_form(d.L, d.J, *d.g);
  v.balanced = theta.is_zero();
  if (!v.balanced) note("theta = " + theta.str());
  KForm dw = ce_d(d.L, d.omega);
  v.kahler = dw.is_zero();
  v.lcb = ce_d(d.L, theta).is_zero();
  v.lck = v.lcb && dw == wedge(theta, d.omega);
  v.theta = std::move(theta);
  return v;
}

struct Report {
  std::string family;
  Variant variant = Variant::printed;
  std::size_t attempted = 0;
  std::vector<SampleVerdict> samples;

  std::size_t accepted() const { return samples.size(); }
  std::size_t passed() const {
    std::size_t k = 0;
    for (const auto& s : samples) k += s.pass();
    return k;
  }
  bool pass() const { return !samples.empty() && passed() == samples.size(); }
  bool any_posdef() const {
    for (const auto& s : samples)
      if (s.posdef) return true;
    return false;
  }
};

/// n constraint-satisfying samples from the family's stream for `seed`,
/// judged under `variant`. Every variant sees the same bindings.
inline Report verify(const Family& f, std::size_t n_samples, std::uint64_t seed, Variant variant = Variant::printed) {
  if (n_samples == 0) throw DomainError("verify needs at least one sample");
  if (!f.has_variant(variant)) throw DomainError(f.id() + " has no " + to_string(variant) + " variant");
  Report r;
  r.family = f.id();
  r.variant = variant;
  Rng rng(family_seed(f.id(), seed));
  for (std::size_t i = 0; i < n_samples; ++i) r.samples.push_back(judge(f, f.draw(rng, r.attempted), variant));
  return r;
}

enum class Status { pass, pass_probe, fail };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::pass_probe: return "PASS-PROBE";
    case Status::fail: return "FAIL";
  }
  return "?";
}

/// Printed verdict plus the probes it triggered. The e^{12} probe runs when
/// no printed sample has a positive-definite metric; the erratum variant
/// runs when the printed family fails and is informational only.
struct FamilyOutcome {
  Report printed;
  std::optional<Report> probe;
  std::optional<Report> erratum;

  Status status() const {
    if (printed.pass()) return Status::pass;
    if (probe && probe->pass()) return Status::pass_probe;
    return Status::fail;
  }
};

inline FamilyOutcome verify_family(const Family& f, std::size_t n_samples, std::uint64_t seed) {
  FamilyOutcome o{verify(f, n_samples, seed), std::nullopt, std::nullopt};
  if (f.has_variant(Variant::probe_omega) && !o.printed.any_posdef()) o.probe = verify(f, n_samples, seed, Variant::probe_omega);
  if (!o.printed.pass() && f.has_variant(Variant::erratum)) o.erratum = verify(f, n_samples, seed, Variant::erratum);
  return o;
}

/// The parsed family data file.
class Catalog {
 public:
  static Catalog parse(std::string_view text) {
    Catalog c;
    Family::Fields fields;
    std::map<std::string, std::size_t> lines;
    bool open = false;
    auto flush = [&] {
      if (!open) return;
      Family f = Family::from_fields(fields, lines);
      for (const auto& g : c.families_) {
        if (g.id() == f.id()) throw CatalogError("duplicate id '" + f.id() + "'", lines["id"]);
      }
      c.families_.push_back(std::move(f));
      fields.clear();
      lines.clear();
    };
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string line = detail::trim(raw);
      if (line.empty() || line[0] == '#') continue;
      if (line == "[family]") {
        flush();
        open = true;
        lines["id"] = lineno;
        continue;
      }
      if (line[0] == '[') throw CatalogError("unknown section " + line, lineno);
      if (!open) throw CatalogError("field outside a [family] record", lineno);
      auto eq = line.find('=');
      if (eq == std::string::npos) throw CatalogError("expected 'key = value'", lineno);
      std::string key = detail::trim(std::string_view(line).substr(0, eq));
      if (fields.contains(key)) throw CatalogError("repeated field '" + key + "'", lineno);
      fields[key] = detail::trim(std::string_view(line).substr(eq + 1));
      lines[key] = lineno;
    }
    flush();
    return c;
  }

  static Catalog load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open catalog " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  static Catalog load_default() { return load(LIETWIST_DEFAULT_CATALOG); }

  const std::vector<Family>& families() const { return families_; }
  std::size_t size() const { return families_.size(); }

  const Family& find(const std::string& id) const {
    for (const auto& f : families_)
      if (f.id() == id) return f;
    throw UnknownFamily(id);
  }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const auto& f : families_) out.push_back(f.id());
    return out;
  }

 private:
  std::vector<Family> families_;
};

inline std::vector<std::string> list_families(const Catalog& c) { return c.ids(); }

}  // namespace lietwist
