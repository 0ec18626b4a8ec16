#pragma once

#include "lietwist/error.hpp"
#include "lietwist/matrix.hpp"
#include "lietwist/rational.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace lietwist {

/// Finite-dimensional real Lie algebra given by rational structure
/// constants in a fixed basis e_0..e_{n-1}: [e_i, e_j] = sum_k c^k_{ij} e_k.
///
/// Antisymmetry holds by construction; the Jacobi identity does not and is
/// checked separately with jacobi_defect().
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t dim) : dim_(dim), c_(dim * dim * dim) {
    if (dim == 0) throw DomainError("Lie algebra of dimension 0");
  }

  std::size_t dim() const { return dim_; }

  /// Sets [e_i, e_j] = v (and [e_j, e_i] = -v).
  void set_bracket(std::size_t i, std::size_t j, const Vec& v) {
    check_index(i);
    check_index(j);
    if (v.size() != dim_) throw DomainError("bracket value has wrong dimension");
    if (i == j) {
      if (!lietwist::is_zero(v)) throw DomainError("[e_i, e_i] must vanish");
      return;
    }
    for (std::size_t k = 0; k < dim_; ++k) {
      at(i, j, k) = v[k];
      at(j, i, k) = -v[k];
    }
  }

  /// Structure constant c^k_{ij}.
  const Rational& structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  Vec bracket(std::size_t i, std::size_t j) const {
    Vec v(dim_);
    for (std::size_t k = 0; k < dim_; ++k) v[k] = structure_constant(i, j, k);
    return v;
  }

  Vec bracket(const Vec& x, const Vec& y) const {
    Vec out = zero_vec(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (y[j].is_zero() || i == j) continue;
        Rational s = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k) {
          const auto& c = structure_constant(i, j, k);
          if (!c.is_zero()) out[k] += s * c;
        }
      }
    }
    return out;
  }

  /// ad_x as an endomorphism.
  Endo ad(const Vec& x) const {
    std::vector<Vec> cols;
    cols.reserve(dim_);
    for (std::size_t j = 0; j < dim_; ++j) cols.push_back(bracket(x, basis_vec(dim_, j)));
    return Matrix::from_columns(cols);
  }

  bool abelian() const { return lietwist::is_zero(c_); }

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

 private:
  Rational& at(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
  void check_index(std::size_t i) const {
    if (i >= dim_) throw DomainError("basis index out of range");
  }

  std::size_t dim_ = 0;
  std::vector<Rational> c_;
};

/// Alternating k-linear form (k = 1, 2, 3) stored on strictly increasing
/// index tuples; zero coefficients are never stored.
class KForm {
 public:
  using Index = std::vector<std::size_t>;

  KForm() = default;
  KForm(std::size_t degree, std::size_t dim) : degree_(degree), dim_(dim) {
    if (degree == 0 || degree > 3) throw DomainError("form degree must be 1, 2 or 3");
  }

  /// The 1-form with the given coordinates.
  static KForm covector(const Vec& coeffs) {
    KForm f(1, coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) f.set({i}, coeffs[i]);
    return f;
  }

  /// The 2-form x,y -> x^T W y for an antisymmetric matrix W.
  static KForm from_antisymmetric(const Matrix& w) {
    KForm f(2, w.rows());
    for (std::size_t i = 0; i < w.rows(); ++i)
      for (std::size_t j = i + 1; j < w.cols(); ++j) f.set({i, j}, w(i, j));
    return f;
  }

  std::size_t degree() const { return degree_; }
  std::size_t dim() const { return dim_; }
  const std::map<Index, Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient on an arbitrary tuple, with the permutation sign applied.
  Rational coeff(Index idx) const {
    int sign = sort_with_sign(idx);
    if (sign == 0) return Rational(0);
    auto it = coeffs_.find(idx);
    if (it == coeffs_.end()) return Rational(0);
    return sign > 0 ? it->second : -it->second;
  }

  /// Sets the value on an arbitrary tuple (the increasing representative is
  /// stored with the appropriate sign). Repeated indices must carry zero.
  void set(Index idx, const Rational& value) {
    check_tuple(idx);
    int sign = sort_with_sign(idx);
    if (sign == 0) {
      if (!value.is_zero()) throw DomainError("alternating form with a repeated index");
      return;
    }
    if (value.is_zero()) {
      coeffs_.erase(idx);
    } else {
      coeffs_[idx] = sign > 0 ? value : -value;
    }
  }

  void add(Index idx, const Rational& value) { set(idx, coeff(idx) + value); }

  /// Value on vectors (one per slot).
  Rational evaluate(const std::vector<Vec>& vs) const {
    if (vs.size() != degree_) throw DomainError("wrong number of form arguments");
    Rational total;
    for (const auto& [idx, c] : coeffs_) {
      Rational m;
      if (degree_ == 1) {
        m = vs[0][idx[0]];
      } else if (degree_ == 2) {
        m = vs[0][idx[0]] * vs[1][idx[1]] - vs[0][idx[1]] * vs[1][idx[0]];
      } else {
        Matrix minor(3, 3);
        for (std::size_t r = 0; r < 3; ++r)
          for (std::size_t s = 0; s < 3; ++s) minor(r, s) = vs[r][idx[s]];
        m = minor.determinant();
      }
      if (!m.is_zero()) total += c * m;
    }
    return total;
  }

  Rational operator()(const Vec& x) const { return evaluate({x}); }
  Rational operator()(const Vec& x, const Vec& y) const { return evaluate({x, y}); }
  Rational operator()(const Vec& x, const Vec& y, const Vec& z) const { return evaluate({x, y, z}); }

  /// Coordinates of a 1-form.
  Vec as_covector() const {
    if (degree_ != 1) throw DomainError("not a 1-form");
    Vec v = zero_vec(dim_);
    for (const auto& [idx, c] : coeffs_) v[idx[0]] = c;
    return v;
  }

  /// Antisymmetric Gram matrix W_{ij} = f(e_i, e_j) of a 2-form.
  Matrix as_matrix() const {
    if (degree_ != 2) throw DomainError("not a 2-form");
    Matrix w(dim_, dim_);
    for (const auto& [idx, c] : coeffs_) {
      w(idx[0], idx[1]) = c;
      w(idx[1], idx[0]) = -c;
    }
    return w;
  }

  KForm& operator+=(const KForm& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.coeffs_) add(idx, c);
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.coeffs_) add(idx, -c);
    return *this;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(const Rational& s, KForm a) {
    if (s.is_zero()) return KForm(a.degree_, a.dim_);
    for (auto& [idx, c] : a.coeffs_) c *= s;
    return a;
  }
  friend bool operator==(const KForm&, const KForm&) = default;

  /// "-2 e345", "e12 + 3 e36", "0". Indices print 1-based.
  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : coeffs_) {
      Rational mag = c.abs();
      if (first) {
        if (c.sign() < 0) os << "-";
      } else {
        os << (c.sign() < 0 ? " - " : " + ");
      }
      if (mag != Rational(1)) os << mag << " ";
      os << "e";
      bool wide = dim_ > 9;
      if (wide) os << "(";
      for (std::size_t s = 0; s < idx.size(); ++s) {
        if (wide && s) os << ",";
        os << idx[s] + 1;
      }
      if (wide) os << ")";
      first = false;
    }
    return os.str();
  }

 private:
  static int sort_with_sign(Index& idx) {
    int sign = 1;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = 0; b + 1 < idx.size() - a; ++b) {
        if (idx[b] > idx[b + 1]) {
          std::swap(idx[b], idx[b + 1]);
          sign = -sign;
        }
      }
    }
    for (std::size_t a = 0; a + 1 < idx.size(); ++a) {
      if (idx[a] == idx[a + 1]) return 0;
    }
    return sign;
  }

  void check_tuple(const Index& idx) const {
    if (idx.size() != degree_) throw DomainError("index tuple length differs from form degree");
    for (auto i : idx) {
      if (i >= dim_) throw DomainError("form index out of range");
    }
  }

  void check_compatible(const KForm& o) const {
    if (o.degree_ != degree_ || o.dim_ != dim_) throw DomainError("forms of different degree or dimension");
  }

  std::size_t degree_ = 1;
  std::size_t dim_ = 0;
  std::map<Index, Rational> coeffs_;
};

struct JacobiDefect {
  std::size_t i, j, k;  ///< 0-based, i < j < k
  Vec defect;
};

/// All nonzero Jacobiators [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j].
inline std::vector<JacobiDefect> jacobi_defect(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  std::vector<JacobiDefect> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec ei = basis_vec(n, i), ej = basis_vec(n, j), ek = basis_vec(n, k);
        Vec d = L.bracket(L.bracket(i, j), ek) + L.bracket(L.bracket(j, k), ei) + L.bracket(L.bracket(k, i), ej);
        if (!is_zero(d)) out.push_back({i, j, k, std::move(d)});
      }
    }
  }
  return out;
}

/// Chevalley-Eilenberg differential on left-invariant forms:
///   da(x,y)    = -a([x,y])
///   dw(x,y,z)  = -w([x,y],z) + w([x,z],y) - w([y,z],x)
inline KForm ce_d(const LieAlgebra& L, const KForm& f) {
  const std::size_t n = L.dim();
  if (f.dim() != n) throw DomainError("form and algebra dimensions differ");
  if (f.degree() == 1) {
    KForm out(2, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) out.set({i, j}, -f(L.bracket(i, j)));
    return out;
  }
  if (f.degree() == 2) {
    KForm out(3, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          Vec ei = basis_vec(n, i), ej = basis_vec(n, j), ek = basis_vec(n, k);
          Rational v = -f(L.bracket(i, j), ek) + f(L.bracket(i, k), ej) - f(L.bracket(j, k), ei);
          out.set({i, j, k}, v);
        }
      }
    }
    return out;
  }
  throw DomainError("ce_d is only defined on 1- and 2-forms here");
}

/// Exterior product; deg a + deg b must be at most 3.
inline KForm wedge(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim()) throw DomainError("wedge of forms of different dimension");
  const std::size_t p = a.degree(), q = b.degree();
  if (p + q > 3) throw DomainError("wedge product of degree above 3");
  KForm out(p + q, a.dim());
  for (const auto& [ia, ca] : a.coefficients()) {
    for (const auto& [ib, cb] : b.coefficients()) {
      KForm::Index idx(ia);
      idx.insert(idx.end(), ib.begin(), ib.end());
      std::vector<std::size_t> sorted(idx);
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      out.add(idx, ca * cb);
    }
  }
  return out;
}

}  // namespace lietwist
