#pragma once

#include "lietwist/algebra.hpp"
#include "lietwist/error.hpp"
#include "lietwist/matrix.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lietwist {

/// Symmetric bilinear form. Positive-definiteness is queried, not assumed;
/// HermitianStructure is where it becomes a requirement.
class Metric {
 public:
  Metric() = default;
  explicit Metric(Matrix g) : g_(std::move(g)) {
    if (!g_.square()) throw DomainError("metric matrix is not square");
    if (!g_.symmetric()) throw DomainError("metric matrix is not symmetric");
  }

  static Metric identity(std::size_t n) { return Metric(Matrix::identity(n)); }

  std::size_t dim() const { return g_.rows(); }
  const Matrix& matrix() const { return g_; }
  bool positive_definite() const { return g_.positive_definite(); }

  Rational operator()(const Vec& x, const Vec& y) const { return dot(x, g_ * y); }

  Matrix inverse() const {
    auto inv = g_.inverse();
    if (!inv) throw DomainError("singular metric");
    return *inv;
  }

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  Matrix g_;
};

inline bool is_almost_complex(const Endo& J) {
  return J.square() && J * J == -Matrix::identity(J.rows());
}

/// N_J on basis pairs, N(x,y) = [Jx,Jy] - [x,y] - J([Jx,y] + [x,Jy]).
class NijenhuisTensor {
 public:
  NijenhuisTensor(const LieAlgebra& L, const Endo& J) : n_(L.dim()), values_(n_ * n_, zero_vec(n_)) {
    if (J.rows() != n_ || !is_almost_complex(J)) throw DomainError("J is not an almost complex structure");
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        Vec x = basis_vec(n_, i), y = basis_vec(n_, j);
        Vec jx = J.column(i), jy = J.column(j);
        Vec v = L.bracket(jx, jy) - L.bracket(i, j) - J * (L.bracket(jx, y) + L.bracket(x, jy));
        values_[i * n_ + j] = v;
        values_[j * n_ + i] = -v;
        if (!is_zero(v)) integrable_ = false;
      }
    }
  }

  const Vec& at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  bool integrable() const { return integrable_; }

  /// Nonzero values with i < j.
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Vec>> defects() const {
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, Vec>> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!is_zero(at(i, j))) out.push_back({{i, j}, at(i, j)});
    return out;
  }

 private:
  std::size_t n_;
  std::vector<Vec> values_;
  bool integrable_ = true;
};

inline NijenhuisTensor nijenhuis(const LieAlgebra& L, const Endo& J) { return NijenhuisTensor(L, J); }

/// Lie algebra with an integrable J and a compatible positive-definite g.
class HermitianStructure {
 public:
  HermitianStructure(LieAlgebra L, Endo J, Metric g) : L_(std::move(L)), J_(std::move(J)), g_(std::move(g)) {
    if (auto problem = first_problem()) throw DomainError(*problem);
  }

  /// Skips every invariant check except matching dimensions. For diagnostics
  /// on data that is expected to be broken.
  static HermitianStructure unchecked(LieAlgebra L, Endo J, Metric g) {
    HermitianStructure h;
    h.L_ = std::move(L);
    h.J_ = std::move(J);
    h.g_ = std::move(g);
    h.check_dims();
    return h;
  }

  const LieAlgebra& algebra() const { return L_; }
  const Endo& J() const { return J_; }
  const Metric& metric() const { return g_; }
  std::size_t dim() const { return L_.dim(); }

  /// Description of the first violated invariant, if any.
  std::optional<std::string> first_problem() const {
    check_dims();
    if (!jacobi_defect(L_).empty()) return "bracket violates the Jacobi identity";
    if (!is_almost_complex(J_)) return "J^2 != -I";
    if (!g_.positive_definite()) return "metric is not positive-definite";
    if (J_.transpose() * g_.matrix() * J_ != g_.matrix()) return "metric is not J-invariant";
    if (!nijenhuis(L_, J_).integrable()) return "J is not integrable";
    return std::nullopt;
  }

 private:
  HermitianStructure() = default;
  void check_dims() const {
    const auto n = L_.dim();
    if (J_.rows() != n || J_.cols() != n || g_.dim() != n) throw DomainError("dimension mismatch between algebra, J and metric");
  }

  LieAlgebra L_;
  Endo J_;
  Metric g_;
};

/// omega(x,y) = g(Jx,y).
inline KForm fundamental_form(const Endo& J, const Metric& g) {
  return KForm::from_antisymmetric(J.transpose() * g.matrix());
}

inline KForm fundamental_form(const HermitianStructure& h) { return fundamental_form(h.J(), h.metric()); }

/// g(x,y) = omega(x,Jy). Throws when the result is not symmetric, i.e. when
/// omega is not J-invariant; definiteness is left to Metric::positive_definite.
inline Metric metric_from(const KForm& omega, const Endo& J) {
  if (omega.degree() != 2) throw DomainError("metric_from needs a 2-form");
  if (!is_almost_complex(J) || J.rows() != omega.dim()) throw DomainError("J is not an almost complex structure");
  Matrix g = omega.as_matrix() * J;
  if (!g.symmetric()) throw DomainError("omega is not J-invariant: omega(x, Jy) is not symmetric");
  return Metric(std::move(g));
}

/// Christoffel symbols, nabla_{e_i} e_j = sum_k gamma[i][j][k] e_k.
class Connection {
 public:
  explicit Connection(std::size_t n) : n_(n), gamma_(n * n, zero_vec(n)) {}

  std::size_t dim() const { return n_; }
  const Vec& operator()(std::size_t i, std::size_t j) const { return gamma_[i * n_ + j]; }
  Vec& operator()(std::size_t i, std::size_t j) { return gamma_[i * n_ + j]; }

  Vec nabla(const Vec& x, const Vec& y) const {
    Vec out = zero_vec(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (y[j].is_zero()) continue;
        out = out + (x[i] * y[j]) * (*this)(i, j);
      }
    }
    return out;
  }

  friend bool operator==(const Connection&, const Connection&) = default;

 private:
  std::size_t n_;
  std::vector<Vec> gamma_;
};

/// Koszul: 2g(nabla_x y, z) = g([x,y],z) - g([y,z],x) - g([x,z],y).
inline Connection levi_civita(const LieAlgebra& L, const Metric& g) {
  const std::size_t n = L.dim();
  if (g.dim() != n) throw DomainError("metric and algebra dimensions differ");
  Matrix ginv = g.inverse();
  Connection nabla(n);
  const Rational half = Rational::parse("1/2");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec rhs(n);
      Vec xy = L.bracket(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        rhs[k] = half * (g(xy, basis_vec(n, k)) - g(L.bracket(j, k), basis_vec(n, i)) -
                         g(L.bracket(i, k), basis_vec(n, j)));
      }
      nabla(i, j) = ginv * rhs;
    }
  }
  return nabla;
}

/// d*omega(X) = -sum_{ij} g^{ij} (nabla_{e_i} omega)(e_j, X) with
/// (nabla_X omega)(Y,Z) = -omega(nabla_X Y, Z) - omega(Y, nabla_X Z).
inline KForm codiff2(const LieAlgebra& L, const Metric& g, const KForm& omega) {
  const std::size_t n = L.dim();
  if (omega.degree() != 2 || omega.dim() != n) throw DomainError("codiff2 needs a 2-form of matching dimension");
  Matrix ginv = g.inverse();
  Connection nabla = levi_civita(L, g);
  Vec out = zero_vec(n);
  for (std::size_t x = 0; x < n; ++x) {
    Vec X = basis_vec(n, x);
    Rational s;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (ginv(i, j).is_zero()) continue;
        Rational cov = -omega(nabla(i, j), X) - omega(basis_vec(n, j), nabla(i, x));
        s += ginv(i, j) * cov;
      }
    }
    out[x] = -s;
  }
  return KForm::covector(out);
}

/// theta(X) = -d*omega(JX).
inline KForm lee_form(const LieAlgebra& L, const Endo& J, const Metric& g) {
  KForm ds = codiff2(L, g, fundamental_form(J, g));
  const std::size_t n = L.dim();
  Vec theta(n);
  for (std::size_t x = 0; x < n; ++x) theta[x] = -ds(J.column(x));
  return KForm::covector(theta);
}

inline KForm lee_form(const HermitianStructure& h) { return lee_form(h.algebra(), h.J(), h.metric()); }

struct ClassFlags {
  bool kahler = false;
  bool balanced = false;
  bool lcb = false;
  bool lck = false;

  friend bool operator==(const ClassFlags&, const ClassFlags&) = default;
};

inline ClassFlags classify(const LieAlgebra& L, const Endo& J, const Metric& g) {
  KForm omega = fundamental_form(J, g);
  KForm theta = lee_form(L, J, g);
  KForm dw = ce_d(L, omega);
  bool closed_theta = ce_d(L, theta).is_zero();
  ClassFlags f;
  f.kahler = dw.is_zero();
  f.balanced = theta.is_zero();
  f.lcb = closed_theta;
  f.lck = closed_theta && dw == wedge(theta, omega);
  return f;
}

inline ClassFlags classify(const HermitianStructure& h) { return classify(h.algebra(), h.J(), h.metric()); }

/// Almost complex structure from images of a half basis: each pair (e_i, v)
/// means J e_i = v and J v = -e_i. The vectors e_i, v must span the space.
inline Endo almost_complex_from_images(std::size_t n, const std::vector<std::pair<Vec, Vec>>& images) {
  if (2 * images.size() != n) throw DomainError("J needs exactly " + std::to_string(n / 2) + " basis images in dimension " + std::to_string(n));
  std::vector<Vec> src, dst;
  for (const auto& [x, v] : images) {
    if (x.size() != n || v.size() != n) throw DomainError("J image has wrong dimension");
    src.push_back(x);
    src.push_back(v);
    dst.push_back(v);
    dst.push_back(-x);
  }
  auto minv = Matrix::from_columns(src).inverse();
  if (!minv) throw DomainError("J images do not span the space");
  return Matrix::from_columns(dst) * *minv;
}

}  // namespace lietwist
