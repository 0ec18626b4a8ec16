#pragma once

#include "lietwist/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lietwist {

/// Coordinate vector over the rationals.
using Vec = std::vector<Rational>;

inline Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

inline Vec basis_vec(std::size_t n, std::size_t i) {
  Vec v = zero_vec(n);
  v.at(i) = 1;
  return v;
}

inline bool is_zero(std::span<const Rational> v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline Vec operator-(const Vec& a) {
  Vec r(a);
  for (auto& x : r) x = -x;
  return r;
}

inline Vec operator*(const Rational& s, const Vec& a) {
  Vec r(a);
  for (auto& x : r) x *= s;
  return r;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

/// Dense row-major rational matrix. As an endomorphism, column j holds the
/// coordinates of the image of basis vector j.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vec>& cols) {
    if (cols.empty()) return {};
    Matrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_) throw std::invalid_argument("ragged matrix columns");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vec row(std::size_t i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  bool is_zero() const { return lietwist::is_zero(data_); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Rational trace() const {
    Rational t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  bool symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  Vec operator*(std::span<const Rational> v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    Vec r = zero_vec(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto& a = (*this)(i, j);
        if (!a.is_zero() && !v[j].is_zero()) r[i] += a * v[j];
      }
    }
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
        }
      }
    }
    return r;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend Matrix operator*(const Rational& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  /// Determinant by fraction-exact Gaussian elimination.
  Rational determinant() const {
    if (!square()) throw std::invalid_argument("determinant of non-square matrix");
    Matrix a(*this);
    Rational det(1);
    const std::size_t n = rows_;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && a(p, c).is_zero()) ++p;
      if (p == n) return Rational(0);
      if (p != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
        det = -det;
      }
      det *= a(c, c);
      for (std::size_t r = c + 1; r < n; ++r) {
        if (a(r, c).is_zero()) continue;
        Rational f = a(r, c) / a(c, c);
        for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      }
    }
    return det;
  }

  /// Inverse, or nullopt when singular.
  std::optional<Matrix> inverse() const {
    if (!square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = rows_;
    Matrix a(*this);
    Matrix inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && a(p, c).is_zero()) ++p;
      if (p == n) return std::nullopt;
      if (p != c) {
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a(p, j), a(c, j));
          std::swap(inv(p, j), inv(c, j));
        }
      }
      Rational piv = a(c, c).inverse();
      for (std::size_t j = 0; j < n; ++j) {
        a(c, j) *= piv;
        inv(c, j) *= piv;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || a(r, c).is_zero()) continue;
        Rational f = a(r, c);
        for (std::size_t j = 0; j < n; ++j) {
          a(r, j) -= f * a(c, j);
          inv(r, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

  /// Sylvester's criterion: every leading principal minor is positive.
  bool positive_definite() const {
    if (!symmetric()) return false;
    for (std::size_t k = 1; k <= rows_; ++k) {
      Matrix m(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
      if (m.determinant().sign() <= 0) return false;
    }
    return true;
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
  }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Endomorphism of an n-dimensional space, column j = image of e_j.
using Endo = Matrix;

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace lietwist
