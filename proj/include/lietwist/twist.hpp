#pragma once

#include "lietwist/algebra.hpp"
#include "lietwist/error.hpp"
#include "lietwist/hermitian.hpp"
#include "lietwist/matrix.hpp"

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lietwist {

/// Linear map from a source Lie algebra into End(target), given on the
/// source basis.
class Representation {
 public:
  Representation(LieAlgebra source, LieAlgebra target, std::vector<Endo> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.dim()) throw DomainError("representation needs one image per source basis vector");
    for (const auto& m : images_) {
      if (m.rows() != target_.dim() || m.cols() != target_.dim()) throw DomainError("representation image has wrong size");
    }
  }

  static Representation zero(const LieAlgebra& source, const LieAlgebra& target) {
    return Representation(source, target, std::vector<Endo>(source.dim(), Matrix(target.dim(), target.dim())));
  }

  const LieAlgebra& source() const { return source_; }
  const LieAlgebra& target() const { return target_; }
  const std::vector<Endo>& images() const { return images_; }

  const Endo& operator()(std::size_t i) const { return images_.at(i); }

  Endo operator()(const Vec& x) const {
    Matrix m(target_.dim(), target_.dim());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!x[i].is_zero()) m = m + x[i] * images_[i];
    }
    return m;
  }

  bool is_zero() const {
    for (const auto& m : images_) {
      if (!m.is_zero()) return false;
    }
    return true;
  }

 private:
  LieAlgebra source_;
  LieAlgebra target_;
  std::vector<Endo> images_;
};

enum class DefectKind {
  derivation,    ///< rho(x) is not a derivation of the target
  homomorphism,  ///< rho([x,y]) != [rho(x), rho(y)]
  eq1,           ///< rho1(rho2(a)x)b != rho1(rho2(b)x)a
  eq2,           ///< rho2(rho1(x)a)y != rho2(rho1(y)a)x
  eq3,           ///< [rho1(J1 x), J2] != J2 rho1(x) J2 + rho1(x)
  eq4,           ///< [rho2(J2 a), J1] != J1 rho2(a) J1 + rho2(a)
};

inline const char* to_string(DefectKind k) {
  switch (k) {
    case DefectKind::derivation: return "derivation";
    case DefectKind::homomorphism: return "homomorphism";
    case DefectKind::eq1: return "compatibility-1";
    case DefectKind::eq2: return "compatibility-2";
    case DefectKind::eq3: return "integrability-1";
    case DefectKind::eq4: return "integrability-2";
  }
  return "?";
}

/// A violated identity: which law, at which basis indices (0-based, in the
/// factor each argument lives in), and the nonzero residual.
struct Defect {
  DefectKind kind;
  std::vector<std::size_t> indices;
  Matrix residual;

  std::string str() const {
    std::ostringstream os;
    os << to_string(kind) << " at (";
    for (std::size_t i = 0; i < indices.size(); ++i) os << (i ? ", " : "") << indices[i] + 1;
    os << "): residual " << residual.str();
    return os.str();
  }
};

/// Thrown by build_product when a precondition fails.
class TwistError : public DomainError {
 public:
  explicit TwistError(std::vector<Defect> defects)
      : DomainError(describe(defects)), defects_(std::move(defects)) {}
  explicit TwistError(const std::string& what) : DomainError(what) {}
  const std::vector<Defect>& defects() const { return defects_; }

 private:
  static std::string describe(const std::vector<Defect>& d) {
    std::string s = std::to_string(d.size()) + " defect(s)";
    if (!d.empty()) s += ", first: " + d.front().str();
    return s;
  }
  std::vector<Defect> defects_;
};

namespace detail {
inline Matrix column_matrix(const Vec& v) { return Matrix::from_columns({v}); }
}  // namespace detail

inline std::vector<Defect> check_representation(const Representation& r) {
  const auto& S = r.source();
  const auto& T = r.target();
  const std::size_t m = S.dim(), n = T.dim();
  std::vector<Defect> out;
  for (std::size_t x = 0; x < m; ++x) {
    const Endo& D = r(x);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        Vec res = D * T.bracket(a, b) - T.bracket(D.column(a), basis_vec(n, b)) - T.bracket(basis_vec(n, a), D.column(b));
        if (!is_zero(res)) out.push_back({DefectKind::derivation, {x, a, b}, detail::column_matrix(res)});
      }
    }
  }
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = x + 1; y < m; ++y) {
      Matrix res = r(S.bracket(x, y)) - commutator(r(x), r(y));
      if (!res.is_zero()) out.push_back({DefectKind::homomorphism, {x, y}, res});
    }
  }
  return out;
}

/// Compatibility identities on all basis tuples; rho1: G1 -> End(G2), rho2: G2 -> End(G1).
inline std::vector<Defect> check_compatible(const Representation& rho1, const Representation& rho2) {
  const std::size_t m = rho1.source().dim(), n = rho1.target().dim();
  if (rho2.source().dim() != n || rho2.target().dim() != m) throw DomainError("representation couple dimensions do not match");
  std::vector<Defect> out;
  for (std::size_t x = 0; x < m; ++x) {
    Vec ex = basis_vec(m, x);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        Vec res = rho1(rho2(a) * ex) * basis_vec(n, b) - rho1(rho2(b) * ex) * basis_vec(n, a);
        if (!is_zero(res)) out.push_back({DefectKind::eq1, {x, a, b}, detail::column_matrix(res)});
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    Vec ea = basis_vec(n, a);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = x + 1; y < m; ++y) {
        Vec res = rho2(rho1(x) * ea) * basis_vec(m, y) - rho2(rho1(y) * ea) * basis_vec(m, x);
        if (!is_zero(res)) out.push_back({DefectKind::eq2, {a, x, y}, detail::column_matrix(res)});
      }
    }
  }
  return out;
}

/// Two Hermitian factors and a representation couple between them.
class TwistData {
 public:
  TwistData(HermitianStructure h1, HermitianStructure h2, Representation rho1, Representation rho2)
      : h1_(std::move(h1)), h2_(std::move(h2)), rho1_(std::move(rho1)), rho2_(std::move(rho2)) {
    if (!(rho1_.source() == h1_.algebra()) || !(rho1_.target() == h2_.algebra())) {
      throw DomainError("rho1 must map the first factor into End of the second");
    }
    if (!(rho2_.source() == h2_.algebra()) || !(rho2_.target() == h1_.algebra())) {
      throw DomainError("rho2 must map the second factor into End of the first");
    }
  }

  const HermitianStructure& h1() const { return h1_; }
  const HermitianStructure& h2() const { return h2_; }
  const Representation& rho1() const { return rho1_; }
  const Representation& rho2() const { return rho2_; }
  std::size_t m() const { return h1_.dim(); }
  std::size_t n() const { return h2_.dim(); }

 private:
  HermitianStructure h1_, h2_;
  Representation rho1_, rho2_;
};

/// [rho1(x), J2] = 0 and [rho2(a), J1] = 0 on all basis vectors.
inline bool check_commuting(const TwistData& td) {
  for (const auto& D : td.rho1().images()) {
    if (!commutator(D, td.h2().J()).is_zero()) return false;
  }
  for (const auto& D : td.rho2().images()) {
    if (!commutator(D, td.h1().J()).is_zero()) return false;
  }
  return true;
}

inline std::vector<Defect> integrability_defects(const TwistData& td) {
  const Endo& J1 = td.h1().J();
  const Endo& J2 = td.h2().J();
  std::vector<Defect> out;
  for (std::size_t x = 0; x < td.m(); ++x) {
    const Endo& R = td.rho1()(x);
    Matrix res = commutator(td.rho1()(J1.column(x)), J2) - (J2 * R * J2 + R);
    if (!res.is_zero()) out.push_back({DefectKind::eq3, {x}, res});
  }
  for (std::size_t a = 0; a < td.n(); ++a) {
    const Endo& R = td.rho2()(a);
    Matrix res = commutator(td.rho2()(J2.column(a)), J1) - (J1 * R * J1 + R);
    if (!res.is_zero()) out.push_back({DefectKind::eq4, {a}, res});
  }
  return out;
}

/// Integrability identities, implied by check_commuting.
inline bool check_integrability_general(const TwistData& td) { return integrability_defects(td).empty(); }

/// Bracket on G1 + G2 (G1 basis first): [x,a] = rho1(x)a - rho2(a)x.
inline LieAlgebra product_algebra(const TwistData& td) {
  const std::size_t m = td.m(), n = td.n(), N = m + n;
  const auto& L1 = td.h1().algebra();
  const auto& L2 = td.h2().algebra();
  LieAlgebra L(N);
  auto embed = [&](const Vec& v1, const Vec& v2) {
    Vec v = zero_vec(N);
    for (std::size_t i = 0; i < m; ++i) v[i] = v1[i];
    for (std::size_t k = 0; k < n; ++k) v[m + k] = v2[k];
    return v;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) L.set_bracket(i, j, embed(L1.bracket(i, j), zero_vec(n)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) L.set_bracket(m + a, m + b, embed(zero_vec(m), L2.bracket(a, b)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < n; ++a)
      L.set_bracket(i, m + a, embed(-(td.rho2()(a).column(i)), td.rho1()(i).column(a)));
  return L;
}

inline Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

enum class Gate { checked, unchecked };

/// The twisted product with block-diagonal J and metric. The checked gate
/// rejects non-representations, incompatible couples and integrability
/// failures with a TwistError listing every defect.
inline HermitianStructure build_product(const TwistData& td, Gate gate = Gate::checked) {
  LieAlgebra L = product_algebra(td);
  Endo J = block_diagonal(td.h1().J(), td.h2().J());
  Metric g(block_diagonal(td.h1().metric().matrix(), td.h2().metric().matrix()));
  if (gate == Gate::unchecked) return HermitianStructure::unchecked(std::move(L), std::move(J), std::move(g));

  std::vector<Defect> defects = check_representation(td.rho1());
  auto more = check_representation(td.rho2());
  defects.insert(defects.end(), more.begin(), more.end());
  more = check_compatible(td.rho1(), td.rho2());
  defects.insert(defects.end(), more.begin(), more.end());
  more = integrability_defects(td);
  defects.insert(defects.end(), more.begin(), more.end());
  if (!defects.empty()) throw TwistError(std::move(defects));
  try {
    return HermitianStructure(std::move(L), std::move(J), std::move(g));
  } catch (const DomainError& e) {
    throw TwistError(std::string("product is not Hermitian: ") + e.what());
  }
}

/// A* with g(Ax, y) = g(x, A*y), i.e. A* = g^{-1} A^T g.
inline Endo adjoint(const Endo& A, const Metric& g) {
  if (A.rows() != g.dim() || !A.square()) throw DomainError("adjoint: dimension mismatch");
  return g.inverse() * A.transpose() * g.matrix();
}

namespace detail {

inline Connection assemble_connection(const TwistData& td, bool normal_terms) {
  const std::size_t m = td.m(), n = td.n(), N = m + n;
  const Metric& k1 = td.h1().metric();
  const Metric& k2 = td.h2().metric();
  Connection c1 = levi_civita(td.h1().algebra(), k1);
  Connection c2 = levi_civita(td.h2().algebra(), k2);
  std::vector<Endo> r1, r1s, r2, r2s;
  for (const auto& D : td.rho1().images()) {
    r1.push_back(D);
    r1s.push_back(adjoint(D, k2));
  }
  for (const auto& D : td.rho2().images()) {
    r2.push_back(D);
    r2s.push_back(adjoint(D, k1));
  }
  const Rational half = Rational::parse("1/2");
  auto put = [&](Connection& c, std::size_t i, std::size_t j, const Vec& v1, const Vec& v2) {
    Vec v = zero_vec(N);
    for (std::size_t p = 0; p < m; ++p) v[p] = v1[p];
    for (std::size_t q = 0; q < n; ++q) v[m + q] = v2[q];
    c(i, j) = v;
  };

  Connection nabla(N);
  Matrix k1inv = k1.inverse(), k2inv = k2.inverse();
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      Vec normal = zero_vec(n);
      if (normal_terms) {
        // k2(v, c) = 1/2 k1((rho2(c) + rho2*(c)) x, y)
        Vec rhs(n);
        for (std::size_t c = 0; c < n; ++c) rhs[c] = half * k1((r2[c] + r2s[c]).column(x), basis_vec(m, y));
        normal = k2inv * rhs;
      }
      put(nabla, x, y, c1(x, y), normal);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Vec normal = zero_vec(m);
      if (normal_terms) {
        Vec rhs(m);
        for (std::size_t z = 0; z < m; ++z) rhs[z] = half * k2((r1[z] + r1s[z]).column(a), basis_vec(n, b));
        normal = k1inv * rhs;
      }
      put(nabla, m + a, m + b, normal, c2(a, b));
    }
  }
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t a = 0; a < n; ++a) {
      // nabla_x a and nabla_a x
      put(nabla, x, m + a, -half * (r2[a] + r2s[a]).column(x), half * (r1[x] - r1s[x]).column(a));
      put(nabla, m + a, x, half * (r2[a] - r2s[a]).column(x), -half * (r1[x] + r1s[x]).column(a));
    }
  }
  return nabla;
}

}  // namespace detail

/// Levi-Civita connection of the product assembled blockwise:
///   nabla_x a = 1/2((rho1(x) - rho1*(x))a - (rho2(a) + rho2*(a))x)
///   nabla_a x = 1/2((rho2(a) - rho2*(a))x - (rho1(x) + rho1*(x))a)
///   nabla_x y = nabla^1_x y,  nabla_a b = nabla^2_a b
/// rho1* is taken with respect to k2 and rho2* with respect to k1.
inline Connection product_connection(const TwistData& td) { return detail::assemble_connection(td, false); }

/// product_connection plus the components of nabla_x y in G2 and of
/// nabla_a b in G1 that the Koszul formula produces when the rho's are not
/// skew-adjoint:
///   k2((nabla_x y)_2, c) = 1/2 k1((rho2(c) + rho2*(c))x, y)
///   k1((nabla_a b)_1, z) = 1/2 k2((rho1(z) + rho1*(z))a, b)
inline Connection product_connection_full(const TwistData& td) { return detail::assemble_connection(td, true); }

/// d omega of the product from the factor data:
///   d omega(x,y,c) = -omega1((rho2*(c) + rho2(c))x, y)
///   d omega(x,b,c) = -omega2((rho1*(x) + rho1(x))b, c)
/// and d omega_1, d omega_2 on pure triples.
inline KForm product_dw(const TwistData& td) {
  const std::size_t m = td.m(), n = td.n(), N = m + n;
  const Metric& k1 = td.h1().metric();
  const Metric& k2 = td.h2().metric();
  KForm w1 = fundamental_form(td.h1()), w2 = fundamental_form(td.h2());
  KForm dw1 = ce_d(td.h1().algebra(), w1), dw2 = ce_d(td.h2().algebra(), w2);
  KForm out(3, N);
  for (const auto& [idx, c] : dw1.coefficients()) out.set({idx[0], idx[1], idx[2]}, c);
  for (const auto& [idx, c] : dw2.coefficients()) out.set({m + idx[0], m + idx[1], m + idx[2]}, c);
  for (std::size_t c = 0; c < n; ++c) {
    Endo S = adjoint(td.rho2()(c), k1) + td.rho2()(c);
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = x + 1; y < m; ++y) out.set({x, y, m + c}, -w1(S.column(x), basis_vec(m, y)));
  }
  for (std::size_t x = 0; x < m; ++x) {
    Endo S = adjoint(td.rho1()(x), k2) + td.rho1()(x);
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) out.set({x, m + b, m + c}, -w2(S.column(b), basis_vec(n, c)));
  }
  return out;
}

/// chi(x) = trace of rho(x), as a 1-form on the source.
inline KForm character(const Representation& r) {
  Vec v(r.source().dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = r(i).trace();
  return KForm::covector(v);
}

namespace detail {
inline KForm direct_sum(const KForm& a, const KForm& b) {
  Vec v = a.as_covector();
  Vec w = b.as_covector();
  v.insert(v.end(), w.begin(), w.end());
  return KForm::covector(v);
}
}  // namespace detail

/// theta(x) = theta1(x) - chi_rho1(x), theta(a) = theta2(a) - chi_rho2(a).
inline KForm lee_via_theorem(const TwistData& td) {
  return detail::direct_sum(lee_form(td.h1()) - character(td.rho1()), lee_form(td.h2()) - character(td.rho2()));
}

struct BalancedLcb {
  bool balanced = false;
  bool lcb = false;
};

/// Balanced iff theta_i = chi_rho_i. LCB iff both factors are LCB and
/// theta1(rho2(a)x) - theta2(rho1(x)a) = chi1(rho2(a)x) - chi2(rho1(x)a).
inline BalancedLcb balanced_lcb_test(const TwistData& td) {
  KForm t1 = lee_form(td.h1()), t2 = lee_form(td.h2());
  KForm c1 = character(td.rho1()), c2 = character(td.rho2());
  BalancedLcb r;
  r.balanced = t1 == c1 && t2 == c2;
  r.lcb = ce_d(td.h1().algebra(), t1).is_zero() && ce_d(td.h2().algebra(), t2).is_zero();
  for (std::size_t x = 0; r.lcb && x < td.m(); ++x) {
    Vec ex = basis_vec(td.m(), x);
    for (std::size_t a = 0; a < td.n(); ++a) {
      Vec ea = basis_vec(td.n(), a);
      Vec ax = td.rho2()(a) * ex;
      Vec xa = td.rho1()(x) * ea;
      if (t1(ax) - t2(xa) != c1(ax) - c2(xa)) {
        r.lcb = false;
        break;
      }
    }
  }
  return r;
}

inline bool is_skew_adjoint(const Endo& A, const Metric& g) { return adjoint(A, g) == -A; }

/// Kahler iff both factors are Kahler and rho_i = -rho_i*.
inline bool kahler_test(const TwistData& td) {
  auto closed = [](const HermitianStructure& h) { return ce_d(h.algebra(), fundamental_form(h)).is_zero(); };
  if (!closed(td.h1()) || !closed(td.h2())) return false;
  for (const auto& D : td.rho1().images()) {
    if (!is_skew_adjoint(D, td.h2().metric())) return false;
  }
  for (const auto& D : td.rho2().images()) {
    if (!is_skew_adjoint(D, td.h1().metric())) return false;
  }
  return true;
}

/// Splits a Hermitian structure on G1 + G2 (first m basis vectors span G1)
/// into twist data: rho1(x)a is the G2 part of [x,a], rho2(a)x minus its G1
/// part. Throws when J or g is not block-diagonal or a block is not a
/// subalgebra.
inline TwistData decompose_product(const HermitianStructure& h, std::size_t m) {
  const std::size_t N = h.dim();
  if (m == 0 || m >= N) throw DomainError("split index out of range");
  const std::size_t n = N - m;
  const auto& L = h.algebra();
  auto in_g1 = [&](std::size_t i) { return i < m; };
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      if (in_g1(i) == in_g1(j)) continue;
      if (!h.J()(i, j).is_zero() || !h.metric().matrix()(i, j).is_zero()) {
        throw DomainError("J and the metric must be block-diagonal");
      }
    }
  }
  auto block = [&](const Matrix& M, std::size_t off, std::size_t k) {
    Matrix B(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) B(i, j) = M(off + i, off + j);
    return B;
  };
  LieAlgebra L1(m), L2(n);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      if (in_g1(i) != in_g1(j)) continue;
      Vec v = L.bracket(i, j);
      std::size_t off = in_g1(i) ? 0 : m;
      std::size_t k = in_g1(i) ? m : n;
      Vec part(v.begin() + static_cast<std::ptrdiff_t>(off), v.begin() + static_cast<std::ptrdiff_t>(off + k));
      for (std::size_t c = 0; c < N; ++c) {
        if ((c >= off && c < off + k) || v[c].is_zero()) continue;
        throw DomainError("block " + std::string(in_g1(i) ? "G1" : "G2") + " is not a subalgebra");
      }
      (in_g1(i) ? L1 : L2).set_bracket(i - off, j - off, part);
    }
  }
  std::vector<Endo> r1(m, Matrix(n, n)), r2(n, Matrix(m, m));
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t a = 0; a < n; ++a) {
      Vec v = L.bracket(x, m + a);
      for (std::size_t b = 0; b < n; ++b) r1[x](b, a) = v[m + b];
      for (std::size_t y = 0; y < m; ++y) r2[a](y, x) = -v[y];
    }
  }
  HermitianStructure h1(L1, block(h.J(), 0, m), Metric(block(h.metric().matrix(), 0, m)));
  HermitianStructure h2(L2, block(h.J(), m, n), Metric(block(h.metric().matrix(), m, n)));
  return TwistData(h1, h2, Representation(L1, L2, r1), Representation(L2, L1, r2));
}

/// Standard complex structure [[0,-I],[I,0]] on R^{2p}.
inline Endo standard_complex(std::size_t p) {
  Matrix J(2 * p, 2 * p);
  for (std::size_t k = 0; k < p; ++k) {
    J(p + k, k) = 1;
    J(k, p + k) = -1;
  }
  return J;
}

/// Abelian Hermitian R^{2p} with the standard J and identity metric.
inline HermitianStructure abelian_factor(std::size_t p) {
  return HermitianStructure(LieAlgebra(2 * p), standard_complex(p), Metric::identity(2 * p));
}

/// Diagonal blocks [[A, B], [-B, A]] in End(R^{2q}).
inline Endo complex_diagonal_block(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  const std::size_t q = a.size();
  if (b.size() != q) throw DomainError("block diagonals have different lengths");
  Matrix M(2 * q, 2 * q);
  for (std::size_t k = 0; k < q; ++k) {
    M(k, k) = a[k];
    M(q + k, q + k) = a[k];
    M(k, q + k) = b[k];
    M(q + k, k) = -b[k];
  }
  return M;
}

/// R^{2p} x R^{2q} with rho1(e_i) = [[A_i, B_i], [-B_i, A_i]] and
/// rho2(f_j) = [[C_j, D_j], [-D_j, C_j]], all blocks diagonal. A and B hold
/// 2p lists of length q; C and D hold 2q lists of length p.
inline TwistData build_example_2p2q(std::size_t p, std::size_t q, const std::vector<std::vector<Rational>>& A,
                                    const std::vector<std::vector<Rational>>& B,
                                    const std::vector<std::vector<Rational>>& C,
                                    const std::vector<std::vector<Rational>>& D, bool require_trace_zero = true) {
  if (p == 0 || q == 0) throw DomainError("p and q must be positive");
  if (A.size() != 2 * p || B.size() != 2 * p) throw DomainError("A and B need one diagonal per basis vector of R^2p");
  if (C.size() != 2 * q || D.size() != 2 * q) throw DomainError("C and D need one diagonal per basis vector of R^2q");
  auto trace = [](const std::vector<Rational>& d) {
    Rational t;
    for (const auto& x : d) t += x;
    return t;
  };
  std::vector<Endo> r1, r2;
  for (std::size_t i = 0; i < 2 * p; ++i) {
    if (A[i].size() != q || B[i].size() != q) throw DomainError("A_i and B_i must have length q");
    if (require_trace_zero && !trace(A[i]).is_zero()) throw DomainError("tr A_" + std::to_string(i + 1) + " != 0");
    r1.push_back(complex_diagonal_block(A[i], B[i]));
  }
  for (std::size_t j = 0; j < 2 * q; ++j) {
    if (C[j].size() != p || D[j].size() != p) throw DomainError("C_j and D_j must have length p");
    if (require_trace_zero && !trace(C[j]).is_zero()) throw DomainError("tr C_" + std::to_string(j + 1) + " != 0");
    r2.push_back(complex_diagonal_block(C[j], D[j]));
  }
  HermitianStructure h1 = abelian_factor(p), h2 = abelian_factor(q);
  TwistData td(h1, h2, Representation(h1.algebra(), h2.algebra(), r1), Representation(h2.algebra(), h1.algebra(), r2));
  std::vector<Defect> defects = check_representation(td.rho1());
  auto more = check_representation(td.rho2());
  defects.insert(defects.end(), more.begin(), more.end());
  more = check_compatible(td.rho1(), td.rho2());
  defects.insert(defects.end(), more.begin(), more.end());
  if (!defects.empty()) throw TwistError(std::move(defects));
  return td;
}

}  // namespace lietwist
