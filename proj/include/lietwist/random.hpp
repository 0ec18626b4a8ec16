#pragma once

#include "lietwist/hermitian.hpp"
#include "lietwist/rational.hpp"
#include "lietwist/salamon.hpp"
#include "lietwist/twist.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace lietwist {

/// Deterministic source of small rationals. Range reduction is done by hand
/// so sequences are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  bool coin() { return next() & 1; }

  /// num/den with num in [-9, 9] and den in [1, 4].
  Rational rational() {
    long num = static_cast<long>(uniform(-9, 9));
    long den = static_cast<long>(uniform(1, 4));
    return Rational(mpz_class(num), mpz_class(den));
  }

  Rational nonzero() {
    for (;;) {
      Rational r = rational();
      if (!r.is_zero()) return r;
    }
  }

  Rational positive() { return nonzero().abs(); }

 private:
  std::mt19937_64 engine_;
};

/// Complex scalar a + ib acting on R^2 as [[a, -b], [b, a]].
inline Endo complex_scalar(const Rational& a, const Rational& b) {
  return Matrix::from_rows({{a, -b}, {b, a}});
}

/// Embeds a k x k block at offset `off` of an n x n zero matrix.
inline Matrix embed_block(const Matrix& b, std::size_t off, std::size_t n) {
  Matrix M(n, n);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) M(off + i, off + j) = b(i, j);
  return M;
}

/// Structure family used by random_twist_data.
enum class TwistAnsatz {
  r2_r2_rho1,      ///< R^2 x R^2, rho1 complex scalars, rho2 = 0
  r2_r2_rho2,      ///< R^2 x R^2, rho1 = 0, rho2 complex scalars
  aff_r2,          ///< aff(R) x R^2, rho1(e1) = 0, rho1(e2) complex scalar
  r2_rr31_rho2,    ///< R^2 x rr_{3,1}, rho1 = 0, rho2(f1), rho2(f4) complex scalars
  r2_rr31_rho1,    ///< R^2 x rr_{3,1}, rho2 = 0, rho1 complex scalars on span(f2, f3)
  r2_r4_rho1,      ///< R^2 x R^4, rho1 complex diagonal, rho2 = 0
  r2_r4_rho2,      ///< R^2 x R^4, rho1 = 0, rho2 complex scalars
};

inline constexpr TwistAnsatz all_ansatze[] = {
    TwistAnsatz::r2_r2_rho1,   TwistAnsatz::r2_r2_rho2,   TwistAnsatz::aff_r2,     TwistAnsatz::r2_rr31_rho2,
    TwistAnsatz::r2_rr31_rho1, TwistAnsatz::r2_r4_rho1,   TwistAnsatz::r2_r4_rho2,
};

inline std::string to_string(TwistAnsatz a) {
  switch (a) {
    case TwistAnsatz::r2_r2_rho1: return "R2xR2/rho1";
    case TwistAnsatz::r2_r2_rho2: return "R2xR2/rho2";
    case TwistAnsatz::aff_r2: return "aff(R)xR2";
    case TwistAnsatz::r2_rr31_rho2: return "R2xrr31/rho2";
    case TwistAnsatz::r2_rr31_rho1: return "R2xrr31/rho1";
    case TwistAnsatz::r2_r4_rho1: return "R2xR4/rho1";
    case TwistAnsatz::r2_r4_rho2: return "R2xR4/rho2";
  }
  return "?";
}

/// Options shaping the random representation images.
struct TwistSampling {
  bool skew = false;  ///< force zero real parts (skew-adjoint images)
};

namespace detail {

inline Rational real_part(Rng& rng, const TwistSampling& s) { return s.skew ? Rational(0) : rng.rational(); }

inline HermitianStructure plane(Rng& rng, bool affine) {
  LieAlgebra L = affine ? parse_salamon("(-12,0)") : LieAlgebra(2);
  return HermitianStructure(L, standard_complex(1), Metric(rng.positive() * Matrix::identity(2)));
}

inline HermitianStructure rr31(Rng& rng) {
  Rational sigma = rng.positive(), s = rng.positive();
  Matrix g(4, 4);
  g(0, 0) = sigma;
  g(3, 3) = sigma;
  g(1, 1) = s;
  g(2, 2) = s;
  Endo J = almost_complex_from_images(4, {{basis_vec(4, 0), basis_vec(4, 3)}, {basis_vec(4, 1), basis_vec(4, 2)}});
  return HermitianStructure(parse_salamon("(0,-12,-13,0)"), J, Metric(g));
}

inline HermitianStructure r4(Rng& rng) {
  Rational p = rng.positive(), q = rng.positive();
  Matrix g(4, 4);
  g(0, 0) = p;
  g(2, 2) = p;
  g(1, 1) = q;
  g(3, 3) = q;
  return HermitianStructure(LieAlgebra(4), standard_complex(2), Metric(g));
}

}  // namespace detail

/// A random valid TwistData (representations, compatible couple, commuting
/// with J) of the requested shape.
inline TwistData random_twist_data(Rng& rng, TwistAnsatz ansatz, TwistSampling opts = {}) {
  auto cs = [&] {
    Rational a = detail::real_part(rng, opts);
    return complex_scalar(a, rng.rational());
  };
  switch (ansatz) {
    case TwistAnsatz::r2_r2_rho1:
    case TwistAnsatz::r2_r2_rho2: {
      auto h1 = detail::plane(rng, false), h2 = detail::plane(rng, false);
      auto z12 = Representation::zero(h1.algebra(), h2.algebra());
      auto z21 = Representation::zero(h2.algebra(), h1.algebra());
      if (ansatz == TwistAnsatz::r2_r2_rho1) {
        return TwistData(h1, h2, Representation(h1.algebra(), h2.algebra(), {cs(), cs()}), z21);
      }
      return TwistData(h1, h2, z12, Representation(h2.algebra(), h1.algebra(), {cs(), cs()}));
    }
    case TwistAnsatz::aff_r2: {
      auto h1 = detail::plane(rng, true), h2 = detail::plane(rng, false);
      return TwistData(h1, h2, Representation(h1.algebra(), h2.algebra(), {Matrix(2, 2), cs()}),
                       Representation::zero(h2.algebra(), h1.algebra()));
    }
    case TwistAnsatz::r2_rr31_rho2: {
      auto h1 = detail::plane(rng, false), h2 = detail::rr31(rng);
      std::vector<Endo> r2 = {cs(), Matrix(2, 2), Matrix(2, 2), cs()};
      return TwistData(h1, h2, Representation::zero(h1.algebra(), h2.algebra()), Representation(h2.algebra(), h1.algebra(), r2));
    }
    case TwistAnsatz::r2_rr31_rho1: {
      auto h1 = detail::plane(rng, false), h2 = detail::rr31(rng);
      // J2 f2 = f3, so a complex scalar on span(f2, f3) reads [[a, -b], [b, a]] there.
      std::vector<Endo> r1 = {embed_block(cs(), 1, 4), embed_block(cs(), 1, 4)};
      return TwistData(h1, h2, Representation(h1.algebra(), h2.algebra(), r1), Representation::zero(h2.algebra(), h1.algebra()));
    }
    case TwistAnsatz::r2_r4_rho1: {
      auto h1 = detail::plane(rng, false), h2 = detail::r4(rng);
      std::vector<Endo> r1;
      for (int i = 0; i < 2; ++i) {
        Rational a1 = detail::real_part(rng, opts), a2 = detail::real_part(rng, opts);
        r1.push_back(complex_diagonal_block({a1, a2}, {rng.rational(), rng.rational()}));
      }
      return TwistData(h1, h2, Representation(h1.algebra(), h2.algebra(), r1), Representation::zero(h2.algebra(), h1.algebra()));
    }
    case TwistAnsatz::r2_r4_rho2: {
      auto h1 = detail::plane(rng, false), h2 = detail::r4(rng);
      std::vector<Endo> r2 = {cs(), cs(), cs(), cs()};
      return TwistData(h1, h2, Representation::zero(h1.algebra(), h2.algebra()), Representation(h2.algebra(), h1.algebra(), r2));
    }
  }
  throw DomainError("unknown ansatz");
}

}  // namespace lietwist
