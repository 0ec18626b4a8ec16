#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace lietwist {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// A thin value type over GMP's mpq_class. Wrapping it keeps GMP's
/// expression templates out of user code (so `auto x = a * b;` is safe).
class Rational {
 public:
  Rational() = default;

  template <typename Int>
    requires std::is_integral_v<Int>
  Rational(Int v) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<Int>) {
      value_ = mpq_class(mpz_class(static_cast<long>(v)));
    } else {
      value_ = mpq_class(mpz_class(static_cast<unsigned long>(v)));
    }
  }

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }

  explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  /// Parses "a", "-a", "a/b" with decimal integers.
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) {
        return Rational(mpz_class(std::string(text)), mpz_class(1));
      }
      return Rational(mpz_class(std::string(text.substr(0, slash))),
                      mpz_class(std::string(text.substr(slash + 1))));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("not a rational literal: " + std::string(text));
    }
  }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Rational abs() const { return Rational(::abs(value_)); }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    return Rational(mpq_class(1) / value_);
  }

  /// Exact square root, if this is the square of a rational.
  std::optional<Rational> sqrt() const {
    if (sign() < 0) return std::nullopt;
    mpz_class n = value_.get_num();
    mpz_class d = value_.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
      return std::nullopt;
    }
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
  }

  Rational pow(int exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(n, d);
  }

  std::string str() const { return value_.get_str(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_{0};
};

}  // namespace lietwist

template <>
struct std::hash<lietwist::Rational> {
  std::size_t operator()(const lietwist::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
