#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace nambu {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 63 bits are kept inline and
/// combined with 128-bit intermediates; anything larger spills to GMP. The
/// two representations are never both live, and a value that shrinks back
/// into range is demoted, so equality can compare representations directly.
class Rational {
 public:
  Rational() noexcept = default;
  Rational(long long n) noexcept;  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  /// Parses "n" or "n/d" with optional leading sign.
  static Rational parse(std::string_view text);

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const noexcept;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational inverse() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  mpq_class to_mpq() const;
  /// "n" or "n/d".
  std::string to_string() const;

 private:
  void assign_big(mpq_class q);
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

/// Gaussian rational re + im*i.
class GaussScalar {
 public:
  GaussScalar() = default;
  GaussScalar(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussScalar(long long re) : re_(re) {}             // NOLINT(google-explicit-constructor)
  GaussScalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussScalar i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const noexcept { return re_.is_one() && im_.is_zero(); }
  bool is_real() const noexcept { return im_.is_zero(); }

  GaussScalar operator-() const { return {-re_, -im_}; }
  GaussScalar& operator+=(const GaussScalar& rhs);
  GaussScalar& operator-=(const GaussScalar& rhs);
  GaussScalar& operator*=(const GaussScalar& rhs);
  GaussScalar& operator/=(const GaussScalar& rhs);

  friend GaussScalar operator+(GaussScalar a, const GaussScalar& b) { return a += b; }
  friend GaussScalar operator-(GaussScalar a, const GaussScalar& b) { return a -= b; }
  friend GaussScalar operator*(GaussScalar a, const GaussScalar& b) { return a *= b; }
  friend GaussScalar operator/(GaussScalar a, const GaussScalar& b) { return a /= b; }
  friend bool operator==(const GaussScalar& a, const GaussScalar& b) = default;

  GaussScalar conj() const { return {re_, -im_}; }
  GaussScalar inverse() const;

  /// Readable form: "3", "-1/2", "2*i", "(1 - 3/4*i)".
  std::string to_string() const;

 private:
  Rational re_;
  Rational im_;
};

}  // namespace nambu
