#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nambu/poly.hpp"

namespace nambu {

/// Product of powers of monic polynomials in the coordinate variables,
/// kept factored so that common denominators are cheap to form.
class Denominator {
 public:
  struct Factor {
    Poly base;
    int exponent;
  };

  Denominator() = default;

  bool is_one() const noexcept { return factors_.empty(); }
  std::span<const Factor> factors() const noexcept { return factors_; }

  /// Multiplies in base^e; `base` must be monic and non-constant.
  void multiply(const Poly& base, int e = 1);
  void divide_once(std::size_t index);

  friend Denominator lcm(const Denominator& a, const Denominator& b);
  friend Denominator operator*(const Denominator& a, const Denominator& b);
  friend bool operator==(const Denominator& a, const Denominator& b);

  /// Expanded product as a polynomial in `nvars` variables.
  Poly expand(int nvars) const;
  /// Expanded quotient this / d, where d must divide this factor-wise.
  Poly cofactor(const Denominator& d, int nvars) const;
  /// Product of the distinct bases.
  Denominator radical() const;

  Denominator remapped(int nvars, std::span<const int> to) const;

 private:
  std::vector<Factor> factors_;  // sorted by base, exponents positive
};

/// Element (A + B*s) / D of the coefficient field, where s^2 = 1 - sum x_i^2
/// over the coordinate variables 0..coords-1. A and B may carry any other
/// polynomial variables (momenta, hbar); D involves coordinates only.
class RadicalFraction {
 public:
  RadicalFraction() = default;
  RadicalFraction(int coords, int nvars) : coords_(coords), nvars_(nvars), a_(nvars), b_(nvars) {}

  static RadicalFraction from_poly(int coords, Poly a);
  static RadicalFraction constant(int coords, int nvars, GaussScalar c);
  /// The generator s itself.
  static RadicalFraction radical_s(int coords, int nvars);
  /// (a + b*s) / d, normalized.
  static RadicalFraction make(int coords, Poly a, Poly b, Denominator d);

  int coords() const noexcept { return coords_; }
  int nvars() const noexcept { return nvars_; }
  const Poly& a() const noexcept { return a_; }
  const Poly& b() const noexcept { return b_; }
  const Denominator& denominator() const noexcept { return d_; }
  /// True once the value has involved s or a nontrivial denominator.
  bool radical_enabled() const noexcept { return radical_; }

  bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }

  RadicalFraction operator-() const;
  friend RadicalFraction operator+(const RadicalFraction& x, const RadicalFraction& y);
  friend RadicalFraction operator-(const RadicalFraction& x, const RadicalFraction& y);
  friend RadicalFraction operator*(const RadicalFraction& x, const RadicalFraction& y);
  RadicalFraction scaled(const GaussScalar& c) const;
  RadicalFraction times_poly(const Poly& p) const;
  /// Multiplies by c*m where m involves no coordinate variable, so no
  /// renormalization is needed.
  RadicalFraction times_monomial(Mono m, const GaussScalar& c) const;

  /// Multiplicative inverse. Only values whose A and B involve nothing but
  /// coordinates can be inverted; anything else raises DomainError.
  RadicalFraction inverse() const;
  RadicalFraction pow(int e) const;

  RadicalFraction derivative(int var) const;

  /// Sum of many fractions with one common-denominator pass.
  static RadicalFraction sum(int coords, int nvars, std::span<const RadicalFraction> parts);

  friend bool operator==(const RadicalFraction& x, const RadicalFraction& y) { return (x - y).is_zero(); }

  /// Substitutes every variable and s; throws EvaluationPole when D vanishes.
  GaussScalar evaluate(std::span<const GaussScalar> values, const GaussScalar& s) const;

  /// Applies `fn` to both A and B and renormalizes; `fn` must be linear and
  /// leave the coordinate variables alone.
  template <class Fn>
  RadicalFraction map_numerators(Fn&& fn) const {
    RadicalFraction r = *this;
    r.a_ = fn(a_);
    r.b_ = fn(b_);
    r.normalize();
    return r;
  }

  /// Moves every polynomial into a new variable layout (see Poly::remapped).
  RadicalFraction remapped(int coords, int nvars, std::span<const int> to) const;

  /// Poly sum x_i^2 in the given layout.
  static Poly q_squared(int coords, int nvars);

 private:
  void normalize();
  void check_compatible(const RadicalFraction& other) const;

  int coords_ = 0;
  int nvars_ = 0;
  bool radical_ = false;
  Poly a_;
  Poly b_;
  Denominator d_;
};

using RadicalCoeff = RadicalFraction;

}  // namespace nambu
