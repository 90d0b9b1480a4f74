#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nambu/rational.hpp"

namespace nambu {

/// Exponent vector packed into 128 bits: the top byte holds the total degree
/// and byte (14 - v) the exponent of variable v. Integer comparison of two
/// packed monomials is then graded-lexicographic with variable 0 largest, and
/// monomial multiplication is plain addition.
using Mono = unsigned __int128;

namespace mono {

inline constexpr int kMaxVars = 15;
inline constexpr int kMaxExponent = 127;
inline constexpr int kDegreeShift = 120;

constexpr int shift(int var) { return 8 * (14 - var); }

constexpr Mono bytes(std::uint8_t b) {
  Mono m = 0;
  for (int i = 0; i < 16; ++i) m = (m << 8) | b;
  return m;
}

inline constexpr Mono kHighBits = bytes(0x80);

constexpr Mono var(int v, int e = 1) {
  return (static_cast<Mono>(e) << shift(v)) | (static_cast<Mono>(e) << kDegreeShift);
}

constexpr int exponent(Mono m, int v) { return static_cast<int>((m >> shift(v)) & 0xff); }
constexpr int degree(Mono m) { return static_cast<int>(m >> kDegreeShift); }

/// Product of two monomials; throws DomainError when an exponent would
/// exceed kMaxExponent.
Mono mul(Mono a, Mono b);

/// True when a divides b.
constexpr bool divides(Mono a, Mono b) { return (((b | kHighBits) - a) & kHighBits) == kHighBits; }

/// Mask selecting the exponent bytes of variables [first, last).
constexpr Mono var_mask(int first, int last) {
  Mono m = 0;
  for (int v = first; v < last; ++v) m |= static_cast<Mono>(0xff) << shift(v);
  return m;
}

/// Keeps only the exponents selected by `mask` and recomputes the degree byte.
Mono project(Mono m, Mono mask);

/// Moves the exponent of variable v to variable to[v] (to[v] < 0 drops it).
Mono remap(Mono m, std::span<const int> to);

}  // namespace mono

struct Term {
  Mono mono;
  GaussScalar coeff;
};

/// Sparse multivariate polynomial over the Gaussian rationals. Terms are kept
/// sorted by ascending monomial with no zero coefficients, so structural
/// equality is value equality.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, GaussScalar c);
  static Poly variable(int nvars, int v, int e = 1);
  static Poly monomial(int nvars, Mono m, GaussScalar c);
  /// Builds from unsorted terms, combining duplicates.
  static Poly from_terms(int nvars, std::vector<Term> terms);
  /// Sums many polynomials at once (single sort-and-combine pass).
  static Poly sum(int nvars, std::vector<Poly> parts);

  int nvars() const noexcept { return nvars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  bool is_constant() const noexcept;
  /// Constant term (zero when absent).
  GaussScalar constant_term() const;
  const Term& leading() const { return terms_.back(); }

  int degree_in(int v) const;
  /// Highest total exponent over variables [first, last).
  int degree_in_range(int first, int last) const;
  bool depends_on_range(int first, int last) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  /// Total order used to sort denominator factors.
  friend bool operator<(const Poly& a, const Poly& b);

  Poly scaled(const GaussScalar& c) const;
  Poly times_term(Mono m, const GaussScalar& c) const;
  Poly derivative(int v) const;
  /// Drops every term whose exponent of v is nonzero.
  Poly without_var(int v) const;
  /// Terms whose exponent of v is exactly e, with v removed.
  Poly coefficient_of(int v, int e) const;
  Poly remapped(int nvars, std::span<const int> to) const;

  /// Exact quotient when `d` divides this polynomial, otherwise nullopt.
  std::optional<Poly> divide_exact(const Poly& d) const;
  /// Exact division by a polynomial `d` whose variables all lie in
  /// [0, first_other); terms are grouped by their remaining variables first.
  std::optional<Poly> divide_exact_block(const Poly& d, int first_other) const;

  GaussScalar evaluate(std::span<const GaussScalar> values) const;

  /// Graded-lex descending text with the given variable names.
  std::string to_string(std::span<const std::string> names) const;

 private:
  int nvars_ = 0;
  std::vector<Term> terms_;
};

/// Scalar as a product factor: "3", "(1/2)", "i", "(1/2)*i", "(1 + 2*i)".
std::string scalar_factor_text(const GaussScalar& c);
/// True when a term with coefficient c is printed with a leading minus.
bool reads_negative(const GaussScalar& c);

/// Appends "name^e" factors of a monomial, separated by '*'.
std::string monomial_to_string(Mono m, int nvars, std::span<const std::string> names);

}  // namespace nambu
