#pragma once

#include <span>
#include <string>
#include <vector>

#include "nambu/radical.hpp"

namespace nambu {

/// A phase-space variable. Indices are 0-based.
struct Var {
  enum class Kind { Coord, Momentum, Hbar };
  Kind kind;
  int index = 0;

  static Var x(int i) { return {Kind::Coord, i}; }
  static Var p(int i) { return {Kind::Momentum, i}; }
  static Var hbar() { return {Kind::Hbar, 0}; }
};

/// Point of phase space with s = sqrt(1 - sum x^2) given explicitly.
struct EvalPoint {
  std::vector<Rational> x;
  std::vector<Rational> p;
  Rational s;

  /// Throws DomainError unless s^2 = 1 - sum x^2 and the sizes agree.
  void validate() const;
};

/// One momentum monomial of a PhaseExpr with its coefficient, which lives in
/// the layout (x_1..x_N, hbar).
struct MomentumTerm {
  std::vector<int> exponents;
  RadicalCoeff coeff;
};

/// An unreduced term num * s^s_power / (den_a + den_b * s) for normalize().
/// `num` uses the phase-space layout, the denominators only coordinates;
/// leaving both denominators default-constructed means a denominator of 1.
struct RawTerm {
  Poly num;
  int s_power = 0;
  Poly den_a;
  Poly den_b;
};

/// Exact phase-space function of dimension N: polynomial in the momenta and
/// hbar with coefficients in the radical field over the coordinates. Stored
/// as one fraction (A + B s)/D over the variable layout
/// x_1..x_N, p_1..p_N, hbar.
class PhaseExpr {
 public:
  PhaseExpr() = default;
  explicit PhaseExpr(int n);

  static PhaseExpr constant(int n, GaussScalar c);
  static PhaseExpr variable(int n, Var v);
  static PhaseExpr x(int n, int i) { return variable(n, Var::x(i)); }
  static PhaseExpr p(int n, int i) { return variable(n, Var::p(i)); }
  static PhaseExpr hbar(int n) { return variable(n, Var::hbar()); }
  static PhaseExpr imag(int n) { return constant(n, GaussScalar::i()); }
  static PhaseExpr radical_s(int n);
  /// Canonical form of a list of unreduced terms.
  static PhaseExpr normalize(int n, std::span<const RawTerm> raw);
  static PhaseExpr from_fraction(int n, RadicalFraction f);

  int dim() const noexcept { return n_; }
  int nvars() const noexcept { return 2 * n_ + 1; }
  int var_index(Var v) const;
  bool radical_enabled() const noexcept { return f_.radical_enabled(); }
  const RadicalFraction& fraction() const noexcept { return f_; }
  bool is_zero() const noexcept { return f_.is_zero(); }

  PhaseExpr operator-() const;
  friend PhaseExpr operator+(const PhaseExpr& a, const PhaseExpr& b);
  friend PhaseExpr operator-(const PhaseExpr& a, const PhaseExpr& b);
  /// Pointwise (commutative) product.
  friend PhaseExpr operator*(const PhaseExpr& a, const PhaseExpr& b);
  PhaseExpr& operator+=(const PhaseExpr& b) { return *this = *this + b; }
  PhaseExpr& operator-=(const PhaseExpr& b) { return *this = *this - b; }
  PhaseExpr& operator*=(const PhaseExpr& b) { return *this = *this * b; }
  PhaseExpr scaled(const GaussScalar& c) const;
  /// c * hbar^k * this
  PhaseExpr times_hbar(int k, const GaussScalar& c) const;
  /// Sum with a single common-denominator pass.
  static PhaseExpr sum(int n, std::span<const PhaseExpr> parts);

  /// Inverse of a coordinate-only expression (DomainError otherwise).
  PhaseExpr inverse() const;
  PhaseExpr pow(int e) const;

  PhaseExpr differentiate(Var v) const;
  PhaseExpr derivative(int var) const;

  /// this / (i hbar)^k; InexactDivision when some term has fewer than k hbars.
  PhaseExpr divide_exact_hbar(int k) const;
  PhaseExpr substitute_hbar_zero() const;

  int momentum_degree() const;
  int momentum_degree(int i) const;
  int hbar_degree() const;
  bool depends_on_momenta() const;

  GaussScalar evaluate(const EvalPoint& pt, const Rational& hbar_value) const;

  /// Terms sorted by descending total momentum degree, then descending
  /// exponent vector.
  std::vector<MomentumTerm> terms() const;

  /// Deterministic text form accepted back by the expression parser.
  std::string to_string() const;

  friend bool operator==(const PhaseExpr& a, const PhaseExpr& b);

 private:
  void check_dim(const PhaseExpr& other) const;

  int n_ = 0;
  RadicalFraction f_;
};

bool equals(const PhaseExpr& a, const PhaseExpr& b);

/// Names x1..xN, p1..pN, hbar used by the printer.
std::vector<std::string> phase_var_names(int n);

}  // namespace nambu
