#pragma once

#include <span>
#include <string>
#include <vector>

#include "nambu/algebra.hpp"
#include "nambu/poly.hpp"

namespace nambu {

/// Square matrix whose entries are polynomials in hbar over the Gaussian
/// rationals, stored as sum_k hbar^k C_k with scalar matrices C_k.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  explicit ExactMatrix(int dim);

  static ExactMatrix identity(int dim);
  /// Row-major integer matrix times hbar^k.
  static ExactMatrix from_integers(int dim, std::span<const long long> values, int hbar_power = 0);

  int dim() const noexcept { return dim_; }
  bool is_zero() const noexcept { return layers_.empty(); }
  int hbar_degree() const noexcept { return static_cast<int>(layers_.size()) - 1; }

  /// Entry (r, c) as a polynomial in the single variable hbar.
  Poly entry(int r, int c) const;
  GaussScalar coefficient(int r, int c, int hbar_power) const;
  void add(int r, int c, int hbar_power, const GaussScalar& value);

  ExactMatrix operator-() const;
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  ExactMatrix& operator+=(const ExactMatrix& b) { return *this = *this + b; }
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

  ExactMatrix scaled(const GaussScalar& c) const;
  ExactMatrix times_hbar(int k) const;

  /// Rows as "[a, b; c, d]" with hbar-polynomial entries.
  std::string to_string() const;

 private:
  using Layer = std::vector<GaussScalar>;
  void trim();
  Layer& layer(int k);

  int dim_ = 0;
  std::vector<Layer> layers_;  // layers_[k] is C_k, row-major; top layer nonzero
};

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b);
/// Kronecker product a (x) b.
ExactMatrix tensor(const ExactMatrix& a, const ExactMatrix& b);
/// Block-diagonal a (+) b.
ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b);

/// Exact matrices under matrix multiplication, for qnb/jordan.
struct MatrixAlgebra {
  using Element = ExactMatrix;
  int dim;

  Element one() const { return ExactMatrix::identity(dim); }
  Element zero() const { return ExactMatrix(dim); }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element sum(std::span<const Element> parts) const;
  bool equal(const Element& a, const Element& b) const { return a == b; }
};

/// Occupation-number states of n oscillators, either one sector
/// sum m_i = M or all sectors up to M. States are ordered by descending
/// total, then descending lexicographic order.
class FockBasis {
 public:
  static FockBasis sector(int n, int total);
  static FockBasis up_to(int n, int max_total);

  int oscillators() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(states_.size()); }
  const std::vector<std::vector<int>>& states() const noexcept { return states_; }
  /// Position of a state, or -1 when it lies outside the basis.
  int index(const std::vector<int>& state) const;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> states_;
};

/// N_ij = b_i a_j acting as N_ij|m> = hbar m_j |m - e_j + e_i>, 1-based i, j.
ExactMatrix number_matrix(const FockBasis& basis, int i, int j);
ExactMatrix number_matrix(int n, int total, int i, int j);

struct OscillatorCheck {
  ExactMatrix bracket;          // [f, N_p1, N_p1p2, N_p2, ..., N_pn]
  ExactMatrix jordan_form;      // hbar^(n-1) {[f, N], N_p1p2, ...}
  ExactMatrix commutator_form;  // hbar^(n-1) [{f, N_p1p2, ...}, N]
  bool holds = false;
  ExpansionStats stats;
};

/// Threads the number operators along `path` (a 1-based permutation of
/// 1..n) and compares the 2n-bracket with its two reduced forms.
OscillatorCheck oscillator_theorem_check(const FockBasis& basis, const ExactMatrix& f, const std::vector<int>& path);

struct Su2Rep {
  ExactMatrix lplus;
  ExactMatrix lminus;
  ExactMatrix lz;

  ExactMatrix lx() const;  // (L+ + L-)/2
  ExactMatrix ly() const;  // (L+ - L-)/(2i)
  ExactMatrix casimir() const;  // Lx Lx + Ly Ly + Lz Lz
};

/// Integer-weight realization of spin twoJ/2 on |k>, k = 0..twoJ:
/// Lz|k> = hbar(j-k)|k>, L-|k> = hbar|k+1>, L+|k> = hbar k(2j+1-k)|k-1>.
Su2Rep su2_verma(int two_j);
/// Block-diagonal sum of two representations.
Su2Rep su2_direct_sum(const Su2Rep& a, const Su2Rep& b);

}  // namespace nambu
