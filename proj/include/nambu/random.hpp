#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "nambu/operators.hpp"
#include "nambu/phase_expr.hpp"

namespace nambu {

/// Generator seeded from (seed, tag) with a stable FNV-1a mix, so every
/// catalog entry draws the same values regardless of run order.
std::mt19937_64 seeded_rng(std::uint64_t seed, std::string_view tag);

/// Uniform integer in [lo, hi].
int uniform_int(std::mt19937_64& rng, int lo, int hi);

/// Point with rational coordinates and rational s = sqrt(1 - q^2) > 0,
/// obtained from a rational point on the unit sphere S^n. Both q^2 and
/// 1 - q^2 are nonzero. Momenta are small rationals.
EvalPoint random_circle_point(int n, std::mt19937_64& rng);

struct RandomExprOptions {
  int max_momentum_degree = 2;
  int max_coordinate_degree = 2;
  int max_terms = 4;
  int coefficient_bound = 3;
  bool use_radical = false;  // multiply some terms by s
  bool use_hbar = false;     // multiply some terms by hbar
};

/// Sum of random monomials c * x^a * p^b (* s) (* hbar) with small integer
/// c; never zero.
PhaseExpr random_expr(int n, std::mt19937_64& rng, const RandomExprOptions& opts = {});

/// dim x dim matrix of integers in [-bound, bound], times hbar^0.
ExactMatrix random_matrix(int dim, std::mt19937_64& rng, int bound = 3);

}  // namespace nambu
