#pragma once

#include <span>

#include "nambu/phase_expr.hpp"

namespace nambu {

/// Groenewold-Moyal star product, summed exactly. The series stops once
/// every momentum has been differentiated away, so the order never exceeds
/// deg_p(f) + deg_p(g).
PhaseExpr star(const PhaseExpr& f, const PhaseExpr& g);

/// sum_i (d_xi f d_pi g - d_pi f d_xi g)
PhaseExpr poisson(const PhaseExpr& f, const PhaseExpr& g);

/// (f*g - g*f) / (i hbar)
PhaseExpr moyal(const PhaseExpr& f, const PhaseExpr& g);

/// Star commutator f*g - g*f.
PhaseExpr star_commutator(const PhaseExpr& f, const PhaseExpr& g);

/// Determinant of the matrix of partials of the 2N entries with respect to
/// (x_1, p_1, ..., x_N, p_N), rows in the given order.
PhaseExpr nambu_jacobian(std::span<const PhaseExpr> entries);

/// Contracts a 2k-entry Nambu bracket down from 2N slots by appending the
/// canonical pairs (x_i, p_i) over all (N-k)-subsets of indices. For k = 1
/// this is the Poisson bracket.
PhaseExpr symplectic_trace(std::span<const PhaseExpr> entries, int n);

}  // namespace nambu
