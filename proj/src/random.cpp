#include "nambu/random.hpp"

#include <vector>

namespace nambu {

std::mt19937_64 seeded_rng(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
  for (char c : tag) mix(static_cast<unsigned char>(c));
  return std::mt19937_64(h);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

EvalPoint random_circle_point(int n, std::mt19937_64& rng) {
  // Inverse stereographic projection of u in Q^n: (2u, |u|^2 - 1)/(|u|^2 + 1)
  // lies on S^n, so the last component is a rational square root of 1 - q^2.
  for (;;) {
    std::vector<Rational> u;
    Rational norm(0);
    for (int a = 0; a < n; ++a) {
      Rational v(uniform_int(rng, -6, 6), uniform_int(rng, 1, 5));
      u.push_back(v);
      norm += v * v;
    }
    Rational denom = norm + Rational(1);
    Rational s = (norm - Rational(1)) / denom;
    if (s.sign() < 0) s = -s;
    if (s.is_zero() || norm.is_zero()) continue;
    EvalPoint pt;
    for (const auto& v : u) pt.x.push_back(Rational(2) * v / denom);
    pt.s = s;
    for (int a = 0; a < n; ++a) pt.p.push_back(Rational(uniform_int(rng, -5, 5), uniform_int(rng, 1, 3)));
    return pt;
  }
}

PhaseExpr random_expr(int n, std::mt19937_64& rng, const RandomExprOptions& opts) {
  const int terms = uniform_int(rng, 1, opts.max_terms);
  std::vector<PhaseExpr> parts;
  for (int t = 0; t < terms; ++t) {
    int c = 0;
    while (c == 0) c = uniform_int(rng, -opts.coefficient_bound, opts.coefficient_bound);
    PhaseExpr term = PhaseExpr::constant(n, GaussScalar(c));
    int xdeg = uniform_int(rng, 0, opts.max_coordinate_degree);
    for (int k = 0; k < xdeg; ++k) term *= PhaseExpr::x(n, uniform_int(rng, 0, n - 1));
    int pdeg = uniform_int(rng, 0, opts.max_momentum_degree);
    for (int k = 0; k < pdeg; ++k) term *= PhaseExpr::p(n, uniform_int(rng, 0, n - 1));
    if (opts.use_radical && uniform_int(rng, 0, 2) == 0) term *= PhaseExpr::radical_s(n);
    if (opts.use_hbar && uniform_int(rng, 0, 3) == 0) term *= PhaseExpr::hbar(n);
    parts.push_back(term);
  }
  PhaseExpr e = PhaseExpr::sum(n, parts);
  if (e.is_zero()) return PhaseExpr::p(n, 0) * PhaseExpr::x(n, n - 1);
  return e;
}

ExactMatrix random_matrix(int dim, std::mt19937_64& rng, int bound) {
  ExactMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      int v = uniform_int(rng, -bound, bound);
      if (v != 0) m.add(r, c, 0, GaussScalar(v));
    }
  }
  return m;
}

}  // namespace nambu
