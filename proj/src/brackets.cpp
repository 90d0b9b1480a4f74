#include "nambu/brackets.hpp"

#include <functional>
#include <map>

#include "nambu/error.hpp"

namespace nambu {
namespace {

// Memoized mixed partials d_x^alpha d_p^beta of one expression. The key is
// alpha followed by beta; each entry is derived from a neighbour with one
// fewer derivative, momentum derivatives first since they are cheap.
class PartialCache {
 public:
  explicit PartialCache(const PhaseExpr& e) : e_(e), n_(e.dim()) {}

  const PhaseExpr& get(const std::vector<int>& key) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    PhaseExpr value;
    std::vector<int> parent = key;
    int var = -1;
    for (int i = 0; i < n_ && var < 0; ++i) {
      if (parent[static_cast<std::size_t>(n_ + i)] > 0) {
        --parent[static_cast<std::size_t>(n_ + i)];
        var = n_ + i;
      }
    }
    for (int i = 0; i < n_ && var < 0; ++i) {
      if (parent[static_cast<std::size_t>(i)] > 0) {
        --parent[static_cast<std::size_t>(i)];
        var = i;
      }
    }
    if (var < 0) {
      value = e_;
    } else {
      const PhaseExpr& base = get(parent);
      value = base.is_zero() ? base : base.derivative(var);
    }
    return cache_.emplace(key, std::move(value)).first->second;
  }

 private:
  const PhaseExpr& e_;
  int n_;
  std::map<std::vector<int>, PhaseExpr> cache_;
};

// Calls fn(idx) for every multi-index with idx[i] <= bound[i] and total <= cap.
void for_each_index(const std::vector<int>& bound, int cap, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(bound.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int used) {
    if (pos == idx.size()) {
      fn(idx);
      return;
    }
    for (int v = 0; v <= bound[pos] && used + v <= cap; ++v) {
      idx[pos] = v;
      rec(pos + 1, used + v);
    }
    idx[pos] = 0;
  };
  rec(0, 0);
}

Rational factorial(int k) {
  Rational r(1);
  for (int i = 2; i <= k; ++i) r *= Rational(i);
  return r;
}

}  // namespace

PhaseExpr star(const PhaseExpr& f, const PhaseExpr& g) {
  if (f.dim() != g.dim()) throw DimensionError("star product of different dimensions");
  const int n = f.dim();
  if (f.is_zero() || g.is_zero()) return PhaseExpr(n);
  if (!f.depends_on_momenta() && !g.depends_on_momenta()) return f * g;

  const int deg_f = f.momentum_degree();
  const int deg_g = g.momentum_degree();
  std::vector<int> bound_alpha(static_cast<std::size_t>(n));
  std::vector<int> bound_beta(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    bound_alpha[static_cast<std::size_t>(i)] = g.momentum_degree(i);
    bound_beta[static_cast<std::size_t>(i)] = f.momentum_degree(i);
  }

  PartialCache df(f);
  PartialCache dg(g);
  std::vector<PhaseExpr> parts;
  const GaussScalar half_i(Rational(0), Rational(1, 2));

  for_each_index(bound_beta, deg_f, [&](const std::vector<int>& beta) {
    int nb = 0;
    Rational beta_fact(1);
    for (int b : beta) {
      nb += b;
      beta_fact *= factorial(b);
    }
    for_each_index(bound_alpha, deg_g, [&](const std::vector<int>& alpha) {
      int na = 0;
      Rational alpha_fact(1);
      for (int a : alpha) {
        na += a;
        alpha_fact *= factorial(a);
      }
      std::vector<int> kf(alpha);
      kf.insert(kf.end(), beta.begin(), beta.end());
      std::vector<int> kg(beta);
      kg.insert(kg.end(), alpha.begin(), alpha.end());
      const PhaseExpr& left = df.get(kf);
      if (left.is_zero()) return;
      const PhaseExpr& right = dg.get(kg);
      if (right.is_zero()) return;
      int order = na + nb;
      if (order > deg_f + deg_g) throw Error("star series exceeded its termination bound");
      GaussScalar c(1);
      for (int k = 0; k < order; ++k) c *= half_i;
      if (nb % 2 == 1) c = -c;
      c = c / GaussScalar(alpha_fact * beta_fact);
      parts.push_back((left * right).times_hbar(order, c));
    });
  });
  return PhaseExpr::sum(n, parts);
}

PhaseExpr poisson(const PhaseExpr& f, const PhaseExpr& g) {
  if (f.dim() != g.dim()) throw DimensionError("Poisson bracket of different dimensions");
  const int n = f.dim();
  std::vector<PhaseExpr> parts;
  for (int i = 0; i < n; ++i) {
    PhaseExpr fp = f.differentiate(Var::p(i));
    PhaseExpr gp = g.differentiate(Var::p(i));
    if (!gp.is_zero()) parts.push_back(f.differentiate(Var::x(i)) * gp);
    if (!fp.is_zero()) parts.push_back(-(fp * g.differentiate(Var::x(i))));
  }
  return PhaseExpr::sum(n, parts);
}

PhaseExpr star_commutator(const PhaseExpr& f, const PhaseExpr& g) { return star(f, g) - star(g, f); }

PhaseExpr moyal(const PhaseExpr& f, const PhaseExpr& g) { return star_commutator(f, g).divide_exact_hbar(1); }

PhaseExpr nambu_jacobian(std::span<const PhaseExpr> entries) {
  if (entries.empty() || entries.size() % 2 != 0) throw ArityError("Nambu bracket needs 2N entries");
  const int n = entries[0].dim();
  const int size = 2 * n;
  if (static_cast<int>(entries.size()) != size) {
    throw ArityError("Nambu bracket in dimension " + std::to_string(n) + " needs " + std::to_string(size) +
                     " entries, got " + std::to_string(entries.size()));
  }
  // Column c is x_{c/2} for even c and p_{c/2} for odd c.
  std::vector<std::vector<PhaseExpr>> m(static_cast<std::size_t>(size));
  for (int r = 0; r < size; ++r) {
    if (entries[static_cast<std::size_t>(r)].dim() != n) throw DimensionError("Nambu bracket entries differ in dimension");
    for (int c = 0; c < size; ++c) {
      Var v = c % 2 == 0 ? Var::x(c / 2) : Var::p(c / 2);
      m[static_cast<std::size_t>(r)].push_back(entries[static_cast<std::size_t>(r)].differentiate(v));
    }
  }
  // Expansion along rows: det[mask] covers rows 0..popcount(mask)-1 and the
  // columns in mask.
  std::vector<PhaseExpr> det(std::size_t{1} << size, PhaseExpr(n));
  std::vector<bool> ready(det.size(), false);
  det[0] = PhaseExpr::constant(n, GaussScalar(1));
  ready[0] = true;
  for (std::size_t mask = 1; mask < det.size(); ++mask) {
    int row = __builtin_popcountll(mask) - 1;
    std::vector<PhaseExpr> parts;
    int above = 0;
    for (int c = size - 1; c >= 0; --c) {
      if (!(mask & (std::size_t{1} << c))) continue;
      const PhaseExpr& entry = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
      const PhaseExpr& minor = det[mask & ~(std::size_t{1} << c)];
      if (!entry.is_zero() && !minor.is_zero()) {
        PhaseExpr term = entry * minor;
        parts.push_back(above % 2 == 0 ? term : -term);
      }
      ++above;
    }
    det[mask] = PhaseExpr::sum(n, parts);
  }
  return det.back();
}

PhaseExpr symplectic_trace(std::span<const PhaseExpr> entries, int n) {
  if (entries.empty() || entries.size() % 2 != 0) throw ArityError("symplectic trace needs an even, nonzero number of entries");
  const int k = static_cast<int>(entries.size()) / 2;
  if (k > n) throw ArityError("symplectic trace has more entries than phase-space slots");
  for (const auto& e : entries) {
    if (e.dim() != n) throw DimensionError("symplectic trace entries differ in dimension");
  }
  const int missing = n - k;
  std::vector<PhaseExpr> parts;
  for (std::size_t subset = 0; subset < (std::size_t{1} << n); ++subset) {
    if (__builtin_popcountll(subset) != missing) continue;
    std::vector<PhaseExpr> full(entries.begin(), entries.end());
    for (int i = 0; i < n; ++i) {
      if (!(subset & (std::size_t{1} << i))) continue;
      full.push_back(PhaseExpr::x(n, i));
      full.push_back(PhaseExpr::p(n, i));
    }
    parts.push_back(nambu_jacobian(full));
  }
  return PhaseExpr::sum(n, parts);
}

}  // namespace nambu
