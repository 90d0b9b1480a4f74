#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "nambu/brackets.hpp"
#include "nambu/error.hpp"

namespace nambu {

/// Phase-space functions under the star product.
struct PhaseAlgebra {
  using Element = PhaseExpr;
  int n;

  Element one() const { return PhaseExpr::constant(n, GaussScalar(1)); }
  Element zero() const { return PhaseExpr(n); }
  Element mul(const Element& a, const Element& b) const { return star(a, b); }
  Element sum(std::span<const Element> parts) const { return PhaseExpr::sum(n, parts); }
  bool equal(const Element& a, const Element& b) const { return a == b; }
};

struct ExpansionStats {
  std::uint64_t nodes = 0;      // subset brackets formed
  std::uint64_t products = 0;   // pairwise algebra products
  std::uint64_t memo_hits = 0;  // sub-brackets reused
};

template <class E>
struct BracketResult {
  E value;
  ExpansionStats stats;
};

namespace detail {

template <class Alg>
BracketResult<typename Alg::Element> subset_bracket(std::span<const typename Alg::Element> entries, const Alg& alg,
                                                    bool signed_sum) {
  using E = typename Alg::Element;
  const std::size_t k = entries.size();
  if (k == 0) throw ArityError("bracket needs at least one entry");
  if (k > 20) throw ArityError("bracket has too many entries");
  BracketResult<E> out;
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<std::optional<E>> memo(full + 1);
  memo[0] = alg.one();
  std::uint64_t lookups = 0;
  // [S] = sum_j (+-1) A_j * [S \ j], with the sign (-1)^(position of j in S).
  // Masks are visited in increasing order so every S \ j is ready.
  for (std::size_t mask = 1; mask <= full; ++mask) {
    std::vector<E> parts;
    int pos = 0;
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t bit = std::size_t{1} << j;
      if (!(mask & bit)) continue;
      std::size_t rest = mask & ~bit;
      const E& sub = *memo[rest];
      ++lookups;
      E term = rest == 0 ? entries[j] : alg.mul(entries[j], sub);
      if (rest != 0) ++out.stats.products;
      if (signed_sum && pos % 2 == 1) term = -term;
      parts.push_back(std::move(term));
      ++pos;
    }
    memo[mask] = alg.sum(parts);
    ++out.stats.nodes;
  }
  out.stats.memo_hits = lookups - full;  // every sub-bracket but the first use
  out.value = std::move(*memo[full]);
  return out;
}

template <class Alg>
BracketResult<typename Alg::Element> naive_bracket(std::span<const typename Alg::Element> entries, const Alg& alg,
                                                   bool signed_sum) {
  using E = typename Alg::Element;
  const std::size_t k = entries.size();
  if (k == 0) throw ArityError("bracket needs at least one entry");
  BracketResult<E> out;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<E> parts;
  do {
    E prod = entries[perm[0]];
    for (std::size_t i = 1; i < k; ++i) {
      prod = alg.mul(prod, entries[perm[i]]);
      ++out.stats.products;
    }
    int inversions = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    if (signed_sum && inversions % 2 == 1) prod = -prod;
    parts.push_back(std::move(prod));
    ++out.stats.nodes;
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.value = alg.sum(parts);
  return out;
}

}  // namespace detail

enum class Expansion { SubsetDP, Naive };

/// Quantum Nambu bracket: the fully antisymmetrized sum of products.
template <class Alg>
BracketResult<typename Alg::Element> qnb(std::span<const typename Alg::Element> entries, const Alg& alg,
                                         Expansion mode = Expansion::SubsetDP) {
  return mode == Expansion::Naive ? detail::naive_bracket(entries, alg, true) : detail::subset_bracket(entries, alg, true);
}

/// Generalized Jordan product: the fully symmetrized sum of products.
template <class Alg>
BracketResult<typename Alg::Element> jordan(std::span<const typename Alg::Element> entries, const Alg& alg,
                                            Expansion mode = Expansion::SubsetDP) {
  return mode == Expansion::Naive ? detail::naive_bracket(entries, alg, false)
                                  : detail::subset_bracket(entries, alg, false);
}

template <class Alg>
typename Alg::Element commutator(const typename Alg::Element& a, const typename Alg::Element& b, const Alg& alg) {
  return alg.mul(a, b) - alg.mul(b, a);
}

/// Four-bracket written through six products of commutators.
template <class Alg>
typename Alg::Element resolve_qnb4(const typename Alg::Element& a, const typename Alg::Element& b,
                                   const typename Alg::Element& c, const typename Alg::Element& d, const Alg& alg) {
  using E = typename Alg::Element;
  auto com = [&](const E& x, const E& y) { return commutator(x, y, alg); };
  E ab = com(a, b);
  E cd = com(c, d);
  E ac = com(a, c);
  E bd = com(b, d);
  E ad = com(a, d);
  E cb = com(c, b);
  std::vector<E> parts{alg.mul(ab, cd), -alg.mul(ac, bd), -alg.mul(ad, cb),
                       alg.mul(cd, ab), -alg.mul(bd, ac), -alg.mul(cb, ad)};
  return alg.sum(parts);
}

}  // namespace nambu
