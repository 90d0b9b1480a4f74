#include <gtest/gtest.h>

#include <vector>

#include "nambu/algebra.hpp"
#include "nambu/brackets.hpp"
#include "nambu/error.hpp"
#include "nambu/models.hpp"
#include "nambu/operators.hpp"
#include "nambu/random.hpp"

namespace nambu {
namespace {

PhaseExpr C(int n, long long a, long long b = 1) { return PhaseExpr::constant(n, GaussScalar(Rational(a, b))); }
PhaseExpr ih(int n) { return PhaseExpr::imag(n) * PhaseExpr::hbar(n); }

PhaseExpr q2(int n) {
  PhaseExpr r(n);
  for (int a = 0; a < n; ++a) r += PhaseExpr::x(n, a) * PhaseExpr::x(n, a);
  return r;
}

RandomExprOptions radical_options() {
  RandomExprOptions o;
  o.max_terms = 3;
  o.use_radical = true;
  return o;
}

TEST(Star, Examples) {
  const int n = 1;
  PhaseExpr x = PhaseExpr::x(n, 0);
  PhaseExpr p = PhaseExpr::p(n, 0);
  EXPECT_EQ(star(x, p), x * p + ih(n).scaled(GaussScalar(Rational(1, 2))));
  auto rng = seeded_rng(1, "unit");
  PhaseExpr f = random_expr(n, rng, radical_options());
  EXPECT_EQ(star(C(n, 1), f), f);
  EXPECT_EQ(star(f, C(n, 1)), f);
  EXPECT_THROW(star(x, PhaseExpr::x(2, 0)), DimensionError);
}

TEST(Star, SphereCasimirCorrection) {
  Model m = build_sphere(2);
  const auto& lx = m.charge("Lx");
  const auto& ly = m.charge("Ly");
  const auto& lz = m.charge("Lz");
  PhaseExpr half_casimir = (star(lx, lx) + star(ly, ly) + star(lz, lz)).scaled(GaussScalar(Rational(1, 2)));
  PhaseExpr expected =
      PhaseExpr::hbar(2).pow(2).scaled(GaussScalar(Rational(1, 8))) * ((C(2, 1) - q2(2)).inverse() - C(2, 3));
  EXPECT_EQ(half_casimir - m.h_classical, expected);
}

TEST(Star, AssociativityWithRadicals) {
  auto rng = seeded_rng(2, "assoc");
  RandomExprOptions o = radical_options();
  o.max_terms = 2;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 3;
    PhaseExpr f = random_expr(n, rng, o);
    PhaseExpr g = random_expr(n, rng, o);
    PhaseExpr h = random_expr(n, rng, o);
    ASSERT_EQ(star(star(f, g), h), star(f, star(g, h))) << "n=" << n;
  }
}

TEST(Star, ClassicalLimit) {
  auto rng = seeded_rng(3, "limit");
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + t % 3;
    PhaseExpr f = random_expr(n, rng, radical_options());
    PhaseExpr g = random_expr(n, rng, radical_options());
    EXPECT_EQ(star(f, g).substitute_hbar_zero(), f * g);
    EXPECT_EQ(moyal(f, g).substitute_hbar_zero(), poisson(f, g));
  }
}

TEST(Poisson, Examples) {
  Model m = build_sphere(2);
  EXPECT_EQ(poisson(PhaseExpr::x(2, 0), PhaseExpr::p(2, 0)), C(2, 1));
  EXPECT_EQ(poisson(m.charge("Lx"), m.charge("Ly")), m.charge("Lz"));
  EXPECT_TRUE(poisson(m.h_classical, m.charge("Lz")).is_zero());
}

TEST(Moyal, Examples) {
  Model m = build_sphere(2);
  EXPECT_EQ(moyal(PhaseExpr::x(2, 0), PhaseExpr::p(2, 0)), C(2, 1));
  EXPECT_EQ(moyal(m.charge("Lx"), m.charge("Ly")), m.charge("Lz"));
}

TEST(Moyal, OtherHamiltonianBreaksMomentumConservation) {
  for (int n : {2, 3}) {
    Model m = build_sphere(n);
    PhaseExpr ho = h_other(m);
    const PhaseExpr& w = *m.geometry->w;
    for (int c = 1; c <= n; ++c) {
      PhaseExpr expected = PhaseExpr::hbar(n).pow(2) * PhaseExpr::x(n, c - 1) * (w.scaled(GaussScalar(2)) - C(n, 1)) *
                           q2(n).inverse().scaled(GaussScalar(Rational(n - 1, 4)));
      EXPECT_EQ(moyal(ho, m.charge(charge_key("P", {c}))), expected) << "N=" << n << " c=" << c;
    }
  }
}

TEST(Moyal, DerivationOverStar) {
  auto rng = seeded_rng(4, "derivation");
  RandomExprOptions o = radical_options();
  o.max_terms = 2;
  for (int t = 0; t < 15; ++t) {
    const int n = 1 + t % 2;
    PhaseExpr f = random_expr(n, rng, o);
    PhaseExpr g = random_expr(n, rng, o);
    PhaseExpr h = random_expr(n, rng, o);
    EXPECT_EQ(moyal(f, star(g, h)), star(moyal(f, g), h) + star(g, moyal(f, h)));
  }
}

TEST(NambuJacobian, Examples) {
  const int n = 2;
  std::vector<PhaseExpr> canonical{PhaseExpr::x(n, 0), PhaseExpr::p(n, 0), PhaseExpr::x(n, 1), PhaseExpr::p(n, 1)};
  EXPECT_EQ(nambu_jacobian(canonical), C(n, 1));

  Model m = build_sphere(2);
  std::vector<PhaseExpr> dependent{m.h_classical, m.charge("Lx"), m.charge("Ly"), m.charge("Lz")};
  EXPECT_TRUE(nambu_jacobian(dependent).is_zero());

  auto rng = seeded_rng(5, "jac");
  for (int t = 0; t < 5; ++t) {
    PhaseExpr k = random_expr(n, rng, radical_options());
    std::vector<PhaseExpr> e{k, m.charge("Lx"), m.charge("Ly"), m.charge("Lz")};
    EXPECT_EQ(nambu_jacobian(e), poisson(k, m.h_classical));
  }
  std::vector<PhaseExpr> three{PhaseExpr::x(n, 0), PhaseExpr::p(n, 0), PhaseExpr::x(n, 1)};
  EXPECT_THROW(nambu_jacobian(three), ArityError);
}

TEST(NambuJacobian, SignFlipLeavesBracketUnchanged) {
  Model plus = build_sphere(2, 1);
  Model minus = build_sphere(2, -1);
  auto rng = seeded_rng(6, "flip");
  PhaseExpr k = random_expr(2, rng, radical_options());
  auto bracket = [&](const Model& m) {
    std::vector<PhaseExpr> e{k, m.charge("Lx"), m.charge("Ly"), m.charge("Lz")};
    return nambu_jacobian(e);
  };
  EXPECT_EQ(bracket(plus), bracket(minus));
}

TEST(NambuJacobian, AntisymmetryLeibnizAndFundamentalIdentity) {
  auto rng = seeded_rng(7, "nb-props");
  RandomExprOptions o;
  o.max_terms = 2;
  for (int n : {1, 2}) {
    for (int t = 0; t < 4; ++t) {
      std::vector<PhaseExpr> f, g;
      for (int i = 0; i < 2 * n; ++i) f.push_back(random_expr(n, rng, o));
      for (int i = 0; i < 2 * n - 1; ++i) g.push_back(random_expr(n, rng, o));

      std::vector<PhaseExpr> swapped = f;
      std::swap(swapped.front(), swapped.back());
      EXPECT_EQ(nambu_jacobian(swapped), -nambu_jacobian(f));
      std::vector<PhaseExpr> repeated = f;
      repeated.back() = repeated.front();
      EXPECT_TRUE(nambu_jacobian(repeated).is_zero());

      // k(L, M) = L M^2 - 2 L
      const PhaseExpr& l = f[0];
      PhaseExpr mm = random_expr(n, rng, o);
      auto with_head = [&](const PhaseExpr& head) {
        std::vector<PhaseExpr> e = f;
        e[0] = head;
        return nambu_jacobian(e);
      };
      PhaseExpr k = l * mm * mm - l.scaled(GaussScalar(2));
      EXPECT_EQ(with_head(k), (mm * mm - C(n, 2)) * with_head(l) + (l * mm).scaled(GaussScalar(2)) * with_head(mm));

      PhaseExpr v = random_expr(n, rng, o);
      auto g_with = [&](const PhaseExpr& last) {
        std::vector<PhaseExpr> e = g;
        e.push_back(last);
        return nambu_jacobian(e);
      };
      std::vector<PhaseExpr> lhs;
      for (int i = 0; i < 2 * n; ++i) {
        std::vector<PhaseExpr> e = f;
        e[static_cast<std::size_t>(i)] = v * g_with(f[static_cast<std::size_t>(i)]);
        lhs.push_back(nambu_jacobian(e));
      }
      EXPECT_EQ(PhaseExpr::sum(n, lhs), g_with(v * nambu_jacobian(f))) << "N=" << n;
    }
  }
}

TEST(SymplecticTrace, Examples) {
  const int n = 2;
  auto rng = seeded_rng(8, "trace");
  PhaseExpr l = random_expr(n, rng, radical_options());
  PhaseExpr m = random_expr(n, rng, radical_options());
  std::vector<PhaseExpr> pair{l, m};
  EXPECT_EQ(symplectic_trace(pair, n), poisson(l, m));
  std::vector<PhaseExpr> same{l, l};
  EXPECT_TRUE(symplectic_trace(same, n).is_zero());
  std::vector<PhaseExpr> odd{l, m, l};
  EXPECT_THROW(symplectic_trace(odd, n), ArityError);
}

TEST(SymplecticTrace, HamiltonEquations) {
  // (k, H) traced from 2N slots is dk/dt = {k, H}.
  Model model = build_sphere(3);
  auto rng = seeded_rng(9, "hamilton");
  PhaseExpr k = random_expr(3, rng, radical_options());
  std::vector<PhaseExpr> e{k, model.h_classical};
  EXPECT_EQ(symplectic_trace(e, 3), poisson(k, model.h_classical));
}

TEST(Qnb, PhaseSpaceExamples) {
  PhaseAlgebra one{1};
  std::vector<PhaseExpr> xp{PhaseExpr::x(1, 0), PhaseExpr::p(1, 0)};
  EXPECT_EQ(qnb<PhaseAlgebra>(xp, one).value, ih(1));

  const int n = 2;
  PhaseAlgebra two{n};
  std::vector<PhaseExpr> xpyp{PhaseExpr::x(n, 0), PhaseExpr::p(n, 0), PhaseExpr::x(n, 1), PhaseExpr::p(n, 1)};
  PhaseExpr minus_two_hbar2 = PhaseExpr::hbar(n).pow(2).scaled(GaussScalar(-2));
  EXPECT_EQ(qnb<PhaseAlgebra>(xpyp, two).value, minus_two_hbar2);
  EXPECT_EQ(qnb<PhaseAlgebra>(xpyp, two, Expansion::Naive).value, minus_two_hbar2);
  EXPECT_EQ(resolve_qnb4(xpyp[0], xpyp[1], xpyp[2], xpyp[3], two), minus_two_hbar2);
  EXPECT_TRUE(resolve_qnb4(xpyp[0], xpyp[0], xpyp[2], xpyp[3], two).is_zero());
}

TEST(Qnb, FourBracketWithAngularMomenta) {
  Model m = build_sphere(2);
  PhaseAlgebra alg{2};
  const auto& lx = m.charge("Lx");
  const auto& ly = m.charge("Ly");
  const auto& lz = m.charge("Lz");
  PhaseExpr casimir = star(lx, lx) + star(ly, ly) + star(lz, lz);
  auto rng = seeded_rng(10, "qnb4");
  RandomExprOptions o;
  o.max_terms = 2;
  for (int t = 0; t < 3; ++t) {
    PhaseExpr a = random_expr(2, rng, o);
    std::vector<PhaseExpr> e{a, lx, ly, lz};
    EXPECT_EQ(qnb<PhaseAlgebra>(e, alg).value, ih(2) * (star(a, casimir) - star(casimir, a)));
  }
}

TEST(Qnb, EmptyBracketIsAnError) {
  std::vector<ExactMatrix> none;
  MatrixAlgebra alg{2};
  EXPECT_THROW(qnb<MatrixAlgebra>(none, alg), ArityError);
  EXPECT_THROW(jordan<MatrixAlgebra>(none, alg), ArityError);
}

TEST(Jordan, Examples) {
  MatrixAlgebra alg{3};
  auto rng = seeded_rng(11, "jordan");
  ExactMatrix a = random_matrix(3, rng);
  std::vector<ExactMatrix> single{a};
  EXPECT_EQ(jordan<MatrixAlgebra>(single, alg).value, a);
  std::vector<ExactMatrix> ones{alg.one(), alg.one()};
  EXPECT_EQ(jordan<MatrixAlgebra>(ones, alg).value, alg.one().scaled(GaussScalar(2)));
}

TEST(Jordan, ChiralThreeProduct) {
  Model m = build_chiral_s3();
  PhaseAlgebra alg{3};
  const auto& lz = m.charge("Lch[3]");
  const auto& rz = m.charge("R[3]");
  auto rng = seeded_rng(12, "jordan3");
  RandomExprOptions o;
  o.max_terms = 2;
  PhaseExpr f = random_expr(3, rng, o);
  PhaseExpr anti = star(lz, rz) + star(rz, lz);
  PhaseExpr expected = star(anti, f) + star(star(lz, f), rz) + star(star(rz, f), lz) + star(f, anti);
  std::vector<PhaseExpr> e{f, lz, rz};
  EXPECT_EQ(jordan<PhaseAlgebra>(e, alg).value, expected);
}

TEST(SubsetDp, MatchesNaiveSumOnMatrices) {
  auto rng = seeded_rng(13, "dp");
  MatrixAlgebra alg{3};
  for (int k = 1; k <= 5; ++k) {
    for (int t = 0; t < 4; ++t) {
      std::vector<ExactMatrix> e;
      for (int i = 0; i < k; ++i) e.push_back(random_matrix(3, rng));
      auto dp = qnb<MatrixAlgebra>(e, alg);
      auto naive = qnb<MatrixAlgebra>(e, alg, Expansion::Naive);
      EXPECT_EQ(dp.value, naive.value) << "qnb k=" << k;
      EXPECT_EQ(jordan<MatrixAlgebra>(e, alg).value, jordan<MatrixAlgebra>(e, alg, Expansion::Naive).value)
          << "jordan k=" << k;
      EXPECT_EQ(dp.stats.nodes, (1u << k) - 1);
      if (k >= 3) {
        EXPECT_LT(dp.stats.products, naive.stats.products);
      }
      if (k == 4) {
        EXPECT_EQ(resolve_qnb4(e[0], e[1], e[2], e[3], alg), dp.value);
      }
    }
  }
}

TEST(SubsetDp, MatchesNaiveSumOnPhaseSpace) {
  auto rng = seeded_rng(14, "dp-phase");
  RandomExprOptions o;
  o.max_terms = 2;
  o.max_momentum_degree = 1;
  PhaseAlgebra alg{2};
  for (int k = 1; k <= 4; ++k) {
    std::vector<PhaseExpr> e;
    for (int i = 0; i < k; ++i) e.push_back(random_expr(2, rng, o));
    EXPECT_EQ(qnb<PhaseAlgebra>(e, alg).value, qnb<PhaseAlgebra>(e, alg, Expansion::Naive).value) << "k=" << k;
    EXPECT_EQ(jordan<PhaseAlgebra>(e, alg).value, jordan<PhaseAlgebra>(e, alg, Expansion::Naive).value) << "k=" << k;
  }
}

TEST(SubsetDp, SymmetryUnderTranspositions) {
  auto rng = seeded_rng(15, "sym");
  MatrixAlgebra alg{3};
  std::vector<ExactMatrix> e;
  for (int i = 0; i < 5; ++i) e.push_back(random_matrix(3, rng));
  ExactMatrix q = qnb<MatrixAlgebra>(e, alg).value;
  ExactMatrix j = jordan<MatrixAlgebra>(e, alg).value;
  for (std::size_t a = 0; a < e.size(); ++a) {
    for (std::size_t b = a + 1; b < e.size(); ++b) {
      std::vector<ExactMatrix> s = e;
      std::swap(s[a], s[b]);
      EXPECT_EQ(jordan<MatrixAlgebra>(s, alg).value, j);
      EXPECT_EQ(qnb<MatrixAlgebra>(s, alg).value, -q);
      s[a] = s[b];
      EXPECT_TRUE(qnb<MatrixAlgebra>(s, alg).value.is_zero());
    }
  }
}

}  // namespace
}  // namespace nambu
