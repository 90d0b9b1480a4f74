#include <gtest/gtest.h>

#include <vector>

#include "nambu/algebra.hpp"
#include "nambu/operators.hpp"
#include "nambu/random.hpp"

namespace nambu {
namespace {

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ExactMatrix unit(int dim, int r, int c) {
  ExactMatrix e(dim);
  e.add(r, c, 0, GaussScalar(1));
  return e;
}

TEST(ExactMatrix, RingLaws) {
  auto rng = seeded_rng(1, "ring");
  for (int t = 0; t < 10; ++t) {
    ExactMatrix a = random_matrix(3, rng).times_hbar(t % 2);
    ExactMatrix b = random_matrix(3, rng);
    ExactMatrix c = random_matrix(3, rng).times_hbar(1);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * ExactMatrix::identity(3), a);
    EXPECT_EQ(commutator(a, b * c), commutator(a, b) * c + b * commutator(a, c));
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(ExactMatrix, HbarLayers) {
  std::vector<long long> v{1, 2, 3, 4};
  ExactMatrix m = ExactMatrix::from_integers(2, v, 2);
  EXPECT_EQ(m.hbar_degree(), 2);
  EXPECT_EQ(m.coefficient(1, 0, 2), GaussScalar(3));
  EXPECT_TRUE(m.coefficient(1, 0, 0).is_zero());
  EXPECT_EQ(m.to_string(), "[hbar^2, 2*hbar^2; 3*hbar^2, 4*hbar^2]");
}

TEST(FockBasis, SectorSizesAndOrder) {
  for (int n = 1; n <= 4; ++n) {
    for (int m = 0; m <= 4; ++m) EXPECT_EQ(FockBasis::sector(n, m).size(), binomial(m + n - 1, n - 1));
  }
  FockBasis b = FockBasis::sector(2, 1);
  EXPECT_EQ(b.states(), (std::vector<std::vector<int>>{{1, 0}, {0, 1}}));
  EXPECT_EQ(b.index({0, 1}), 1);
  EXPECT_EQ(b.index({2, 0}), -1);
  FockBasis all = FockBasis::up_to(2, 2);
  EXPECT_EQ(all.size(), 6);
  EXPECT_EQ(all.states().front(), (std::vector<int>{2, 0}));
}

TEST(NumberMatrix, SingleQuantumExamples) {
  ExactMatrix n12 = number_matrix(2, 1, 1, 2);
  // (0,1) -> hbar (1,0): column of state 1, row of state 0.
  EXPECT_EQ(n12.coefficient(0, 1, 1), GaussScalar(1));
  EXPECT_TRUE(n12.coefficient(1, 0, 1).is_zero());
  std::vector<long long> diag{1, 0, 0, 0};
  EXPECT_EQ(number_matrix(2, 1, 1, 1), ExactMatrix::from_integers(2, diag, 1));
  EXPECT_THROW(number_matrix(2, 1, 3, 1), Error);
}

TEST(NumberMatrix, UnClosureAndTotalNumber) {
  for (int n = 1; n <= 3; ++n) {
    for (int m = 0; m <= 3; ++m) {
      FockBasis basis = FockBasis::sector(n, m);
      std::vector<std::vector<ExactMatrix>> N(n + 1, std::vector<ExactMatrix>(n + 1));
      ExactMatrix total(basis.size());
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) N[i][j] = number_matrix(basis, i, j);
        total += N[i][i];
      }
      EXPECT_EQ(total, ExactMatrix::identity(basis.size()).scaled(GaussScalar(m)).times_hbar(1));
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          for (int k = 1; k <= n; ++k) {
            for (int l = 1; l <= n; ++l) {
              ExactMatrix rhs(basis.size());
              if (j == k) rhs += N[i][l];
              if (i == l) rhs = rhs - N[k][j];
              EXPECT_EQ(commutator(N[i][j], N[k][l]), rhs.times_hbar(1))
                  << "n=" << n << " M=" << m << " ijkl=" << i << j << k << l;
            }
          }
        }
      }
    }
  }
}

TEST(Oscillator, TheoremOnSectors) {
  auto rng = seeded_rng(2, "osc");
  struct Case {
    int n, m;
    std::vector<int> path;
  };
  std::vector<Case> cases{{2, 1, {1, 2}}, {2, 2, {2, 1}}, {3, 2, {1, 2, 3}}, {3, 2, {2, 3, 1}}, {3, 1, {3, 1, 2}}};
  for (const auto& c : cases) {
    FockBasis basis = FockBasis::sector(c.n, c.m);
    ExactMatrix f = random_matrix(basis.size(), rng);
    OscillatorCheck r = oscillator_theorem_check(basis, f, c.path);
    EXPECT_TRUE(r.holds) << "n=" << c.n << " M=" << c.m;
    EXPECT_EQ(r.bracket, r.jordan_form);
    EXPECT_EQ(r.bracket, r.commutator_form);
  }
  FockBasis basis = FockBasis::sector(2, 1);
  EXPECT_THROW(oscillator_theorem_check(basis, random_matrix(3, rng), {1, 2}), Error);
  EXPECT_THROW(oscillator_theorem_check(basis, random_matrix(2, rng), {1, 1}), Error);
}

TEST(Su2, VermaRelationsAndCasimir) {
  for (int two_j = 0; two_j <= 4; ++two_j) {
    Su2Rep rep = su2_verma(two_j);
    EXPECT_EQ(commutator(rep.lplus, rep.lminus), rep.lz.scaled(GaussScalar(2)).times_hbar(1));
    EXPECT_EQ(commutator(rep.lz, rep.lplus), rep.lplus.times_hbar(1));
    EXPECT_EQ(commutator(rep.lz, rep.lminus), -rep.lminus.times_hbar(1));
    // j(j+1) with j = two_j/2
    Rational jj(two_j * (two_j + 2), 4);
    EXPECT_EQ(rep.casimir(), ExactMatrix::identity(two_j + 1).scaled(GaussScalar(jj)).times_hbar(2)) << "2j=" << two_j;
  }
  EXPECT_EQ(su2_verma(1).casimir(), ExactMatrix::identity(2).scaled(GaussScalar(Rational(3, 4))).times_hbar(2));
  EXPECT_EQ(su2_verma(2).casimir(), ExactMatrix::identity(3).scaled(GaussScalar(2)).times_hbar(2));
  Su2Rep sum = su2_direct_sum(su2_verma(0), su2_verma(1));
  EXPECT_EQ(sum.lz.dim(), 3);
  EXPECT_EQ(commutator(sum.lplus, sum.lminus), sum.lz.scaled(GaussScalar(2)).times_hbar(1));
}

TEST(Tensor, Examples) {
  auto rng = seeded_rng(3, "tensor");
  ExactMatrix a = random_matrix(2, rng);
  ExactMatrix b = random_matrix(3, rng);
  ExactMatrix ia = ExactMatrix::identity(2), ib = ExactMatrix::identity(3);
  EXPECT_EQ(tensor(ia, b) * tensor(a, ib), tensor(a, b));
  EXPECT_TRUE(commutator(tensor(a, ib), tensor(ia, b)).is_zero());
  EXPECT_EQ(direct_sum(a, b).dim(), 5);
}

TEST(Tensor, JordanEigenvalueOnElementaryUnits) {
  Su2Rep rep = su2_verma(1);
  ExactMatrix id = ExactMatrix::identity(2);
  ExactMatrix lz = tensor(rep.lz, id);
  ExactMatrix rz = tensor(id, rep.lz);
  MatrixAlgebra alg{4};
  // Lz, Rz are diagonal; entry (u, u) is hbar times the weight.
  for (int u = 0; u < 4; ++u) {
    for (int w = 0; w < 4; ++w) {
      ExactMatrix f = unit(4, u, w);
      GaussScalar l1 = lz.coefficient(u, u, 1), l2 = lz.coefficient(w, w, 1);
      GaussScalar r1 = rz.coefficient(u, u, 1), r2 = rz.coefficient(w, w, 1);
      GaussScalar sigma = GaussScalar(2) * l1 * r1 + l1 * r2 + r1 * l2 + GaussScalar(2) * l2 * r2;
      std::vector<ExactMatrix> e{f, lz, rz};
      EXPECT_EQ(jordan<MatrixAlgebra>(e, alg).value, f.scaled(sigma).times_hbar(2));
    }
  }
}

}  // namespace
}  // namespace nambu
