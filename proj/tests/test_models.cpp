#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "nambu/brackets.hpp"
#include "nambu/error.hpp"
#include "nambu/models.hpp"
#include "nambu/random.hpp"

namespace nambu {
namespace {

PhaseExpr C(int n, long long a, long long b = 1) { return PhaseExpr::constant(n, GaussScalar(Rational(a, b))); }

PhaseExpr q2(int n) {
  PhaseExpr r(n);
  for (int a = 0; a < n; ++a) r += PhaseExpr::x(n, a) * PhaseExpr::x(n, a);
  return r;
}

PhaseExpr hbar2_over(int n, long long den) {
  return PhaseExpr::hbar(n).pow(2).scaled(GaussScalar(Rational(1, den)));
}

// hbar^2/8 (1/(1-q^2) - c)
PhaseExpr pole_correction(int n, long long c) { return hbar2_over(n, 8) * ((C(n, 1) - q2(n)).inverse() - C(n, c)); }

TEST(Sphere, ChargesOnTheDisk) {
  Model m = build_sphere(2);
  PhaseExpr x = PhaseExpr::x(2, 0), y = PhaseExpr::x(2, 1);
  PhaseExpr px = PhaseExpr::p(2, 0), py = PhaseExpr::p(2, 1);
  EXPECT_EQ(m.charge("Lz"), x * py - y * px);
  EXPECT_THROW(m.charge("nope"), UnknownName);
  EXPECT_THROW(build_sphere(1), DomainError);
  EXPECT_THROW(build_model("torus:2"), UsageError);
}

TEST(Sphere, QuantumCorrection) {
  for (int n : {2, 3, 4}) {
    Model m = build_sphere(n);
    EXPECT_EQ(m.h_quantum - m.h_classical, pole_correction(n, 1 + n * (n - 1))) << "N=" << n;
  }
}

TEST(Sphere, SignFlipNegatesMomentumCharges) {
  Model plus = build_sphere(3, 1);
  Model minus = build_sphere(3, -1);
  EXPECT_EQ(plus.charge("P[2]"), -minus.charge("P[2]"));
  EXPECT_EQ(plus.charge("L[1,2]"), minus.charge("L[1,2]"));
  EXPECT_EQ(plus.h_quantum, minus.h_quantum);
}

TEST(Sphere, CasimirLadderRewrite) {
  Model m = build_sphere(2);
  const auto& lx = m.charge("Lx");
  const auto& ly = m.charge("Ly");
  const auto& lz = m.charge("Lz");
  const auto& lp = m.charge("Lp");
  const auto& lm = m.charge("Lm");
  PhaseExpr h = PhaseExpr::hbar(2);
  EXPECT_EQ(star(lx, lx) + star(ly, ly) + star(lz, lz), star(lp, lm) + star(lz, lz) - h * lz);
  EXPECT_EQ(star(lz, lp) - star(lp, lz), h * lp);
}

TEST(Sphere, EquationsOfMotion) {
  Model m = build_sphere(2);
  PhaseExpr x = PhaseExpr::x(2, 0), px = PhaseExpr::p(2, 0);
  EXPECT_EQ(moyal(x, m.h_quantum), poisson(x, m.h_classical));
  EXPECT_NE(moyal(px, m.h_quantum), poisson(px, m.h_classical));
  EXPECT_FALSE(moyal(m.h_classical, m.charge("Lx")).is_zero());
}

TEST(Sphere, ClosureOfMomentaAndRotations) {
  for (int n : {2, 3, 4}) {
    Model m = build_sphere(n);
    for (int a = 1; a <= n; ++a) {
      for (int b = 1; b <= n; ++b) {
        const auto& pa = m.charge(charge_key("P", {a}));
        const auto& pb = m.charge(charge_key("P", {b}));
        // {P_a, P_b} = L_ab
        PhaseExpr expected = a == b ? PhaseExpr(n) : m.charge(charge_key("L", {a, b}));
        EXPECT_EQ(poisson(pa, pb), expected) << "N=" << n << " a=" << a << " b=" << b;
        EXPECT_EQ(moyal(pa, pb), poisson(pa, pb));
      }
    }
  }
}

TEST(Geometry, MetricIdentitiesForBothVielbeinSigns) {
  for (int n : {2, 3, 4}) {
    for (int sign : {-1, 1}) {
      Geometry g = sphere_geometry(n, sign);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          PhaseExpr xa = PhaseExpr::x(n, a), xb = PhaseExpr::x(n, b);
          PhaseExpr delta = C(n, a == b ? 1 : 0);
          EXPECT_EQ(g.g_down[a][b], delta + xa * xb * (C(n, 1) - q2(n)).inverse());
          EXPECT_EQ(g.g_up[a][b], delta - xa * xb);
          PhaseExpr contracted(n);
          for (int c = 0; c < n; ++c) {
            for (int d = 0; d < n; ++d) contracted += g.g_up[c][d] * g.v_down[c][a] * g.v_down[d][b];
          }
          EXPECT_EQ(contracted, delta) << "N=" << n << " sign=" << sign;
        }
      }
    }
  }
}

TEST(Geometry, OtherHamiltonian) {
  for (int n : {2, 3}) {
    Model m = build_sphere(n);
    PhaseExpr ho = h_other(m);
    const PhaseExpr& w = *m.geometry->w;
    // hbar^2/8 (N-1)(1 - 2w - N)
    PhaseExpr expected = hbar2_over(n, 8).scaled(GaussScalar(n - 1)) * (C(n, 1 - n) - w.scaled(GaussScalar(2)));
    EXPECT_EQ(m.h_quantum - ho, expected) << "N=" << n;
    EXPECT_EQ(ho.substitute_hbar_zero(), m.h_classical);
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) EXPECT_TRUE(moyal(ho, m.charge(charge_key("L", {a, b}))).is_zero());
    }
  }
  EXPECT_THROW(h_other(build_chiral_s3()), DomainError);
}

TEST(Geometry, CurrentAlgebra) {
  for (int n : {2, 3}) {
    Model m = build_sphere(n);
    const Geometry& g = *m.geometry;
    for (int j = 1; j <= n; ++j) {
      EXPECT_TRUE(current_algebra_omega(m, j, j).is_zero());
      for (int k = 1; k <= n; ++k) {
        PhaseExpr vj = vielbein_current(g, n, j - 1);
        PhaseExpr vk = vielbein_current(g, n, k - 1);
        EXPECT_EQ(moyal(vj, vk), current_algebra_omega(m, j, k)) << "N=" << n << " j=" << j << " k=" << k;
        EXPECT_EQ(poisson(vj, vk), current_algebra_omega(m, j, k));
      }
    }
  }
}

TEST(Geometry, SimilarityIdentities) {
  for (int n : {2, 3}) {
    Model m = build_sphere(n);
    auto ids = similarity_identities(m);
    ASSERT_EQ(ids.size(), static_cast<std::size_t>(2 * n + 1));
    for (const auto& id : ids) EXPECT_EQ(id.lhs, id.rhs) << id.label << " N=" << n;
    // Classical limit of the first conjugation is the bare current.
    EXPECT_EQ(ids[0].lhs.substitute_hbar_zero(), vielbein_current(*m.geometry, n, 0));
    // (i) - (ii) = -i hbar (N-1) V^{aj} d_a w / w
    const Geometry& g = *m.geometry;
    const PhaseExpr& w = *g.w;
    PhaseExpr dlog(n);
    for (int a = 0; a < n; ++a) dlog += g.v_up[a][0] * w.differentiate(Var::x(a));
    PhaseExpr expected = (PhaseExpr::imag(n) * PhaseExpr::hbar(n)).scaled(GaussScalar(1 - n)) * dlog * w.inverse();
    EXPECT_EQ(ids[0].lhs - ids[1].lhs, expected);
  }
}

TEST(Chiral, AxialAndIsospinCharges) {
  Model m = build_chiral_s3();
  const int n = 3;
  PhaseExpr s = PhaseExpr::radical_s(n);
  for (int i = 1; i <= 3; ++i) {
    int j = i % 3 + 1, k = j % 3 + 1;
    PhaseExpr cross = PhaseExpr::x(n, j - 1) * PhaseExpr::p(n, k - 1) - PhaseExpr::x(n, k - 1) * PhaseExpr::p(n, j - 1);
    const auto& r = m.charge(charge_key("R", {i}));
    const auto& l = m.charge(charge_key("Lch", {i}));
    EXPECT_EQ((r - l).scaled(GaussScalar(Rational(1, 2))), s * PhaseExpr::p(n, i - 1));
    EXPECT_EQ((r + l).scaled(GaussScalar(Rational(1, 2))), cross);
    EXPECT_EQ(m.charge(charge_key("A", {i})), s * PhaseExpr::p(n, i - 1));
    EXPECT_EQ(m.charge(charge_key("I", {i})), cross);
    for (int b = 1; b <= 3; ++b) EXPECT_TRUE(poisson(l, m.charge(charge_key("R", {b}))).is_zero());
  }
}

TEST(Chiral, QuantumCorrectionAndChristoffelForm) {
  Model m = build_chiral_s3();
  EXPECT_EQ(m.h_quantum - m.h_classical, pole_correction(3, 7));
  for (int sign : {1, -1}) {
    ChristoffelCorrection cc = christoffel_correction(m, sign);
    EXPECT_EQ(cc.correction, pole_correction(3, 7));
    EXPECT_EQ(cc.structure.c_adjoint, GaussScalar(2));
    for (int a = 0; a < 3; ++a) {
      for (int d = 0; d < 3; ++d) {
        GaussScalar sum;
        for (int b = 0; b < 3; ++b) {
          for (int c = 0; c < 3; ++c) sum += cc.structure(a, b, c) * cc.structure(b, c, d);
        }
        EXPECT_EQ(sum, a == d ? cc.structure.c_adjoint : GaussScalar());
      }
    }
  }
  EXPECT_THROW(christoffel_correction(build_sphere(3)), DomainError);
}

TEST(Chiral, ChristoffelVanishesAtTheOrigin) {
  Geometry g = chiral_geometry(1);
  auto gamma = christoffel(g.g_down, g.g_up);
  EvalPoint origin{{Rational(0), Rational(0), Rational(0)}, {Rational(1), Rational(2), Rational(3)}, Rational(1)};
  for (const auto& slice : gamma) {
    for (const auto& row : slice) {
      for (const auto& entry : row) EXPECT_TRUE(entry.evaluate(origin, Rational(1)).is_zero());
    }
  }
}

TEST(Chiral, FabVariants) {
  Model m = build_chiral_s3();
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      PhaseExpr cart = fab(m, a, b, FabVariant::Cartesian);
      EXPECT_EQ(cart, star(m.charge(charge_key("R", {a})), m.charge(charge_key("Lch", {b}))));
      EXPECT_TRUE(moyal(m.charge("IL"), fab(m, a, b, FabVariant::Chiral)).is_zero());
    }
  }
  const auto& i1 = m.charge("I[1]");
  const auto& a1 = m.charge("A[1]");
  EXPECT_EQ(fab(m, 1, 1, FabVariant::Cartesian).substitute_hbar_zero(), (i1 + a1) * (i1 - a1));
  EXPECT_THROW(fab(m, 0, 1, FabVariant::Chiral), Error);
}

TEST(Gnomonic, PolynomialModelAndCorrection) {
  Model m = build_gnomonic_s3();
  const int n = 3;
  PhaseExpr correction = PhaseExpr::hbar(n).pow(2).scaled(GaussScalar(Rational(3, 4))) * (q2(n) - C(n, 1));
  EXPECT_EQ(m.h_quantum - m.h_classical, correction);
  EvalPoint origin{{Rational(0), Rational(0), Rational(0)}, {Rational(1), Rational(0), Rational(0)}, Rational(1)};
  EXPECT_EQ(correction.evaluate(origin, Rational(1)), GaussScalar(Rational(-3, 4)));
  for (const auto& [key, value] : m.charges) {
    EXPECT_TRUE(value.fraction().b().is_zero()) << key;
    EXPECT_FALSE(value.fraction().radical_enabled()) << key;
  }
}

TEST(Conservation, EveryChargeOfEveryModel) {
  for (const std::string name : {"sphere:2", "sphere:2:-", "sphere:3", "sphere:4", "chiral-s3", "gnomonic-s3"}) {
    Model m = build_model(name);
    ASSERT_FALSE(m.conserved.empty()) << name;
    for (const auto& key : m.conserved) {
      EXPECT_TRUE(moyal(m.h_quantum, m.charge(key)).is_zero()) << name << " " << key;
    }
    EXPECT_NO_THROW((m.h_quantum - m.h_classical).divide_exact_hbar(2)) << name;
  }
}

}  // namespace
}  // namespace nambu
