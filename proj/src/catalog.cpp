#include "nambu/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nambu/algebra.hpp"
#include "nambu/brackets.hpp"
#include "nambu/error.hpp"
#include "nambu/models.hpp"
#include "nambu/operators.hpp"
#include "nambu/random.hpp"

namespace nambu {
namespace {

// ---------------------------------------------------------------------------
// helpers

GaussScalar real(long long a, long long b = 1) { return GaussScalar(Rational(a, b)); }
GaussScalar imag(long long a, long long b = 1) { return GaussScalar(Rational(0), Rational(a, b)); }

PhaseExpr constant(int n, const GaussScalar& c) { return PhaseExpr::constant(n, c); }

PhaseExpr q_squared(int n) {
  std::vector<PhaseExpr> parts;
  for (int a = 0; a < n; ++a) parts.push_back(PhaseExpr::x(n, a) * PhaseExpr::x(n, a));
  return PhaseExpr::sum(n, parts);
}

// 1-based Levi-Civita symbol.
int eps(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

PhaseExpr com(const PhaseExpr& a, const PhaseExpr& b) { return star_commutator(a, b); }
PhaseExpr anti(const PhaseExpr& a, const PhaseExpr& b) { return star(a, b) + star(b, a); }

std::string clip(std::string s) {
  constexpr std::size_t kMax = 600;
  if (s.size() > kMax) s = s.substr(0, kMax) + " ...";
  return s;
}

// Collects sub-checks; the first failure becomes the witness.
class Verdict {
 public:
  void equal(const PhaseExpr& lhs, const PhaseExpr& rhs, const std::string& what) {
    ++checks_;
    if (!failure_.empty()) return;
    PhaseExpr diff = lhs - rhs;
    if (!diff.is_zero()) failure_ = what + ": LHS - RHS = " + clip(diff.to_string());
  }
  void equal(const ExactMatrix& lhs, const ExactMatrix& rhs, const std::string& what) {
    ++checks_;
    if (!failure_.empty()) return;
    ExactMatrix diff = lhs - rhs;
    if (!diff.is_zero()) failure_ = what + ": LHS - RHS = " + clip(diff.to_string());
  }
  void require(bool ok, const std::string& what, const std::string& witness = "") {
    ++checks_;
    if (!failure_.empty() || ok) return;
    failure_ = what + (witness.empty() ? "" : ": " + clip(witness));
  }
  CheckOutcome done(const std::string& summary) const {
    if (!failure_.empty()) return {Status::Fail, failure_};
    return {Status::Pass, summary + " [" + std::to_string(checks_) + " checks]"};
  }

 private:
  int checks_ = 0;
  std::string failure_;
};

std::vector<int> dims(const CheckContext& ctx, std::vector<int> defaults) {
  if (ctx.n > 0) return {ctx.n};
  return defaults;
}

std::string dims_text(const std::vector<int>& ds) {
  std::string s;
  for (int d : ds) s += (s.empty() ? "" : ",") + std::to_string(d);
  return "N=" + s;
}

PhaseExpr inv_one_minus_q2(int n) { return (constant(n, real(1)) - q_squared(n)).inverse(); }

const PhaseAlgebra& phase(int n) {
  static const PhaseAlgebra algs[8] = {{0}, {1}, {2}, {3}, {4}, {5}, {6}, {7}};
  return algs[n];
}

PhaseExpr qnb_phase(std::vector<PhaseExpr> entries) {
  const int n = entries.front().dim();
  return qnb<PhaseAlgebra>(entries, phase(n)).value;
}

PhaseExpr jordan_phase(std::vector<PhaseExpr> entries) {
  const int n = entries.front().dim();
  return jordan<PhaseAlgebra>(entries, phase(n)).value;
}

RandomExprOptions wigner_options() {
  RandomExprOptions o;
  o.max_terms = 3;
  o.use_radical = true;
  return o;
}

// ---------------------------------------------------------------------------
// S^2

CheckOutcome s2_01(const CheckContext& ctx) {
  Verdict v;
  for (int sign : {1, -1}) {
    Model m = build_sphere(2, sign);
    PhaseExpr lx = m.charge("Lx");
    if (ctx.perturb) lx = -lx;
    const PhaseExpr& ly = m.charge("Ly");
    const PhaseExpr& lz = m.charge("Lz");
    const std::string tag = sign > 0 ? " (+)" : " (-)";
    v.equal(poisson(lx, ly), lz, "{Lx,Ly} = Lz" + tag);
    v.equal(poisson(ly, lz), lx, "{Ly,Lz} = Lx" + tag);
    v.equal(poisson(lz, lx), ly, "{Lz,Lx} = Ly" + tag);
    for (const PhaseExpr* l : std::initializer_list<const PhaseExpr*>{&lx, &ly, &lz}) v.require(poisson(m.h_classical, *l).is_zero(), "{H,L} = 0" + tag);
  }
  return v.done("so(3) Poisson closure and {H,L}=0 on both hemispheres");
}

CheckOutcome s2_02(const CheckContext&) {
  Verdict v;
  for (int sign : {1, -1}) {
    Model m = build_sphere(2, sign);
    const char* names[] = {"Lx", "Ly", "Lz"};
    for (const char* a : names) {
      for (const char* b : names) {
        v.equal(moyal(m.charge(a), m.charge(b)), poisson(m.charge(a), m.charge(b)), std::string("mb=pb for ") + a + "," + b);
      }
    }
  }
  return v.done("Moyal brackets of the linear-in-p charges equal their Poisson brackets");
}

CheckOutcome s2_03(const CheckContext& ctx) {
  Verdict v;
  Model m = build_sphere(2, 1);
  const int n = 2;
  const long long shift = ctx.perturb ? 2 : 3;
  PhaseExpr expected = (inv_one_minus_q2(n) - constant(n, real(shift))).times_hbar(2, real(1, 8));
  PhaseExpr got = m.h_quantum - m.h_classical;
  v.equal(got, expected, "Hqm - H");
  return v.done("Hqm - H = " + got.to_string());
}

CheckOutcome s2_04(const CheckContext&) {
  Verdict v;
  Model m = build_sphere(2, 1);
  for (const char* l : {"Lx", "Ly", "Lz"}) v.require(moyal(m.charge(l), m.h_quantum).is_zero(), std::string("mb(") + l + ",Hqm) = 0");
  for (const char* l : {"Lx", "Ly"}) {
    PhaseExpr c = moyal(m.charge(l), m.h_classical);
    v.require(!c.is_zero(), std::string("mb(") + l + ",H) != 0");
    bool order_two = true;
    try {
      c.divide_exact_hbar(2);
    } catch (const InexactDivision&) {
      order_two = false;
    }
    v.require(order_two, std::string("mb(") + l + ",H) is O(hbar^2)", c.to_string());
  }
  // Lz is quadratic in phase space, so its Moyal bracket is exactly the
  // Poisson bracket and H stays conserved.
  v.require(moyal(m.charge("Lz"), m.h_classical).is_zero(), "mb(Lz,H) = 0");
  return v.done("Hqm conserves Lx,Ly,Lz; H fails at O(hbar^2) for Lx,Ly (mb(Lx,H) = " +
                moyal(m.charge("Lx"), m.h_classical).to_string() + "); Lz is quadratic so mb(Lz,H)=0");
}

CheckOutcome s2_05(const CheckContext&) {
  Verdict v;
  for (int sign : {1, -1}) {
    Model m = build_sphere(2, sign);
    const PhaseExpr& lz = m.charge("Lz");
    const PhaseExpr& lp = m.charge("Lp");
    const PhaseExpr& lm = m.charge("Lm");
    v.equal(com(lz, lp), lp.times_hbar(1, real(1)), "Lz*L+ - L+*Lz = hbar L+");
    v.equal(com(lz, lm), lm.times_hbar(1, real(-1)), "Lz*L- - L-*Lz = -hbar L-");
  }
  return v.done("ladder relations hold with L+- = Lx +- i Ly");
}

CheckOutcome s2_06(const CheckContext&) {
  Verdict v;
  Model m = build_sphere(2, 1);
  const PhaseExpr& lx = m.charge("Lx");
  const PhaseExpr& ly = m.charge("Ly");
  const PhaseExpr& lz = m.charge("Lz");
  PhaseExpr casimir = star(lx, lx) + star(ly, ly) + star(lz, lz);
  PhaseExpr ladder = star(m.charge("Lp"), m.charge("Lm")) + star(lz, lz) - lz.times_hbar(1, real(1));
  v.equal(casimir, ladder, "sum L*L = L+*L- + Lz*Lz - hbar Lz");
  v.equal(casimir.scaled(real(1, 2)), m.h_quantum, "Hqm = 1/2 sum L*L");
  return v.done("Casimir rewritten through ladder operators");
}

CheckOutcome s2_07(const CheckContext&) {
  Verdict v;
  Model m = build_sphere(2, 1);
  const int n = 2;
  for (int i = 0; i < n; ++i) {
    PhaseExpr x = PhaseExpr::x(n, i);
    PhaseExpr p = PhaseExpr::p(n, i);
    v.equal(moyal(x, m.h_quantum), poisson(x, m.h_classical), "mb(x,Hqm) = pb(x,H)");
    PhaseExpr dp = moyal(p, m.h_quantum) - poisson(p, m.h_classical);
    v.require(!dp.is_zero(), "mb(p,Hqm) != pb(p,H)");
    v.require(dp.substitute_hbar_zero().is_zero(), "momentum correction vanishes at hbar=0", dp.to_string());
  }
  PhaseExpr dp = moyal(PhaseExpr::p(n, 0), m.h_quantum) - poisson(PhaseExpr::p(n, 0), m.h_classical);
  return v.done("coordinate equations are classical; dp_x/dt gains " + dp.to_string());
}

// ---------------------------------------------------------------------------
// S^N

CheckOutcome sn_01(const CheckContext& ctx) {
  Verdict v;
  auto ds = dims(ctx, {2, 3, 4});
  for (int n : ds) {
    for (int sign : {1, -1}) {
      Model m = build_sphere(n, sign);
      auto P = [&](int a) { return m.charge(charge_key("P", {a})); };
      auto L = [&](int a, int b) { return a == b ? PhaseExpr(n) : m.charge(charge_key("L", {a, b})); };
      auto d = [](int a, int b) { return a == b ? 1 : 0; };
      auto combo = [&](std::initializer_list<std::pair<int, PhaseExpr>> terms) {
        std::vector<PhaseExpr> parts;
        for (const auto& [c, e] : terms) {
          if (c != 0) parts.push_back(e.scaled(real(c)));
        }
        return PhaseExpr::sum(n, parts);
      };
      const std::string tag = " N=" + std::to_string(n) + (sign > 0 ? "+" : "-");
      for (int a = 1; a <= n; ++a) {
        for (int b = 1; b <= n; ++b) {
          if (a != b) v.equal(poisson(P(a), P(b)), L(a, b), "{P_a,P_b} = L_ab" + tag);
          for (int c = 1; c <= n; ++c) {
            if (a == b) continue;
            v.equal(poisson(L(a, b), P(c)), combo({{d(a, c), P(b)}, {-d(b, c), P(a)}}), "{L_ab,P_c}" + tag);
            for (int e = 1; e <= n; ++e) {
              if (c == e) continue;
              PhaseExpr rhs = combo({{d(a, e), L(c, b)}, {d(a, c), L(b, e)}, {d(b, e), L(a, c)}, {d(b, c), L(e, a)}});
              v.equal(poisson(L(a, b), L(c, e)), rhs, "{L_ab,L_cd}" + tag);
            }
          }
        }
      }
      std::vector<PhaseExpr> all;
      for (const auto& key : m.conserved) {
        if (key.rfind("P[", 0) == 0 || key.rfind("L[", 0) == 0) all.push_back(m.charge(key));
      }
      for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) v.equal(moyal(all[i], all[j]), poisson(all[i], all[j]), "mb = pb" + tag);
      }
    }
  }
  return v.done("so(N+1) closure of P_a, L_ab and MB = PB for " + dims_text(ds));
}

CheckOutcome sn_02(const CheckContext& ctx) {
  Verdict v;
  auto ds = dims(ctx, {2, 3, 4});
  for (int n : ds) {
    Model m = build_sphere(n, 1);
    PhaseExpr expected = (inv_one_minus_q2(n) - constant(n, real(1 + n * (n - 1)))).times_hbar(2, real(1, 8));
    v.equal(m.h_quantum - m.h_classical, expected, "Hqm - H, N=" + std::to_string(n));
  }
  return v.done("hbar^2/8 (1/(1-q^2) - 1 - N(N-1)) for " + dims_text(ds));
}

CheckOutcome sn_03(const CheckContext& ctx) {
  Verdict v;
  auto ds = dims(ctx, {2, 3, 4});
  for (int n : ds) {
    for (int sign : {-1, 1}) {
      Geometry g = sphere_geometry(n, sign);
      const std::string tag = " N=" + std::to_string(n) + (sign > 0 ? " (+)" : " (-)");
      auto at = [](const ExprMatrix& m, int a, int b) -> const PhaseExpr& {
        return m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      };
      PhaseExpr one = constant(n, real(1));
      PhaseExpr inv = inv_one_minus_q2(n);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          PhaseExpr delta = a == b ? one : PhaseExpr(n);
          PhaseExpr qq = PhaseExpr::x(n, a) * PhaseExpr::x(n, b);
          v.equal(at(g.g_down, a, b), delta + qq * inv, "g_ab explicit" + tag);
          v.equal(at(g.g_up, a, b), delta - qq, "g^ab explicit" + tag);
          std::vector<PhaseExpr> vv_down, vv_up, mixed, gg;
          for (int i = 0; i < n; ++i) {
            vv_down.push_back(at(g.v_down, a, i) * at(g.v_down, b, i));
            vv_up.push_back(at(g.v_up, a, i) * at(g.v_up, b, i));
            mixed.push_back(at(g.v_up, i, a) * at(g.v_down, i, b));
            gg.push_back(at(g.g_down, a, i) * at(g.g_up, i, b));
          }
          v.equal(PhaseExpr::sum(n, vv_down), at(g.g_down, a, b), "g_ab = V_a^i V_b^i" + tag);
          v.equal(PhaseExpr::sum(n, vv_up), at(g.g_up, a, b), "g^ab = V^ai V^bi" + tag);
          v.equal(PhaseExpr::sum(n, mixed), delta, "V^ai V_a^j = delta" + tag);
          v.equal(PhaseExpr::sum(n, gg), delta, "g_ac g^cb = delta" + tag);
        }
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          std::vector<PhaseExpr> parts;
          for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) parts.push_back(at(g.g_up, a, b) * at(g.v_down, a, i) * at(g.v_down, b, j));
          }
          v.equal(PhaseExpr::sum(n, parts), i == j ? one : PhaseExpr(n), "g^ab V_a^i V_b^j = delta" + tag);
        }
      }
      if (sign < 0) {
        for (int a = 0; a < n; ++a) {
          for (int j = 0; j < n; ++j) {
            PhaseExpr expect = (a == j ? one : PhaseExpr(n)) - PhaseExpr::x(n, a) * PhaseExpr::x(n, j) * *g.w;
            v.equal(at(g.v_up, a, j), expect, "V^aj = delta - q^a q^j w" + tag);
          }
        }
      }
    }
  }
  return v.done("metric and Vielbein identities for both Vielbein signs, " + dims_text(ds));
}

CheckOutcome sn_04(const CheckContext& ctx) {
  Verdict v;
  auto ds = dims(ctx, {2, 3, 4});
  for (int n : ds) {
    Model m = build_sphere(n, 1);
    for (int sign : {-1, 1}) {
      Geometry g = sphere_geometry(n, sign);
      std::vector<PhaseExpr> parts;
      for (int i = 0; i < n; ++i) {
        PhaseExpr c = vielbein_current(g, n, i);
        parts.push_back(c * c);
      }
      v.equal(PhaseExpr::sum(n, parts).scaled(real(1, 2)), m.h_classical, "H = 1/2 (pV)(Vp), N=" + std::to_string(n));
    }
  }
  return v.done("classical H through either Vielbein, " + dims_text(ds));
}

CheckOutcome sn_05(const CheckContext& ctx) {
  Verdict v;
  auto ds = dims(ctx, {2, 3, 4});
  for (int n : ds) {
    Model m = build_sphere(n, 1);
    const Geometry& g = *m.geometry;
    auto V = [&](int a, int j) -> const PhaseExpr& { return g.v_up[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)]; };
    for (int j = 0; j < n; ++j) {
      v.require(current_algebra_omega(m, j + 1, j + 1).is_zero(), "omega^{a[jj]} = 0");
      for (int k = j + 1; k < n; ++k) {
        PhaseExpr cj = vielbein_current(g, n, j);
        PhaseExpr ck = vielbein_current(g, n, k);
        PhaseExpr omega = current_algebra_omega(m, j + 1, k + 1);
        std::vector<PhaseExpr> parts;
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            PhaseExpr coeff = V(b, k) * V(a, j).differentiate(Var::x(b)) - V(b, j) * V(a, k).differentiate(Var::x(b));
            parts.push_back(coeff * PhaseExpr::p(n, a));
          }
        }
        const std::string tag = " N=" + std::to_string(n) + " j=" + std::to_string(j + 1) + " k=" + std::to_string(k + 1);
        v.equal(moyal(cj, ck), omega, "mb(V^aj p_a, V^bk p_b) = omega" + tag);
        v.equal(PhaseExpr::sum(n, parts), omega, "general frame formula = omega" + tag);
        v.equal(poisson(cj, ck), omega, "pb of currents = omega" + tag);
      }
    }
  }
  return v.done("Vielbein currents close on (delta^aj q^k - delta^ak q^j) w p_a, " + dims_text(ds));
}

CheckOutcome sn_06(const CheckContext& ctx) {
  Verdict v;
  auto ds = dims(ctx, {2, 3, 4});
  for (int n : ds) {
    Model m = build_sphere(n, 1);
    PhaseExpr ho = h_other(m);
    const PhaseExpr& w = *m.geometry->w;
    PhaseExpr bracket = constant(n, real(1 - n)) - w.scaled(real(2));
    PhaseExpr expected = bracket.times_hbar(2, real(n - 1, 8));
    v.equal(m.h_quantum - ho, expected, "Hqm - Hother, N=" + std::to_string(n));
    v.equal(ho.substitute_hbar_zero(), m.h_classical, "Hother at hbar=0 is H");
    for (const auto& key : m.conserved) {
      if (key.rfind("L[", 0) == 0) v.require(moyal(ho, m.charge(key)).is_zero(), "Hother conserves " + key);
    }
  }
  return v.done("hbar^2/8 (N-1)(1-2w-N) and SO(N) symmetry of Hother, " + dims_text(ds));
}

CheckOutcome sn_07(const CheckContext& ctx) {
  Verdict v;
  auto ds = dims(ctx, {2, 3});
  for (int n : ds) {
    Model m = build_sphere(n, 1);
    PhaseExpr ho = h_other(m);
    const PhaseExpr& w = *m.geometry->w;
    PhaseExpr inv_q2 = q_squared(n).inverse();
    for (int c = 1; c <= n; ++c) {
      const PhaseExpr& pc = m.charge(charge_key("P", {c}));
      PhaseExpr expected =
          (PhaseExpr::x(n, c - 1) * (w.scaled(real(2)) - constant(n, real(1))) * inv_q2).times_hbar(2, real(n - 1, 4));
      v.equal(moyal(ho, pc), expected, "mb(Hother,P_c), N=" + std::to_string(n) + " c=" + std::to_string(c));
      v.equal(moyal(ho, pc), moyal(ho - m.h_quantum, pc), "mb(Hother,P_c) = mb(Hother-Hqm,P_c)");
    }
  }
  return v.done("de Sitter momenta are not conserved by Hother, " + dims_text(ds) + " (upper hemisphere, P_a = s p_a)");
}

CheckOutcome sn_08(const CheckContext& ctx) {
  Verdict v;
  auto ds = dims(ctx, {2, 3});
  for (int n : ds) {
    Model m = build_sphere(n, 1);
    auto ids = similarity_identities(m);
    for (const auto& id : ids) v.equal(id.lhs, id.rhs, id.label + ", N=" + std::to_string(n));
    const Geometry& g = *m.geometry;
    const PhaseExpr& w = *g.w;
    for (int j = 0; j < n; ++j) {
      const auto& fwd = ids[static_cast<std::size_t>(2 * j)];
      const auto& rev = ids[static_cast<std::size_t>(2 * j + 1)];
      PhaseExpr cur = vielbein_current(g, n, j);
      v.equal(fwd.lhs.substitute_hbar_zero(), cur, "conjugation at hbar=0");
      std::vector<PhaseExpr> parts;
      for (int a = 0; a < n; ++a) {
        parts.push_back(g.v_up[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] * w.differentiate(Var::x(a)));
      }
      PhaseExpr log_term = (PhaseExpr::sum(n, parts) * w.inverse()).times_hbar(1, imag(-(n - 1)));
      v.equal(fwd.lhs - rev.lhs, log_term, "difference of the two conjugations");
    }
  }
  return v.done("star-similarity by w^(N-1) maps the currents and factorizes Hqm, " + dims_text(ds));
}

// ---------------------------------------------------------------------------
// chiral S^3

CheckOutcome ch_01(const CheckContext&) {
  Verdict v;
  Model m = build_chiral_s3();
  const int n = 3;
  std::vector<PhaseExpr> r, l, jl;
  for (int i = 1; i <= 3; ++i) {
    r.push_back(m.charge(charge_key("R", {i})));
    l.push_back(m.charge(charge_key("Lch", {i})));
    jl.push_back(m.charge(charge_key("JL", {i})));
  }
  StructureConstants fr = read_structure_constants(r);
  StructureConstants fl = read_structure_constants(l);
  v.require(fr.f == fl.f, "left and right algebras share structure constants");
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::vector<PhaseExpr> rr, ll, jj;
      for (int k = 0; k < 3; ++k) {
        GaussScalar c = fr(i, j, k) * real(-2);
        rr.push_back(r[static_cast<std::size_t>(k)].scaled(c));
        ll.push_back(l[static_cast<std::size_t>(k)].scaled(c));
        int e = eps(i + 1, j + 1, k + 1);
        if (e != 0) jj.push_back(jl[static_cast<std::size_t>(k)].times_hbar(1, imag(e)));
      }
      const auto& ri = r[static_cast<std::size_t>(i)];
      const auto& rj = r[static_cast<std::size_t>(j)];
      const auto& li = l[static_cast<std::size_t>(i)];
      const auto& lj = l[static_cast<std::size_t>(j)];
      v.equal(poisson(ri, rj), PhaseExpr::sum(n, rr), "{R_i,R_j} = -2 f R");
      v.equal(poisson(li, lj), PhaseExpr::sum(n, ll), "{L_i,L_j} = -2 f L");
      v.require(poisson(li, rj).is_zero(), "{L_i,R_j} = 0");
      v.equal(moyal(ri, rj), poisson(ri, rj), "mb = pb on R");
      v.equal(moyal(li, rj), poisson(li, rj), "mb = pb on L,R");
      v.equal(com(jl[static_cast<std::size_t>(i)], jl[static_cast<std::size_t>(j)]), PhaseExpr::sum(n, jj),
              "[JL_i,JL_j] = i hbar eps JL_k");
    }
  }
  return v.done("su(2)+su(2) closure; read-off f_123 = " + fr(0, 1, 2).to_string() + ", c_adjoint = " +
                fr.c_adjoint.to_string());
}

CheckOutcome ch_02(const CheckContext&) {
  Verdict v;
  Model m = build_chiral_s3();
  const int n = 3;
  PhaseExpr s = PhaseExpr::radical_s(n);
  for (int i = 1; i <= 3; ++i) {
    v.equal(m.charge(charge_key("A", {i})), s * PhaseExpr::p(n, i - 1), "A_i = s p_i");
    std::vector<PhaseExpr> parts;
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        int e = eps(i, j, k);
        if (e != 0) parts.push_back((PhaseExpr::x(n, j - 1) * PhaseExpr::p(n, k - 1)).scaled(real(e)));
      }
    }
    v.equal(m.charge(charge_key("I", {i})), PhaseExpr::sum(n, parts), "I_i = (q x p)_i");
  }
  return v.done("1/2(R-L) = s p and 1/2(R+L) = q x p");
}

CheckOutcome ch_03(const CheckContext&) {
  Verdict v;
  Model m = build_chiral_s3();
  const int n = 3;
  const PhaseExpr half_il = m.charge("IL").scaled(real(1, 2));
  const PhaseExpr half_ir = m.charge("IR").scaled(real(1, 2));
  v.equal(half_il, half_ir, "1/2 L.*L = 1/2 R.*R");
  for (int sign : {1, -1}) {
    Geometry g = chiral_geometry(sign);
    auto V = [&](int a, int i) -> const PhaseExpr& { return g.v_up[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]; };
    std::vector<PhaseExpr> stars;
    for (int i = 0; i < n; ++i) {
      PhaseExpr c = vielbein_current(g, n, i);
      stars.push_back(star(c, c));
    }
    PhaseExpr framed = PhaseExpr::sum(n, stars).scaled(real(1, 2));
    std::vector<PhaseExpr> metric, derivs;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        metric.push_back(g.g_up[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * PhaseExpr::p(n, a) * PhaseExpr::p(n, b));
        for (int i = 0; i < n; ++i) derivs.push_back(V(b, i).differentiate(Var::x(a)) * V(a, i).differentiate(Var::x(b)));
      }
    }
    PhaseExpr geometric =
        (PhaseExpr::sum(n, metric) + PhaseExpr::sum(n, derivs).times_hbar(2, real(1, 4))).scaled(real(1, 2));
    const std::string tag = sign > 0 ? " (right Dreibein)" : " (left Dreibein)";
    v.equal(framed, geometric, "1/2 (pV)*(Vp) = 1/2 (g pp + hbar^2/4 dV dV)" + tag);
    v.equal(framed, half_il, "1/2 (pV)*(Vp) = 1/2 L.*L" + tag);
    v.equal(framed, m.h_quantum, "1/2 (pV)*(Vp) = Hqm" + tag);
  }
  return v.done("four forms of Hqm agree for both Dreibeine");
}

CheckOutcome ch_04(const CheckContext&) {
  Verdict v;
  Model m = build_chiral_s3();
  const int n = 3;
  PhaseExpr expected = (inv_one_minus_q2(n) - constant(n, real(7))).times_hbar(2, real(1, 8));
  v.equal(m.h_quantum - m.h_classical, expected, "Hqm - H");
  std::vector<PhaseExpr> rr;
  for (int i = 1; i <= 3; ++i) {
    const PhaseExpr& r = m.charge(charge_key("R", {i}));
    rr.push_back(r * r);
  }
  v.equal(PhaseExpr::sum(n, rr).scaled(real(1, 2)), m.h_classical, "H = 1/2 R.R = 1/2 L.L");
  return v.done("Hqm - H = hbar^2/8 (1/(1-q^2) - 7)");
}

CheckOutcome ch_05(const CheckContext&) {
  Verdict v;
  Model m = build_gnomonic_s3();
  const int n = 3;
  PhaseExpr corr = m.h_quantum - m.h_classical;
  v.equal(corr, (q_squared(n) - constant(n, real(1))).times_hbar(2, real(3, 4)), "Hqm - H");
  v.require(!m.h_quantum.radical_enabled(), "gnomonic model is radical-free");
  EvalPoint origin{{0, 0, 0}, {0, 0, 0}, Rational(1)};
  v.require(corr.evaluate(origin, Rational(1)) == real(-3, 4), "correction at Q=0 is -3/4 hbar^2");
  for (int i = 1; i <= 3; ++i) v.require(moyal(m.charge(charge_key("J", {i})), m.h_quantum).is_zero(), "gnomonic currents conserved");
  return v.done("Hqm - H = 3/4 hbar^2 (Q^2 - 1) with polynomial Vielbein");
}

CheckOutcome ch_06(const CheckContext&) {
  Verdict v;
  Model m = build_chiral_s3();
  const int n = 3;
  PhaseExpr corr = m.h_quantum - m.h_classical;
  std::string shown;
  for (int sign : {1, -1}) {
    ChristoffelCorrection cc = christoffel_correction(m, sign);
    v.equal(cc.correction, corr, "hbar^2/8 (Gamma g Gamma - f f) = Hqm - H");
    v.require(cc.structure.c_adjoint == real(2), "c_adjoint = 2", cc.structure.c_adjoint.to_string());
    v.equal(cc.gamma_contraction, inv_one_minus_q2(n) - constant(n, real(1)), "Gamma g Gamma = 1/(1-q^2) - 1");
    Geometry g = chiral_geometry(sign);
    auto gamma = christoffel(g.g_down, g.g_up);
    EvalPoint origin{{0, 0, 0}, {0, 0, 0}, Rational(1)};
    for (const auto& mat : gamma) {
      for (const auto& row : mat) {
        for (const auto& e : row) v.require(e.evaluate(origin, Rational(1)).is_zero(), "Gamma vanishes at q=0");
      }
    }
    shown = cc.gamma_contraction.to_string();
  }
  return v.done("Christoffel form with Gamma g Gamma = " + shown + " and f f = 6");
}

// ---------------------------------------------------------------------------
// classical Nambu brackets

CheckOutcome nb_01(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("NB-01");
  for (int sign : {1, -1}) {
    Model m = build_sphere(2, sign);
    for (int d = 0; d < ctx.draws; ++d) {
      PhaseExpr k = random_expr(2, rng, wigner_options());
      std::vector<PhaseExpr> entries{k, m.charge("Lx"), m.charge("Ly"), m.charge("Lz")};
      v.equal(nambu_jacobian(entries), poisson(k, m.h_classical), "d(k,Lx,Ly,Lz)/d(x,px,y,py) = {k,H}");
    }
  }
  return v.done("S^2 Nambu evolution equals Poisson evolution on random k");
}

CheckOutcome nb_02(const CheckContext&) {
  Verdict v;
  for (int sign : {1, -1}) {
    Model m = build_sphere(2, sign);
    std::vector<PhaseExpr> entries{m.h_classical, m.charge("Lx"), m.charge("Ly"), m.charge("Lz")};
    v.require(nambu_jacobian(entries).is_zero(), "{H,Lx,Ly,Lz} = 0");
  }
  return v.done("the Casimir is a dependent entry so its bracket vanishes");
}

CheckOutcome nb_03(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("NB-03");
  for (int n : {3, 4}) {
    Model m = build_sphere(n, 1);
    PhaseExpr prefactor = constant(n, real(n % 2 == 1 ? 1 : -1));  // (-1)^(N-1)
    for (int a = 2; a <= n - 1; ++a) prefactor *= m.charge(charge_key("P", {a}));
    for (int d = 0; d < ctx.draws; ++d) {
      PhaseExpr f = random_expr(n, rng, wigner_options());
      std::vector<PhaseExpr> entries{f};
      for (int a = 1; a <= n; ++a) {
        entries.push_back(m.charge(charge_key("P", {a})));
        if (a < n) entries.push_back(m.charge(charge_key("L", {a, a + 1})));
      }
      v.equal(nambu_jacobian(entries), prefactor * poisson(f, m.h_classical),
              "d(f,P1,L12,...,PN) = (-1)^(N-1) P2..P(N-1) df/dt, N=" + std::to_string(n));
    }
  }
  return v.done("S^N Jacobian with P-prefactor in multiplied-through form, N=3,4");
}

CheckOutcome nb_04(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("NB-04");
  RandomExprOptions o;
  o.max_terms = 3;
  for (int n : {1, 2}) {
    for (int d = 0; d < ctx.draws; ++d) {
      PhaseExpr l = random_expr(n, rng, o);
      PhaseExpr mm = random_expr(n, rng, o);
      std::vector<PhaseExpr> rest;
      for (int i = 1; i < 2 * n; ++i) rest.push_back(random_expr(n, rng, o));
      // k = L^2 M + 3L - M^2
      PhaseExpr k = l * l * mm + l.scaled(real(3)) - mm * mm;
      PhaseExpr dk_dl = (l * mm).scaled(real(2)) + constant(n, real(3));
      PhaseExpr dk_dm = l * l - mm.scaled(real(2));
      auto with = [&](const PhaseExpr& head) {
        std::vector<PhaseExpr> e{head};
        e.insert(e.end(), rest.begin(), rest.end());
        return nambu_jacobian(e);
      };
      v.equal(with(k), dk_dl * with(l) + dk_dm * with(mm), "NB Leibniz, N=" + std::to_string(n));
    }
  }
  return v.done("chain rule through the first entry, N=1,2");
}

CheckOutcome nb_05(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("NB-05");
  RandomExprOptions o;
  o.max_terms = 2;
  for (int n : {1, 2}) {
    for (int d = 0; d < ctx.draws; ++d) {
      std::vector<PhaseExpr> f, g;
      for (int i = 0; i < 2 * n; ++i) f.push_back(random_expr(n, rng, o));
      for (int i = 0; i < 2 * n - 1; ++i) g.push_back(random_expr(n, rng, o));
      PhaseExpr vv = random_expr(n, rng, o);
      auto g_with = [&](const PhaseExpr& last) {
        std::vector<PhaseExpr> e = g;
        e.push_back(last);
        return nambu_jacobian(e);
      };
      std::vector<PhaseExpr> lhs;
      for (int i = 0; i < 2 * n; ++i) {
        std::vector<PhaseExpr> e = f;
        e[static_cast<std::size_t>(i)] = vv * g_with(f[static_cast<std::size_t>(i)]);
        lhs.push_back(nambu_jacobian(e));
      }
      v.equal(PhaseExpr::sum(n, lhs), g_with(vv * nambu_jacobian(f)), "fundamental identity with V, N=" + std::to_string(n));
    }
  }
  return v.done("generalized fundamental identity with prefactor V, N=1,2");
}

// Literal form of the trace: ordered index tuples with repeats, divided by
// (N-k)!. Used as the oracle for symplectic_trace.
PhaseExpr ordered_trace(const std::vector<PhaseExpr>& entries, int n) {
  const int k = static_cast<int>(entries.size()) / 2;
  const int missing = n - k;
  std::vector<PhaseExpr> parts;
  std::vector<int> idx(static_cast<std::size_t>(missing), 0);
  long long fact = 1;
  for (int i = 2; i <= missing; ++i) fact *= i;
  for (;;) {
    std::vector<PhaseExpr> full = entries;
    for (int i : idx) {
      full.push_back(PhaseExpr::x(n, i));
      full.push_back(PhaseExpr::p(n, i));
    }
    parts.push_back(nambu_jacobian(full));
    int pos = 0;
    while (pos < missing && ++idx[static_cast<std::size_t>(pos)] == n) idx[static_cast<std::size_t>(pos++)] = 0;
    if (pos == missing) break;
  }
  return PhaseExpr::sum(n, parts).scaled(real(1, fact));
}

CheckOutcome nb_06(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("NB-06");
  RandomExprOptions o;
  o.max_terms = 3;
  o.use_radical = true;
  for (int n : {2, 3}) {
    for (int d = 0; d < ctx.draws; ++d) {
      PhaseExpr l = random_expr(n, rng, o);
      PhaseExpr m = random_expr(n, rng, o);
      std::vector<PhaseExpr> pair{l, m};
      v.equal(symplectic_trace(pair, n), poisson(l, m), "trace to rank 2 = PB, N=" + std::to_string(n));
      v.equal(symplectic_trace(pair, n), ordered_trace(pair, n), "trace matches ordered sum");
      std::vector<PhaseExpr> same{l, l};
      v.require(symplectic_trace(same, n).is_zero(), "trace of (f,f) vanishes");
      if (n == 3) {
        std::vector<PhaseExpr> four{l, m, random_expr(n, rng, o), random_expr(n, rng, o)};
        PhaseExpr t = symplectic_trace(four, n);
        v.equal(t, ordered_trace(four, n), "rank-4 trace matches ordered sum");
        std::swap(four[0], four[2]);
        v.equal(symplectic_trace(four, n), -t, "rank-4 trace is antisymmetric");
      }
    }
  }
  return v.done("symplectic traces reduce NBs to PBs and lower-rank NBs, N=2,3");
}

CheckOutcome nb_07(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("NB-07");
  RandomExprOptions o;
  o.max_terms = 3;
  for (int n : {2, 3}) {
    for (int d = 0; d < ctx.draws; ++d) {
      PhaseExpr k = random_expr(n, rng, o);
      PhaseExpr h = random_expr(n, rng, o);
      std::vector<PhaseExpr> pair{k, h};
      v.equal(symplectic_trace(pair, n), poisson(k, h), "dk/dt via traced NB, N=" + std::to_string(n));
    }
  }
  return v.done("Hamilton's equations from traced NBs for generic H, N=2,3");
}

// ---------------------------------------------------------------------------
// quantum Nambu brackets

CheckOutcome qn_01(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("QN-01");
  const PhaseAlgebra& alg = phase(2);
  for (int d = 0; d < ctx.draws; ++d) {
    std::vector<PhaseExpr> e;
    for (int i = 0; i < 4; ++i) e.push_back(random_expr(2, rng, wigner_options()));
    v.equal(qnb<PhaseAlgebra>(e, alg).value, resolve_qnb4(e[0], e[1], e[2], e[3], alg), "phase-space 4-bracket");
    v.require(resolve_qnb4(e[0], e[0], e[2], e[3], alg).is_zero(), "resolution vanishes for equal entries");
    MatrixAlgebra malg{3};
    std::vector<ExactMatrix> m;
    for (int i = 0; i < 4; ++i) m.push_back(random_matrix(3, rng));
    v.equal(qnb<MatrixAlgebra>(m, malg).value, resolve_qnb4(m[0], m[1], m[2], m[3], malg), "matrix 4-bracket");
  }
  v.equal(qnb_phase({PhaseExpr::x(2, 0), PhaseExpr::p(2, 0), PhaseExpr::x(2, 1), PhaseExpr::p(2, 1)}),
          constant(2, real(-2)).times_hbar(2, real(1)), "[x,px,y,py] = -2 hbar^2");
  return v.done("4-brackets equal their six-term commutator resolution");
}

CheckOutcome qn_02(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("QN-02");
  Model m = build_sphere(2, 1);
  const PhaseExpr &lx = m.charge("Lx"), &ly = m.charge("Ly"), &lz = m.charge("Lz");
  PhaseExpr casimir = star(lx, lx) + star(ly, ly) + star(lz, lz);
  for (int d = 0; d < ctx.draws; ++d) {
    PhaseExpr a = random_expr(2, rng, wigner_options());
    v.equal(qnb_phase({a, lx, ly, lz}), com(a, casimir).times_hbar(1, imag(1)), "[A,Lx,Ly,Lz] = i hbar [A, L.*L]");
  }
  return v.done("S^2 4-bracket reduces to a commutator with the Casimir");
}

CheckOutcome qn_03(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("QN-03");
  Model m = build_sphere(2, 1);
  const PhaseExpr &lx = m.charge("Lx"), &ly = m.charge("Ly"), &lz = m.charge("Lz");
  for (int d = 0; d < ctx.draws; ++d) {
    PhaseExpr a = random_expr(2, rng, wigner_options());
    PhaseExpr b = random_expr(2, rng, wigner_options());
    PhaseExpr lhs = qnb_phase({star(a, b), lx, ly, lz});
    PhaseExpr rhs = star(a, qnb_phase({b, lx, ly, lz})) + star(qnb_phase({a, lx, ly, lz}), b);
    v.equal(lhs, rhs, "[A*B,Lx,Ly,Lz] = A*[B,...] + [A,...]*B");
  }
  return v.done("effective fundamental identity on random A, B");
}

CheckOutcome qn_04(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("QN-04");
  Model m = build_sphere(2, 1);
  for (int d = 0; d < ctx.draws; ++d) {
    PhaseExpr f = random_expr(2, rng, wigner_options());
    PhaseExpr q = qnb_phase({m.charge("Lx"), m.charge("Ly"), m.charge("Lz"), f});
    v.equal(q.divide_exact_hbar(2).scaled(real(1, 2)), moyal(m.h_quantum, f), "1/(2(i hbar)^2) [Lx,Ly,Lz,f] = mb(Hqm,f)");
  }
  return v.done("Wigner-function evolution from the 4-bracket");
}

CheckOutcome qn_05(const CheckContext&) {
  Verdict v;
  Model m = build_sphere(2, 1);
  const int n = 2;
  for (int i = 0; i < n; ++i) {
    for (const PhaseExpr& z : {PhaseExpr::x(n, i), PhaseExpr::p(n, i)}) {
      PhaseExpr q = qnb_phase({z, m.charge("Lx"), m.charge("Ly"), m.charge("Lz")});
      // -1/(2 hbar^2) = 1/(2 (i hbar)^2)
      v.equal(q.divide_exact_hbar(2).scaled(real(1, 2)), moyal(z, m.h_quantum), "-1/(2 hbar^2)[z,Lx,Ly,Lz] = mb(z,Hqm)");
    }
  }
  PhaseExpr px_dot = moyal(PhaseExpr::p(n, 0), m.h_quantum);
  v.require(!(px_dot == poisson(PhaseExpr::p(n, 0), m.h_classical)), "dp_x/dt carries the quantum correction");
  return v.done("equations of motion from 4-brackets match star quantization");
}

CheckOutcome qn_06(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("QN-06");
  // phase space: Q_a = JL_a with [Q_a,Q_b] = i hbar f_abc Q_c
  Model m = build_chiral_s3();
  const int n = 3;
  std::vector<PhaseExpr> q;
  for (int i = 1; i <= 3; ++i) q.push_back(m.charge(charge_key("JL", {i})));
  StructureConstants read = read_structure_constants(q);
  // The reader solves {X_j,X_k} = -2 f X; here the Moyal bracket itself is f X.
  StructureConstants f = read;
  for (auto& c : f.f) c *= real(-2);
  GaussScalar c_adj(0);
  for (int b = 0; b < 3; ++b) {
    for (int c = 0; c < 3; ++c) c_adj += f(0, b, c) * f(b, c, 0);
  }
  v.require(c_adj == real(2), "c_adjoint = 2 for su(2)", c_adj.to_string());
  PhaseExpr casimir = star(q[0], q[0]) + star(q[1], q[1]) + star(q[2], q[2]);
  for (int d = 0; d < ctx.draws; ++d) {
    PhaseExpr a = random_expr(n, rng, wigner_options());
    std::vector<PhaseExpr> parts;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          if (f(i, j, k).is_zero()) continue;
          parts.push_back(qnb_phase({a, q[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)], q[static_cast<std::size_t>(k)]})
                              .scaled(f(i, j, k)));
        }
      }
    }
    v.equal(PhaseExpr::sum(n, parts), com(a, casimir).times_hbar(1, GaussScalar(Rational(0), Rational(3)) * c_adj),
            "f_abc [A,Q_a,Q_b,Q_c] = 3 i hbar c_adj [A, Q.Q] (phase space)");
  }
  // matrices: spin-1/2 and spin-1 integer-weight representations
  for (int two_j : {1, 2}) {
    Su2Rep rep = su2_verma(two_j);
    const int dim = two_j + 1;
    std::vector<ExactMatrix> qm{rep.lx(), rep.ly(), rep.lz};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        ExactMatrix rhs(dim);
        for (int k = 0; k < 3; ++k) {
          int e = eps(i + 1, j + 1, k + 1);
          if (e != 0) rhs += qm[static_cast<std::size_t>(k)].scaled(imag(e)).times_hbar(1);
        }
        v.equal(commutator(qm[static_cast<std::size_t>(i)], qm[static_cast<std::size_t>(j)]), rhs, "[Q_a,Q_b] = i hbar eps Q_c");
      }
    }
    ExactMatrix cas = rep.casimir();
    MatrixAlgebra alg{dim};
    for (int d = 0; d < ctx.draws; ++d) {
      ExactMatrix a = random_matrix(dim, rng);
      ExactMatrix lhs(dim);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          for (int k = 0; k < 3; ++k) {
            int e = eps(i + 1, j + 1, k + 1);
            if (e == 0) continue;
            std::vector<ExactMatrix> entries{a, qm[static_cast<std::size_t>(i)], qm[static_cast<std::size_t>(j)], qm[static_cast<std::size_t>(k)]};
            lhs += qnb<MatrixAlgebra>(entries, alg).value.scaled(real(e));
          }
        }
      }
      v.equal(lhs, commutator(a, cas).scaled(imag(3) * c_adj).times_hbar(1), "f_abc [A,Q_a,Q_b,Q_c] (matrices)");
    }
  }
  return v.done("trilinear invariant reduces to 3 i hbar c_adj times the Casimir commutator, c_adj = " + c_adj.to_string());
}

CheckOutcome qn_07(const CheckContext& ctx) {
  Verdict v;
  Model m = build_chiral_s3();
  const int n = 3;
  auto A = [&](int i) { return m.charge(charge_key("A", {i})); };
  auto I = [&](int i) { return m.charge(charge_key("I", {i})); };
  const GaussScalar coeff = imag(ctx.perturb ? -4 : 4);
  std::map<std::pair<int, int>, PhaseExpr> f;
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) f[{a, b}] = fab(m, a, b, FabVariant::Cartesian);
  }
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      // [f_ab, Px, Lz, Py, Lx, Pz] with P = A and L read as the isospin I
      PhaseExpr bracket = qnb_phase({f[{a, b}], A(1), I(3), A(2), I(1), A(3)});
      std::vector<PhaseExpr> parts;
      for (int c = 1; c <= 3; ++c) {
        if (eps(b, 2, c) != 0) parts.push_back(f[{a, c}].scaled(real(eps(b, 2, c))));
        if (eps(a, 2, c) != 0) parts.push_back(f[{c, b}].scaled(real(-eps(a, 2, c))));
      }
      PhaseExpr rhs = PhaseExpr::sum(n, parts).times_hbar(5, coeff);
      const std::string tag = " a=" + std::to_string(a) + " b=" + std::to_string(b);
      v.equal(bracket, rhs, "6-bracket rotation" + tag);
      PhaseExpr reduced = bracket.divide_exact_hbar(3);
      v.require(reduced.substitute_hbar_zero().is_zero(), "bracket/hbar^3 -> 0" + tag, reduced.to_string());
    }
  }
  return v.done(
      "[f_ab,Px,Lz,Py,Lx,Pz] = 4 i hbar^5 sum_c (eps_b2c f_ac - eps_a2c f_cb) for all a,b; classical limit exact. "
      "Adopted L_a = (q x p)_a = I_a, so f_ab = (I_a + A_a)*(I_b - A_b) = R_a*Lch_b");
}

struct ChiralHalf {
  std::vector<PhaseExpr> l, r;
  PhaseExpr il, ir;
};

ChiralHalf chiral_half(const Model& m) {
  ChiralHalf h;
  for (int i = 1; i <= 3; ++i) {
    h.l.push_back(m.charge(charge_key("JL", {i})));
    h.r.push_back(m.charge(charge_key("JR", {i})));
  }
  h.il = star(h.l[0], h.l[0]) + star(h.l[1], h.l[1]) + star(h.l[2], h.l[2]);
  h.ir = star(h.r[0], h.r[0]) + star(h.r[1], h.r[1]) + star(h.r[2], h.r[2]);
  return h;
}

const char* kHalfNote = "charges normalized to [L_i,L_j] = i hbar eps L_k (JL = Lch/2, JR = R/2)";

CheckOutcome qn_08(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("QN-08");
  Model m = build_chiral_s3();
  ChiralHalf h = chiral_half(m);
  const std::vector<std::pair<std::string, PhaseExpr>> fs{{"I_L", h.il}, {"I_R", h.ir}, {"I_L*I_R", star(h.il, h.ir)}};
  RandomExprOptions o = wigner_options();
  o.max_terms = 2;
  for (int d = 0; d < ctx.draws; ++d) {
    PhaseExpr f = random_expr(3, rng, o);
    PhaseExpr sigma_f = jordan_phase({f, h.l[2], h.r[2]});
    for (const auto& [name, F] : fs) {
      PhaseExpr bracket = qnb_phase({f, F, h.r[0], h.r[1], h.l[0], h.l[1]});
      PhaseExpr middle = jordan_phase({com(f, F), h.l[2], h.r[2]}).times_hbar(2, real(-1));
      PhaseExpr right = com(sigma_f, F).times_hbar(2, real(-1));
      v.equal(bracket, middle, "[f,F,Rx,Ry,Lx,Ly] = (i hbar)^2 {[f,F],Lz,Rz}, F=" + name);
      v.equal(middle, right, "(i hbar)^2 {[f,F],Lz,Rz} = (i hbar)^2 [{f,Lz,Rz},F], F=" + name);
    }
  }
  return v.done(std::string("chiral 6-bracket with Casimir functions F in {I_L, I_R, I_L*I_R}; ") + kHalfNote);
}

CheckOutcome qn_09(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("QN-09");
  Model m = build_chiral_s3();
  ChiralHalf h = chiral_half(m);
  const PhaseExpr& lz = h.l[2];
  const PhaseExpr& rz = h.r[2];
  PhaseExpr lr = anti(lz, rz);
  for (int d = 0; d < ctx.draws; ++d) {
    PhaseExpr f = random_expr(3, rng, wigner_options());
    PhaseExpr expected = star(lr, f) + star(star(lz, f), rz) + star(star(rz, f), lz) + star(f, lr);
    v.equal(jordan_phase({f, lz, rz}), expected, "{f,Lz,Rz} = {Lz,Rz}*f + Lz*f*Rz + Rz*f*Lz + f*{Lz,Rz}");
  }
  return v.done("Jordan 3-product expansion on random f");
}

// Elementary unit E_uv of dimension d.
ExactMatrix unit(int d, int u, int v) {
  ExactMatrix e(d);
  e.add(u, v, 0, GaussScalar(1));
  return e;
}

CheckOutcome qn_10(const CheckContext&) {
  Verdict v;
  int units = 0;
  for (int two_j : {0, 1, 2}) {
    Su2Rep rep = su2_verma(two_j);
    const int d = two_j + 1;
    const int dim = d * d;
    ExactMatrix id = ExactMatrix::identity(d);
    ExactMatrix lz = tensor(rep.lz, id);
    ExactMatrix rz = tensor(id, rep.lz);
    MatrixAlgebra alg{dim};
    for (int u = 0; u < dim; ++u) {
      for (int w = 0; w < dim; ++w) {
        ExactMatrix e = unit(dim, u, w);
        // Lz and Rz are diagonal with entries hbar * weight.
        GaussScalar l1 = lz.coefficient(u, u, 1), l2 = lz.coefficient(w, w, 1);
        GaussScalar r1 = rz.coefficient(u, u, 1), r2 = rz.coefficient(w, w, 1);
        v.equal(lz * e, e.scaled(l1).times_hbar(1), "Lz f = lambda1 f");
        v.equal(e * lz, e.scaled(l2).times_hbar(1), "f Lz = lambda2 f");
        v.equal(rz * e, e.scaled(r1).times_hbar(1), "Rz f = rho1 f");
        v.equal(e * rz, e.scaled(r2).times_hbar(1), "f Rz = rho2 f");
        GaussScalar sigma = real(2) * l1 * r1 + l1 * r2 + r1 * l2 + real(2) * l2 * r2;
        std::vector<ExactMatrix> entries{e, lz, rz};
        v.equal(jordan<MatrixAlgebra>(entries, alg).value, e.scaled(sigma).times_hbar(2),
                "{f,Lz,Rz} = sigma12 f, 2j=" + std::to_string(two_j));
        ++units;
      }
    }
  }
  return v.done("sigma12 = 2 l1 r1 + l1 r2 + r1 l2 + 2 l2 r2 on all " + std::to_string(units) +
                " elementary units of the (2j+1)^2-dimensional representations, 2j <= 2");
}

CheckOutcome qn_11(const CheckContext&) {
  Verdict v;
  // Left: spin 0 (+) spin 1/2, right: spin 1/2. The left Casimir is then not
  // a multiple of the identity, so [., F] does not vanish identically.
  Su2Rep left = su2_direct_sum(su2_verma(0), su2_verma(1));
  Su2Rep right = su2_verma(1);
  const int dl = left.lz.dim(), dr = right.lz.dim(), dim = dl * dr;
  ExactMatrix il = ExactMatrix::identity(dl), ir = ExactMatrix::identity(dr);
  ExactMatrix lx = tensor(left.lx(), ir), ly = tensor(left.ly(), ir), lz = tensor(left.lz, ir);
  ExactMatrix rx = tensor(il, right.lx()), ry = tensor(il, right.ly()), rz = tensor(il, right.lz);
  ExactMatrix casimir = lx * lx + ly * ly + lz * lz;
  MatrixAlgebra alg{dim};
  auto bracket = [&](const ExactMatrix& f) {
    std::vector<ExactMatrix> e{f, casimir, rx, ry, lx, ly};
    return qnb<MatrixAlgebra>(e, alg).value;
  };
  std::vector<ExactMatrix> b(static_cast<std::size_t>(dim * dim));
  for (int u = 0; u < dim; ++u) {
    for (int w = 0; w < dim; ++w) b[static_cast<std::size_t>(u * dim + w)] = bracket(unit(dim, u, w));
  }
  auto sigma = [&](int u, int w) {
    GaussScalar l1 = lz.coefficient(u, u, 1), l2 = lz.coefficient(w, w, 1);
    GaussScalar r1 = rz.coefficient(u, u, 1), r2 = rz.coefficient(w, w, 1);
    return real(2) * l1 * r1 + l1 * r2 + r1 * l2 + real(2) * l2 * r2;
  };
  int equal_sigma = 0, failures = 0, unequal_failures = 0;
  for (int x = 0; x < dim; ++x) {
    for (int y = 0; y < dim; ++y) {
      for (int z = 0; z < dim; ++z) {
        ExactMatrix f = unit(dim, x, y), g = unit(dim, y, z);
        ExactMatrix lhs = b[static_cast<std::size_t>(x * dim + z)];
        ExactMatrix rhs = f * b[static_cast<std::size_t>(y * dim + z)] + b[static_cast<std::size_t>(x * dim + y)] * g;
        bool same = sigma(x, y) == sigma(y, z) && sigma(y, z) == sigma(x, z);
        bool holds = lhs == rhs;
        if (same) {
          ++equal_sigma;
          v.require(holds, "Leibniz holds when sigma12 = sigma23 = sigma13");
        }
        if (!holds) {
          ++failures;
          if (!same) ++unequal_failures;
        }
      }
    }
  }
  v.require(failures > 0, "some product with unequal sigmas violates Leibniz");
  v.require(failures == unequal_failures, "every violation has unequal sigmas");
  return v.done("on " + std::to_string(dim) + "-dim reducible rep: " + std::to_string(equal_sigma) +
                " equal-sigma triples obey Leibniz, " + std::to_string(failures) + " unequal-sigma triples violate it");
}

CheckOutcome qn_12(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("QN-12");
  Model m = build_chiral_s3();
  ChiralHalf h = chiral_half(m);
  RandomExprOptions o = wigner_options();
  o.max_terms = 2;
  auto triple = [&](const PhaseExpr& f, const std::vector<PhaseExpr>& gens, const PhaseExpr& z) {
    std::vector<PhaseExpr> parts;
    for (const auto& g : gens) parts.push_back(com(com(com(f, g), g), z));
    return PhaseExpr::sum(3, parts);
  };
  for (int d = 0; d < ctx.draws; ++d) {
    PhaseExpr f = random_expr(3, rng, o);
    PhaseExpr lhs = qnb_phase({f, h.l[0], h.l[1], h.l[2], h.r[0], h.r[1]});
    PhaseExpr rhs = com(anti(f, h.r[2]), h.il).times_hbar(2, real(-3, 2)) + triple(f, h.l, h.r[2]).times_hbar(2, real(-1, 2));
    v.equal(lhs, rhs, "[f,Lx,Ly,Lz,Rx,Ry] resolution");
    PhaseExpr lhs2 = qnb_phase({f, h.r[0], h.r[1], h.r[2], h.l[0], h.l[1]});
    PhaseExpr rhs2 = com(anti(f, h.l[2]), h.ir).times_hbar(2, real(-3, 2)) + triple(f, h.r, h.l[2]).times_hbar(2, real(-1, 2));
    v.equal(lhs2, rhs2, "[f,Rx,Ry,Rz,Lx,Ly] resolution");
  }
  return v.done(std::string("exact 3/2 and 1/2 resolutions in both orientations; ") + kHalfNote);
}

CheckOutcome qn_13(const CheckContext&) {
  Verdict v;
  Model m = build_chiral_s3();
  const int n = 3;
  ChiralHalf h = chiral_half(m);
  std::map<std::pair<int, int>, PhaseExpr> f;
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) f[{a, b}] = star(h.l[static_cast<std::size_t>(a - 1)], h.r[static_cast<std::size_t>(b - 1)]);
  }
  auto triple = [&](const PhaseExpr& x, const std::vector<PhaseExpr>& gens, const PhaseExpr& z) {
    std::vector<PhaseExpr> parts;
    for (const auto& g : gens) parts.push_back(com(com(com(x, g), g), z));
    return PhaseExpr::sum(n, parts);
  };
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      const PhaseExpr& fab_ = f[{a, b}];
      std::vector<PhaseExpr> right_rot, left_rot;
      for (int c = 1; c <= 3; ++c) {
        if (eps(b, 3, c) != 0) right_rot.push_back(f[{a, c}].scaled(real(eps(b, 3, c))));
        if (eps(a, 3, c) != 0) left_rot.push_back(f[{c, b}].scaled(real(eps(a, 3, c))));
      }
      PhaseExpr rot_b = PhaseExpr::sum(n, right_rot);
      PhaseExpr rot_a = PhaseExpr::sum(n, left_rot);
      const std::string tag = " a=" + std::to_string(a) + " b=" + std::to_string(b);
      v.equal(triple(fab_, h.l, h.r[2]), rot_b.times_hbar(3, imag(2)), "sum [[[f,L_i],L_i],Rz] = 2 i hbar^3 eps_b3c f_ac" + tag);
      v.equal(triple(fab_, h.r, h.l[2]), rot_a.times_hbar(3, imag(2)), "sum [[[f,R_i],R_i],Lz] = 2 i hbar^3 eps_a3c f_cb" + tag);
      v.require(com(anti(fab_, h.r[2]), h.il).is_zero(), "single-commutator term vanishes" + tag);
      v.equal(qnb_phase({fab_, h.l[0], h.l[1], h.l[2], h.r[0], h.r[1]}), rot_b.times_hbar(5, imag(-1)),
              "[f,Lx,Ly,Lz,Rx,Ry] = -i hbar^5 eps_b3c f_ac" + tag);
      v.equal(qnb_phase({fab_, h.r[0], h.r[1], h.r[2], h.l[0], h.l[1]}), rot_a.times_hbar(5, imag(-1)),
              "[f,Rx,Ry,Rz,Lx,Ly] = -i hbar^5 eps_a3c f_cb" + tag);
    }
  }
  return v.done(std::string("f_ab = L_a*R_b rotations 2 i hbar^3 and totals -i hbar^5 for all a,b; ") + kHalfNote);
}

// ---------------------------------------------------------------------------
// oscillator

CheckOutcome os_01(const CheckContext&) {
  Verdict v;
  for (int n = 1; n <= 3; ++n) {
    for (int total = 0; total <= 3; ++total) {
      FockBasis basis = FockBasis::sector(n, total);
      std::vector<ExactMatrix> nm(static_cast<std::size_t>(n * n));
      auto N = [&](int i, int j) -> ExactMatrix& { return nm[static_cast<std::size_t>((i - 1) * n + (j - 1))]; };
      ExactMatrix sum(basis.size());
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) N(i, j) = number_matrix(basis, i, j);
        sum += N(i, i);
      }
      v.equal(sum, ExactMatrix::identity(basis.size()).scaled(real(total)).times_hbar(1), "sum N_ii = hbar M");
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          for (int k = 1; k <= n; ++k) {
            for (int l = 1; l <= n; ++l) {
              ExactMatrix rhs(basis.size());
              if (j == k) rhs += N(i, l);
              if (i == l) rhs = rhs - N(k, j);
              v.equal(commutator(N(i, j), N(k, l)), rhs.times_hbar(1), "[N_ij,N_kl] = hbar(N_il d_jk - N_kj d_il)");
            }
          }
        }
      }
    }
  }
  ExactMatrix n12 = number_matrix(2, 1, 1, 2);
  v.equal(n12, ExactMatrix::from_integers(2, std::vector<long long>{0, 1, 0, 0}, 1), "n=2 M=1 N_12");
  v.equal(number_matrix(2, 1, 1, 1), ExactMatrix::from_integers(2, std::vector<long long>{1, 0, 0, 0}, 1), "n=2 M=1 N_11");
  return v.done("u(n) closure for n <= 3, M <= 3");
}

CheckOutcome oscillator_paths(const CheckContext& ctx, const std::string& tag,
                              const std::vector<std::vector<int>>& paths2, const std::vector<std::vector<int>>& paths3) {
  Verdict v;
  auto rng = ctx.rng(tag);
  int checked = 0, nonzero = 0;
  for (int n : {2, 3}) {
    for (const auto& path : n == 2 ? paths2 : paths3) {
      int path_nonzero = 0;
      for (int total = 1; total <= 3; ++total) {
        FockBasis basis = FockBasis::up_to(n, total);
        for (int d = 0; d < 5; ++d) {
          ExactMatrix f = random_matrix(basis.size(), rng);
          OscillatorCheck chk = oscillator_theorem_check(basis, f, path);
          std::string where = " n=" + std::to_string(n) + " M=" + std::to_string(total);
          if (ctx.perturb) {
            v.equal(chk.bracket, chk.jordan_form.times_hbar(1), "bracket = hbar^n {...} (perturbed prefactor)" + where);
          } else {
            v.equal(chk.bracket, chk.jordan_form, "bracket = hbar^(n-1) {[f,N], N_p1p2, ...}" + where);
          }
          v.equal(chk.jordan_form, chk.commutator_form, "Jordan form = commutator form" + where);
          if (!chk.bracket.is_zero()) ++path_nonzero;
          ++checked;
        }
      }
      // Small truncations can kill the bracket for some orderings; the path
      // as a whole must still be exercised.
      v.require(path_nonzero > 0, "bracket is nonzero for some M, n=" + std::to_string(n));
      nonzero += path_nonzero;
    }
  }
  return v.done(std::to_string(checked) + " random f (" + std::to_string(nonzero) + " with nonzero bracket) over n=2,3 and M=1..3 on the truncated Fock space sum_{m<=M}");
}

CheckOutcome os_02(const CheckContext& ctx) { return oscillator_paths(ctx, "OS-02", {{1, 2}}, {{1, 2, 3}}); }

CheckOutcome os_03(const CheckContext& ctx) {
  return oscillator_paths(ctx, "OS-03", {{1, 2}, {2, 1}}, {{2, 3, 1}, {3, 1, 2}, {1, 3, 2}});
}

CheckOutcome os_04(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("OS-04");
  FockBasis basis = FockBasis::up_to(2, 2);
  const int dim = basis.size();
  MatrixAlgebra alg{dim};
  ExactMatrix n1 = number_matrix(basis, 1, 1), n12 = number_matrix(basis, 1, 2), n2 = number_matrix(basis, 2, 2);
  auto bracket = [&](const ExactMatrix& f) {
    std::vector<ExactMatrix> e{f, n1, n12, n2};
    return qnb<MatrixAlgebra>(e, alg).value;
  };
  bool found = false;
  for (int d = 0; d < 10 && !found; ++d) {
    ExactMatrix f = random_matrix(dim, rng), g = random_matrix(dim, rng);
    found = !(bracket(f * g) == f * bracket(g) + bracket(f) * g);
  }
  v.require(found, "found f, g violating the trivial Leibniz rule");
  return v.done("[fg,N1,N12,N2] != f[g,...] + [f,...]g for random f, g on n=2, M<=2");
}

// ---------------------------------------------------------------------------
// star product

CheckOutcome st_01(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("ST-01");
  RandomExprOptions o = wigner_options();
  o.use_hbar = true;
  for (int t = 0; t < 50; ++t) {
    int n = 1 + t % 3;
    PhaseExpr f = random_expr(n, rng, o), g = random_expr(n, rng, o), h = random_expr(n, rng, o);
    if (t % 5 == 0) h = h * (constant(n, real(1)) + PhaseExpr::radical_s(n)).inverse();
    v.equal(star(star(f, g), h), star(f, star(g, h)), "(f*g)*h = f*(g*h), N=" + std::to_string(n));
  }
  return v.done("associativity on 50 random triples with radical coefficients, N=1..3");
}

CheckOutcome st_02(const CheckContext& ctx) {
  Verdict v;
  auto rng = ctx.rng("ST-02");
  RandomExprOptions o = wigner_options();
  for (int t = 0; t < 20; ++t) {
    int n = 1 + t % 3;
    PhaseExpr f = random_expr(n, rng, o), g = random_expr(n, rng, o);
    v.equal(star(f, g).substitute_hbar_zero(), f * g, "star -> product at hbar=0");
    v.equal(moyal(f, g).substitute_hbar_zero(), poisson(f, g), "MB -> PB at hbar=0");
  }
  return v.done("classical limits on 20 random pairs");
}

std::vector<IdentityCheck> build_catalog() {
  auto e = [](std::string id, std::string suite, std::string desc, std::string where, auto fn, bool neg = false) {
    return IdentityCheck{std::move(id), std::move(suite), std::move(desc), std::move(where), neg, fn};
  };
  return {
      e("S2-01", "s2", "so(3) Poisson closure of Lx, Ly, Lz", "S^2: Poisson algebra of the three charges", s2_01, true),
      e("S2-02", "s2", "Moyal brackets equal Poisson brackets on the charges", "S^2: Moyal algebra of the charges", s2_02),
      e("S2-03", "s2", "Hqm = H + hbar^2/8 (1/(1-x^2-y^2) - 3)", "S^2: quantum correction to the Hamiltonian", s2_03, true),
      e("S2-04", "s2", "mb(L,Hqm) = 0 while mb(L,H) != 0", "S^2: symmetry of the quantum Hamiltonian", s2_04),
      e("S2-05", "s2", "Lz*L+ - L+*Lz = hbar L+", "S^2: ladder relations", s2_05),
      e("S2-06", "s2", "sum L*L = L+*L- + Lz*Lz - hbar Lz", "S^2: Casimir through ladder operators", s2_06),
      e("S2-07", "s2", "mb(x,Hqm) = pb(x,H); mb(px,Hqm) != pb(px,H)", "S^2: quantum equations of motion", s2_07),
      e("SN-01", "sn", "so(N+1) closure of P_a, L_ab", "S^N: charges P_a and L_ab", sn_01),
      e("SN-02", "sn", "Hqm - H = hbar^2/8 (1/(1-q^2) - 1 - N(N-1))", "S^N: quantum correction", sn_02),
      e("SN-03", "sn", "metric and Vielbein identities", "S^N: Vielbeine and metric", sn_03),
      e("SN-04", "sn", "H = 1/2 (pV)(Vp)", "S^N: Hamiltonian through Vielbeine", sn_04),
      e("SN-05", "sn", "Vielbein currents close on omega^{a[jk]} p_a", "S^N: current algebra", sn_05),
      e("SN-06", "sn", "Hqm - Hother = hbar^2/8 (N-1)(1-2w-N)", "S^N: Hother versus Hqm", sn_06),
      e("SN-07", "sn", "mb(Hother,P_c) = hbar^2 q^c (N-1)(2w-1)/(4q^2)", "S^N: de Sitter momenta under Hother", sn_07),
      e("SN-08", "sn", "star-similarity identities", "S^N: similarity transformation by powers of w", sn_08),
      e("CH-01", "chiral", "su(2)+su(2) closure of R and L", "chiral S^3: Poisson algebra of R, L", ch_01),
      e("CH-02", "chiral", "axial and isospin decomposition", "chiral S^3: A and I charges", ch_02),
      e("CH-03", "chiral", "four-way Hqm equality", "chiral S^3: geometric form of Hqm", ch_03),
      e("CH-04", "chiral", "Hqm - H = hbar^2/8 (1/(1-q^2) - 7)", "chiral S^3: quantum correction", ch_04),
      e("CH-05", "chiral", "gnomonic Hqm - H = 3/4 hbar^2 (Q^2 - 1)", "S^3 in gnomonic coordinates", ch_05),
      e("CH-06", "chiral", "Christoffel form of the correction", "chiral models: correction from the connection", ch_06),
      e("NB-01", "nb", "S^2 Nambu evolution equals Poisson evolution", "classical NB: S^2 Jacobian", nb_01),
      e("NB-02", "nb", "{H,Lx,Ly,Lz}_NB = 0", "classical NB: dependent entries", nb_02),
      e("NB-03", "nb", "S^N Jacobian with P-prefactor", "classical NB: S^N invariants P_a, L_a,a+1", nb_03),
      e("NB-04", "nb", "NB Leibniz rule", "classical NB: chain rule", nb_04),
      e("NB-05", "nb", "fundamental identity with prefactor V", "classical NB: fundamental identity", nb_05),
      e("NB-06", "nb", "symplectic trace reductions", "classical NB: symplectic traces", nb_06),
      e("NB-07", "nb", "Hamilton's equations via traced NB", "classical NB: traced Hamilton equations", nb_07),
      e("QN-01", "qnb", "4-bracket commutator resolution", "QNB: resolution into commutators", qn_01),
      e("QN-02", "qnb", "[A,Lx,Ly,Lz] = i hbar [A, L.*L]", "QNB: S^2 4-bracket", qn_02),
      e("QN-03", "qnb", "effective fundamental identity", "QNB: S^2 product rule", qn_03),
      e("QN-04", "qnb", "1/(2(i hbar)^2)[Lx,Ly,Lz,f] = mb(Hqm,f)", "QNB: Wigner-function evolution", qn_04),
      e("QN-05", "qnb", "dx/dt, dp/dt from 4-brackets", "QNB: equations of motion", qn_05),
      e("QN-06", "qnb", "trilinear invariant reduces to the Casimir", "QNB: Lie algebra 4-brackets", qn_06),
      e("QN-07", "qnb", "[f_ab,Px,Lz,Py,Lx,Pz] = 4 i hbar^5 sum (eps_b2c f_ac - eps_a2c f_cb)", "QNB: S^3 6-bracket of f_ab",
        qn_07, true),
      e("QN-08", "qnb", "chiral 6-bracket with F(I_L,I_R)", "QNB: chiral 6-bracket", qn_08),
      e("QN-09", "qnb", "Jordan 3-product expansion", "QNB: Jordan product with Lz, Rz", qn_09),
      e("QN-10", "qnb", "sigma12 eigenvalues on elementary units", "QNB: dynamical time scales", qn_10),
      e("QN-11", "qnb", "Leibniz fails unless sigma12 = sigma23 = sigma13", "QNB: Leibniz condition", qn_11),
      e("QN-12", "qnb", "exact 6-bracket resolutions", "QNB: chiral 6-brackets with three L", qn_12),
      e("QN-13", "qnb", "f_ab rotations 2 i hbar^3 and totals -i hbar^5", "QNB: quantum connection terms for f_ab", qn_13),
      e("OS-01", "oscillator", "u(n) closure of N_ij", "oscillator: number operators", os_01),
      e("OS-02", "oscillator", "oscillator 2n-bracket theorem", "oscillator: 2n-bracket reduction", os_02, true),
      e("OS-03", "oscillator", "permuted Hamiltonian paths", "oscillator: other orderings of the invariants", os_03),
      e("OS-04", "oscillator", "Leibniz-failure witness", "oscillator: Leibniz failure", os_04),
      e("ST-01", "star", "star associativity", "star product: associativity", st_01),
      e("ST-02", "star", "hbar -> 0 limits", "star product: classical limit", st_02),
  };
}

std::int64_t since_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Error:
      return "error";
  }
  return "error";
}

std::mt19937_64 CheckContext::rng(const std::string& tag) const { return seeded_rng(seed, tag); }

const std::vector<IdentityCheck>& catalog() {
  static const std::vector<IdentityCheck> entries = build_catalog();
  return entries;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"s2", "sn", "chiral", "nb", "qnb", "oscillator", "star"};
  return names;
}

namespace {

// Matches one pattern element at pattern[p] against c; returns the length of
// the element or 0 on mismatch.
std::size_t match_one(const std::string& pattern, std::size_t p, char c) {
  if (pattern[p] == '?') return 1;
  if (pattern[p] != '[') return pattern[p] == c ? 1 : 0;
  std::size_t close = pattern.find(']', p + 2);
  if (close == std::string::npos) return pattern[p] == c ? 1 : 0;
  bool negate = pattern[p + 1] == '!';
  bool hit = false;
  for (std::size_t i = p + 1 + (negate ? 1 : 0); i < close; ++i) {
    if (i + 2 < close && pattern[i + 1] == '-') {
      hit = hit || (pattern[i] <= c && c <= pattern[i + 2]);
      i += 2;
    } else {
      hit = hit || pattern[i] == c;
    }
  }
  return hit != negate ? close - p + 1 : 0;
}

}  // namespace

bool glob_match(const std::string& pattern, const std::string& text) {
  std::size_t p = 0, t = 0, star_p = std::string::npos, star_t = 0;
  while (t < text.size()) {
    std::size_t len = p < pattern.size() && pattern[p] != '*' ? match_one(pattern, p, text[t]) : 0;
    if (len > 0) {
      p += len;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star_p = p++;
      star_t = t;
    } else if (star_p != std::string::npos) {
      p = star_p + 1;
      t = ++star_t;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

ResultRow run_check(const IdentityCheck& check, const CheckContext& ctx) {
  ResultRow row;
  row.id = check.id;
  row.locator = check.locator;
  auto t0 = std::chrono::steady_clock::now();
  try {
    CheckOutcome out = check.run(ctx);
    row.status = out.status;
    row.detail = out.detail;
  } catch (const std::exception& e) {
    row.status = Status::Error;
    row.detail = e.what();
  }
  row.elapsed_ms = since_ms(t0);
  return row;
}

Report run_suite(const RunOptions& opts) {
  std::vector<const IdentityCheck*> chosen;
  for (const auto& c : catalog()) {
    bool match = !opts.id_glob.empty() ? glob_match(opts.id_glob, c.id) : (opts.suite == "all" || opts.suite == c.suite);
    if (match) chosen.push_back(&c);
  }
  if (chosen.empty()) {
    throw UsageError(!opts.id_glob.empty() ? "no catalog entry matches " + opts.id_glob : "unknown suite " + opts.suite);
  }
  CheckContext ctx;
  ctx.seed = opts.seed;
  ctx.n = opts.n;
  ctx.perturb = opts.perturb;

  Report report;
  report.suite = !opts.id_glob.empty() ? opts.id_glob : opts.suite;
  report.seed = opts.seed;
  report.results.resize(chosen.size());
  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(chosen.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < chosen.size(); ++i) report.results[i] = run_check(*chosen[i], ctx);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < chosen.size(); i = next++) report.results[i] = run_check(*chosen[i], ctx);
      });
    }
    for (auto& t : workers) t.join();
  }
  for (const auto& r : report.results) {
    if (r.status == Status::Pass) ++report.pass;
    if (r.status == Status::Fail) ++report.fail;
    if (r.status == Status::Error) ++report.error;
  }
  return report;
}

std::string Report::to_json(bool timing) const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json row;
    row["id"] = r.id;
    row["paper_ref"] = r.locator;
    row["status"] = status_name(r.status);
    row["detail"] = r.detail;
    row["elapsed_ms"] = timing ? r.elapsed_ms : 0;
    j["results"].push_back(row);
  }
  j["summary"] = {{"pass", pass}, {"fail", fail}, {"error", error}};
  return j.dump(2) + "\n";
}

std::string Report::to_text(bool timing) const {
  std::ostringstream out;
  for (const auto& r : results) {
    std::string tag = r.status == Status::Pass ? "PASS " : r.status == Status::Fail ? "FAIL " : "ERROR";
    out << tag << " " << r.id;
    if (timing) out << " (" << r.elapsed_ms << " ms)";
    out << "  " << r.detail << "\n";
  }
  out << "suite " << suite << ", seed " << seed << ": " << pass << " pass, " << fail << " fail, " << error << " error\n";
  return out.str();
}

}  // namespace nambu
