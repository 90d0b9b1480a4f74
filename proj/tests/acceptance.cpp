// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nambu/algebra.hpp"
#include "nambu/brackets.hpp"
#include "nambu/catalog.hpp"
#include "nambu/expr.hpp"
#include "nambu/models.hpp"
#include "nambu/operators.hpp"
#include "nambu/random.hpp"

namespace {

using namespace nambu;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

PhaseExpr C(int n, long long a, long long b = 1) { return PhaseExpr::constant(n, GaussScalar(Rational(a, b))); }

PhaseExpr q2(int n) {
  PhaseExpr r(n);
  for (int a = 0; a < n; ++a) r += PhaseExpr::x(n, a) * PhaseExpr::x(n, a);
  return r;
}

PhaseExpr hbar2(int n, long long num, long long den) {
  return PhaseExpr::hbar(n).pow(2).scaled(GaussScalar(Rational(num, den)));
}

// hbar^2/8 (1/(1-q^2) - c)
PhaseExpr pole_correction(int n, long long c) { return hbar2(n, 1, 8) * ((C(n, 1) - q2(n)).inverse() - C(n, c)); }

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

class Acceptance {
 public:
  Acceptance() {
    RunOptions opts;
    opts.suite = "all";
    auto t0 = Clock::now();
    report_ = run_suite(opts);
    suite_seconds_ = seconds_since(t0);
    for (const auto& row : report_.results) rows_[row.id] = row;
  }

  int run() {
    int failed = 0;
    const std::vector<std::pair<std::string, std::function<Criterion()>>> criteria{
        {"catalog all-pass within time limits", [&] { return c1(); }},
        {"S^2 quantum correction", [&] { return c2(); }},
        {"S^N, chiral and gnomonic corrections", [&] { return c3(); }},
        {"H_qm - H_other and mb(H_other, P_c)", [&] { return c4(); }},
        {"6-bracket coefficients and classical limit", [&] { return c5(); }},
        {"oscillator theorem", [&] { return c6(); }},
        {"sigma12 on elementary units", [&] { return c7(); }},
        {"property suites and negative controls", [&] { return c8(); }},
    };
    int k = 0;
    for (const auto& [name, fn] : criteria) {
      ++k;
      auto t0 = Clock::now();
      Criterion c;
      try {
        c = fn();
      } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
      }
      std::printf("criterion %d: %s  %s (%.1f s)\n", k, c.ok ? "PASS" : "FAIL", name.c_str(), seconds_since(t0));
      for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
      std::fflush(stdout);
      if (!c.ok) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
  }

 private:
  bool passed(const std::string& id) const {
    auto it = rows_.find(id);
    return it != rows_.end() && it->second.status == Status::Pass;
  }

  void require_entries(Criterion& c, std::initializer_list<const char*> ids) const {
    for (const char* id : ids) c.expect(passed(id), std::string("catalog entry ") + id + " passes");
  }

  Criterion c1() const {
    Criterion c;
    c.expect(report_.all_pass(), "every catalog entry passes");
    c.expect(report_.results.size() == 47, "catalog has 47 entries");
    c.expect(suite_seconds_ < 600.0, "full suite under 10 minutes");
    char buf[128];
    std::snprintf(buf, sizeof buf, "full suite %.1f s, %d pass / %d fail / %d error", suite_seconds_, report_.pass,
                  report_.fail, report_.error);
    c.note(buf);
    for (const char* id : {"QN-07", "QN-08", "QN-12", "QN-13"}) {
      auto it = rows_.find(id);
      if (it == rows_.end()) {
        c.expect(false, std::string(id) + " present");
        continue;
      }
      c.expect(it->second.elapsed_ms < 90000, std::string(id) + " under 90 s");
      std::snprintf(buf, sizeof buf, "%s %.1f s", id, it->second.elapsed_ms / 1000.0);
      c.note(buf);
    }
    return c;
  }

  Criterion c2() const {
    Criterion c;
    Model m = build_sphere(2);
    c.expect(m.h_quantum - m.h_classical == pole_correction(2, 3), "H_qm - H = hbar^2/8 (1/(1-x^2-y^2) - 3)");
    require_entries(c, {"S2-03"});
    return c;
  }

  Criterion c3() const {
    Criterion c;
    for (int n : {2, 3, 4}) {
      Model m = build_sphere(n);
      c.expect(m.h_quantum - m.h_classical == pole_correction(n, 1 + n * (n - 1)),
               "S^N correction N=" + std::to_string(n));
    }
    Model chiral = build_chiral_s3();
    c.expect(chiral.h_quantum - chiral.h_classical == pole_correction(3, 7), "chiral S^3 correction");
    Model gnomonic = build_gnomonic_s3();
    c.expect(gnomonic.h_quantum - gnomonic.h_classical == hbar2(3, 3, 4) * (q2(3) - C(3, 1)), "gnomonic correction");
    require_entries(c, {"SN-02", "CH-04", "CH-05"});
    return c;
  }

  Criterion c4() const {
    Criterion c;
    for (int n : {2, 3}) {
      Model m = build_sphere(n);
      PhaseExpr ho = h_other(m);
      const PhaseExpr& w = *m.geometry->w;
      PhaseExpr diff = hbar2(n, n - 1, 8) * (C(n, 1 - n) - w.scaled(GaussScalar(2)));
      c.expect(m.h_quantum - ho == diff, "H_qm - H_other, N=" + std::to_string(n));
      for (int a = 1; a <= n; ++a) {
        PhaseExpr expected =
            hbar2(n, n - 1, 4) * PhaseExpr::x(n, a - 1) * (w.scaled(GaussScalar(2)) - C(n, 1)) * q2(n).inverse();
        c.expect(moyal(ho, m.charge(charge_key("P", {a}))) == expected,
                 "mb(H_other, P_" + std::to_string(a) + "), N=" + std::to_string(n));
      }
    }
    require_entries(c, {"SN-06", "SN-07"});
    return c;
  }

  Criterion c5() const {
    Criterion c;
    require_entries(c, {"QN-07", "QN-13"});
    // QN-07 with the 4 i hbar^5 coefficient altered must fail.
    for (const auto& entry : catalog()) {
      if (entry.id != "QN-07") continue;
      CheckContext ctx;
      ctx.perturb = true;
      c.expect(run_check(entry, ctx).status == Status::Fail, "QN-07 fails with the coefficient perturbed");
    }
    auto it = rows_.find("QN-07");
    if (it != rows_.end()) c.note(it->second.detail.substr(0, 160));
    return c;
  }

  Criterion c6() const {
    Criterion c;
    auto t0 = Clock::now();
    require_entries(c, {"OS-02", "OS-03"});
    auto rng = seeded_rng(1, "acceptance-oscillator");
    int checked = 0;
    for (int n : {2, 3}) {
      std::vector<std::vector<int>> paths =
          n == 2 ? std::vector<std::vector<int>>{{1, 2}, {2, 1}} : std::vector<std::vector<int>>{{1, 2, 3}, {2, 3, 1}};
      for (const auto& path : paths) {
        int nonzero = 0;
        for (int total = 1; total <= 3; ++total) {
          FockBasis basis = FockBasis::up_to(n, total);
          for (int d = 0; d < 5; ++d) {
            ExactMatrix f = random_matrix(basis.size(), rng);
            OscillatorCheck chk = oscillator_theorem_check(basis, f, path);
            std::string where = "n=" + std::to_string(n) + " M=" + std::to_string(total);
            c.expect(chk.bracket == chk.jordan_form, "bracket = hbar^(n-1) Jordan form, " + where);
            c.expect(chk.jordan_form == chk.commutator_form, "Jordan form = commutator form, " + where);
            if (!chk.bracket.is_zero()) {
              ++nonzero;
              // A wrong power of hbar would not match.
              c.expect(!(chk.bracket == chk.jordan_form.times_hbar(1)), "prefactor power is exact, " + where);
            }
            ++checked;
          }
        }
        c.expect(nonzero > 0, "some bracket is nonzero for n=" + std::to_string(n));
      }
    }
    double secs = seconds_since(t0);
    c.expect(secs < 30.0, "oscillator checks under 30 s");
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d sector matrices over n=2,3, M=1..3, 2 paths each, %.2f s", checked, secs);
    c.note(buf);
    return c;
  }

  Criterion c7() const {
    Criterion c;
    require_entries(c, {"QN-10"});
    auto it = rows_.find("QN-10");
    if (it != rows_.end()) c.note(it->second.detail);
    return c;
  }

  Criterion c8() const {
    Criterion c;
    require_entries(c, {"ST-01", "NB-04", "NB-05"});

    auto rng = seeded_rng(1, "acceptance-dp");
    MatrixAlgebra alg{3};
    for (int k = 1; k <= 5; ++k) {
      for (int t = 0; t < 5; ++t) {
        std::vector<ExactMatrix> e;
        for (int i = 0; i < k; ++i) e.push_back(random_matrix(3, rng));
        c.expect(qnb<MatrixAlgebra>(e, alg).value == qnb<MatrixAlgebra>(e, alg, Expansion::Naive).value,
                 "qnb DP = naive, k=" + std::to_string(k));
        c.expect(jordan<MatrixAlgebra>(e, alg).value == jordan<MatrixAlgebra>(e, alg, Expansion::Naive).value,
                 "jordan DP = naive, k=" + std::to_string(k));
      }
    }

    RandomExprOptions o;
    o.max_terms = 3;
    auto nb_rng = seeded_rng(1, "acceptance-nb");
    for (int n : {1, 2}) {
      for (int t = 0; t < 5; ++t) {
        std::vector<PhaseExpr> f;
        for (int i = 0; i < 2 * n; ++i) f.push_back(random_expr(n, nb_rng, o));
        std::vector<PhaseExpr> swapped = f;
        std::swap(swapped[0], swapped[1]);
        c.expect(nambu_jacobian(swapped) == -nambu_jacobian(f), "NB antisymmetry, N=" + std::to_string(n));
        swapped[1] = swapped[0];
        c.expect(nambu_jacobian(swapped).is_zero(), "NB with repeated entry vanishes, N=" + std::to_string(n));
      }
    }

    auto rt_rng = seeded_rng(1, "acceptance-roundtrip");
    RandomExprOptions ro;
    ro.use_radical = true;
    ro.use_hbar = true;
    for (int t = 0; t < 100; ++t) {
      const int n = 1 + t % 3;
      PhaseExpr e = random_expr(n, rt_rng, ro);
      if (t % 3 == 0) e = e * (C(n, 2) + PhaseExpr::radical_s(n)).inverse();
      Binding b(n);
      c.expect(evaluate_text(print_canonical(e), b) == e, "round-trip of " + print_canonical(e));
    }

    int controls = 0;
    for (const auto& entry : catalog()) {
      if (!entry.has_negative_control) continue;
      CheckContext ctx;
      ctx.perturb = true;
      c.expect(run_check(entry, ctx).status == Status::Fail, entry.id + " fails when perturbed");
      ++controls;
    }
    c.expect(controls >= 3, "at least 3 negative controls");
    c.note(std::to_string(controls) + " negative controls, 50 associativity triples (ST-01), 100 round-trips");
    return c;
  }

  Report report_;
  double suite_seconds_ = 0;
  std::map<std::string, ResultRow> rows_;
};

}  // namespace

int main() {
  Acceptance a;
  return a.run();
}
