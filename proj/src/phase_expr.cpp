#include "nambu/phase_expr.hpp"

#include <algorithm>
#include <map>

#include "nambu/error.hpp"

namespace nambu {

void EvalPoint::validate() const {
  if (x.size() != p.size()) throw DomainError("evaluation point has mismatched coordinate and momentum counts");
  Rational rhs(1);
  for (const auto& v : x) rhs -= v * v;
  if (!(s * s == rhs)) throw DomainError("evaluation point violates s^2 = 1 - sum x^2");
}

std::vector<std::string> phase_var_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) names.push_back("p" + std::to_string(i));
  names.emplace_back("hbar");
  return names;
}

PhaseExpr::PhaseExpr(int n) : n_(n), f_(n, 2 * n + 1) {
  if (n < 1 || 2 * n + 1 > mono::kMaxVars) throw DimensionError("dimension must lie in 1..7");
}

PhaseExpr PhaseExpr::constant(int n, GaussScalar c) {
  PhaseExpr e(n);
  e.f_ = RadicalFraction::constant(n, e.nvars(), std::move(c));
  return e;
}

int PhaseExpr::var_index(Var v) const {
  switch (v.kind) {
    case Var::Kind::Coord:
    case Var::Kind::Momentum:
      if (v.index < 0 || v.index >= n_) throw DimensionError("variable index out of range");
      return v.kind == Var::Kind::Coord ? v.index : n_ + v.index;
    case Var::Kind::Hbar:
      return 2 * n_;
  }
  return 0;
}

PhaseExpr PhaseExpr::variable(int n, Var v) {
  PhaseExpr e(n);
  e.f_ = RadicalFraction::from_poly(n, Poly::variable(e.nvars(), e.var_index(v)));
  return e;
}

PhaseExpr PhaseExpr::radical_s(int n) {
  PhaseExpr e(n);
  e.f_ = RadicalFraction::radical_s(n, e.nvars());
  return e;
}

PhaseExpr PhaseExpr::from_fraction(int n, RadicalFraction f) {
  PhaseExpr e(n);
  if (f.coords() != n || f.nvars() != e.nvars()) throw DimensionError("fraction layout does not match dimension");
  e.f_ = std::move(f);
  return e;
}

PhaseExpr PhaseExpr::normalize(int n, std::span<const RawTerm> raw) {
  PhaseExpr e(n);
  int nv = e.nvars();
  std::vector<RadicalFraction> parts;
  RadicalFraction s = RadicalFraction::radical_s(n, nv);
  for (const auto& t : raw) {
    RadicalFraction term = RadicalFraction::from_poly(n, t.num);
    if (t.s_power > 0) term = term * s.pow(t.s_power);
    if (t.den_a.nvars() != 0 || t.den_b.nvars() != 0) {
      Poly da = t.den_a.nvars() == nv ? t.den_a : Poly(nv);
      Poly db = t.den_b.nvars() == nv ? t.den_b : Poly(nv);
      RadicalFraction den = RadicalFraction::from_poly(n, da) + RadicalFraction::from_poly(n, db) * s;
      if (den.is_zero()) throw DivisionByZero("raw term with zero denominator");
      term = term * den.inverse();
    }
    parts.push_back(std::move(term));
  }
  e.f_ = RadicalFraction::sum(n, nv, parts);
  return e;
}

void PhaseExpr::check_dim(const PhaseExpr& other) const {
  if (n_ != other.n_) throw DimensionError("phase-space dimensions differ");
}

PhaseExpr PhaseExpr::operator-() const {
  PhaseExpr r = *this;
  r.f_ = -f_;
  return r;
}

PhaseExpr operator+(const PhaseExpr& a, const PhaseExpr& b) {
  a.check_dim(b);
  PhaseExpr r = a;
  r.f_ = a.f_ + b.f_;
  return r;
}

PhaseExpr operator-(const PhaseExpr& a, const PhaseExpr& b) {
  a.check_dim(b);
  PhaseExpr r = a;
  r.f_ = a.f_ - b.f_;
  return r;
}

PhaseExpr operator*(const PhaseExpr& a, const PhaseExpr& b) {
  a.check_dim(b);
  PhaseExpr r = a;
  r.f_ = a.f_ * b.f_;
  return r;
}

PhaseExpr PhaseExpr::scaled(const GaussScalar& c) const {
  PhaseExpr r = *this;
  r.f_ = f_.scaled(c);
  return r;
}

PhaseExpr PhaseExpr::times_hbar(int k, const GaussScalar& c) const {
  PhaseExpr r = *this;
  r.f_ = f_.times_monomial(k == 0 ? Mono(0) : mono::var(2 * n_, k), c);
  return r;
}

PhaseExpr PhaseExpr::sum(int n, std::span<const PhaseExpr> parts) {
  PhaseExpr r(n);
  std::vector<RadicalFraction> fs;
  fs.reserve(parts.size());
  for (const auto& p : parts) {
    r.check_dim(p);
    fs.push_back(p.f_);
  }
  r.f_ = RadicalFraction::sum(n, r.nvars(), fs);
  return r;
}

PhaseExpr PhaseExpr::inverse() const {
  PhaseExpr r = *this;
  r.f_ = f_.inverse();
  return r;
}

PhaseExpr PhaseExpr::pow(int e) const {
  PhaseExpr r = *this;
  r.f_ = f_.pow(e);
  return r;
}

PhaseExpr PhaseExpr::differentiate(Var v) const { return derivative(var_index(v)); }

PhaseExpr PhaseExpr::derivative(int var) const {
  PhaseExpr r = *this;
  r.f_ = f_.derivative(var);
  return r;
}

PhaseExpr PhaseExpr::divide_exact_hbar(int k) const {
  if (k < 0) throw DomainError("negative hbar power");
  if (k == 0) return *this;
  int h = 2 * n_;
  GaussScalar factor(1);
  for (int j = 0; j < k; ++j) factor *= -GaussScalar::i();  // 1/i = -i
  Mono shift = mono::var(h, k);
  auto fn = [&](const Poly& p) {
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
      if (mono::exponent(t.mono, h) < k) {
        throw InexactDivision("expression is not divisible by hbar^" + std::to_string(k));
      }
      out.push_back({t.mono - shift, t.coeff * factor});
    }
    return Poly::from_terms(p.nvars(), std::move(out));
  };
  PhaseExpr r = *this;
  r.f_ = f_.map_numerators(fn);
  return r;
}

PhaseExpr PhaseExpr::substitute_hbar_zero() const {
  int h = 2 * n_;
  PhaseExpr r = *this;
  r.f_ = f_.map_numerators([h](const Poly& p) { return p.without_var(h); });
  return r;
}

int PhaseExpr::momentum_degree() const {
  return std::max(f_.a().degree_in_range(n_, 2 * n_), f_.b().degree_in_range(n_, 2 * n_));
}

int PhaseExpr::momentum_degree(int i) const {
  return std::max(f_.a().degree_in(n_ + i), f_.b().degree_in(n_ + i));
}

int PhaseExpr::hbar_degree() const { return std::max(f_.a().degree_in(2 * n_), f_.b().degree_in(2 * n_)); }

bool PhaseExpr::depends_on_momenta() const {
  return f_.a().depends_on_range(n_, 2 * n_) || f_.b().depends_on_range(n_, 2 * n_);
}

GaussScalar PhaseExpr::evaluate(const EvalPoint& pt, const Rational& hbar_value) const {
  pt.validate();
  if (static_cast<int>(pt.x.size()) != n_) throw DimensionError("evaluation point has the wrong dimension");
  std::vector<GaussScalar> values;
  values.reserve(static_cast<std::size_t>(nvars()));
  for (const auto& v : pt.x) values.emplace_back(v);
  for (const auto& v : pt.p) values.emplace_back(v);
  values.emplace_back(hbar_value);
  return f_.evaluate(values, GaussScalar(pt.s));
}

std::vector<MomentumTerm> PhaseExpr::terms() const {
  const int nv = nvars();
  const int cv = n_ + 1;
  Mono pmask = mono::var_mask(n_, 2 * n_);
  std::vector<int> to(static_cast<std::size_t>(nv), -1);
  for (int i = 0; i < n_; ++i) to[static_cast<std::size_t>(i)] = i;
  to[static_cast<std::size_t>(2 * n_)] = n_;

  struct Parts {
    std::vector<Term> a;
    std::vector<Term> b;
  };
  std::map<Mono, Parts> groups;
  for (const auto& t : f_.a().terms()) {
    Mono pm = mono::project(t.mono, pmask);
    groups[pm].a.push_back({mono::remap(t.mono - pm, to), t.coeff});
  }
  for (const auto& t : f_.b().terms()) {
    Mono pm = mono::project(t.mono, pmask);
    groups[pm].b.push_back({mono::remap(t.mono - pm, to), t.coeff});
  }
  Denominator d = f_.denominator().remapped(cv, to);
  std::vector<MomentumTerm> out;
  for (auto& [pm, parts] : groups) {
    MomentumTerm term;
    for (int i = 0; i < n_; ++i) term.exponents.push_back(mono::exponent(pm, n_ + i));
    term.coeff = RadicalCoeff::make(n_, Poly::from_terms(cv, std::move(parts.a)), Poly::from_terms(cv, std::move(parts.b)), d);
    out.push_back(std::move(term));
  }
  std::sort(out.begin(), out.end(), [](const MomentumTerm& x, const MomentumTerm& y) {
    int dx = 0;
    int dy = 0;
    for (int e : x.exponents) dx += e;
    for (int e : y.exponents) dy += e;
    if (dx != dy) return dx > dy;
    return x.exponents > y.exponents;
  });
  return out;
}

namespace {

std::string product_body(const GaussScalar& c, const std::string& monomial) {
  if (monomial.empty()) return scalar_factor_text(c);
  if (c.is_one()) return monomial;
  return scalar_factor_text(c) + "*" + monomial;
}

std::string denominator_text(const Denominator& d, std::span<const std::string> names) {
  auto factors = d.factors();
  if (factors.size() == 1 && factors[0].exponent == 1) {
    std::string base = factors[0].base.to_string(names);
    return factors[0].base.size() == 1 ? base : "(" + base + ")";
  }
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += "*";
    std::string base = f.base.to_string(names);
    bool single = f.base.size() == 1;
    out += single ? base : "(" + base + ")";
    if (f.exponent > 1) out += "^" + std::to_string(f.exponent);
  }
  return "(" + out + ")";
}

std::string join_factors(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

}  // namespace

std::string PhaseExpr::to_string() const {
  if (is_zero()) return "0";
  const int cv = n_ + 1;
  std::vector<std::string> names;
  for (int i = 1; i <= n_; ++i) names.push_back("x" + std::to_string(i));
  names.emplace_back("hbar");
  names.emplace_back("s");
  std::string out;
  for (const auto& term : terms()) {
    std::string pm;
    for (int i = 0; i < n_; ++i) {
      int e = term.exponents[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      if (!pm.empty()) pm += "*";
      pm += "p" + std::to_string(i + 1);
      if (e > 1) pm += "^" + std::to_string(e);
    }
    // Numerator A + B*s as a polynomial with s as an extra variable.
    std::vector<Term> num(term.coeff.a().terms().begin(), term.coeff.a().terms().end());
    for (const auto& t : term.coeff.b().terms()) num.push_back({t.mono + mono::var(cv), t.coeff});
    Poly numerator = Poly::from_terms(cv + 1, std::move(num));
    bool negative = false;
    std::string body;
    if (numerator.size() == 1) {
      const Term& t = numerator.terms()[0];
      negative = reads_negative(t.coeff);
      GaussScalar c = negative ? -t.coeff : t.coeff;
      std::string mon = monomial_to_string(t.mono, cv + 1, names);
      if (term.coeff.denominator().is_one()) {
        body = product_body(c, join_factors(mon, pm));
      } else {
        body = product_body(c, mon);
      }
    } else {
      bool bare = term.coeff.denominator().is_one() && pm.empty();
      body = bare ? numerator.to_string(names) : "(" + numerator.to_string(names) + ")";
      negative = bare && body[0] == '-';
      if (negative) body.erase(0, 1);
      if (term.coeff.denominator().is_one() && !pm.empty()) body += "*" + pm;
    }
    if (!term.coeff.denominator().is_one()) {
      body += "/" + denominator_text(term.coeff.denominator(), names);
      if (!pm.empty()) body += "*" + pm;
    }
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

bool operator==(const PhaseExpr& a, const PhaseExpr& b) {
  a.check_dim(b);
  return (a.f_ - b.f_).is_zero();
}

bool equals(const PhaseExpr& a, const PhaseExpr& b) { return a == b; }

}  // namespace nambu
