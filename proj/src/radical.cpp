#include "nambu/radical.hpp"

#include <algorithm>

#include "nambu/error.hpp"

namespace nambu {

void Denominator::multiply(const Poly& base, int e) {
  if (e == 0) return;
  auto it = std::lower_bound(factors_.begin(), factors_.end(), base,
                             [](const Factor& f, const Poly& b) { return f.base < b; });
  if (it != factors_.end() && it->base == base) {
    it->exponent += e;
    return;
  }
  factors_.insert(it, Factor{base, e});
}

void Denominator::divide_once(std::size_t index) {
  if (--factors_[index].exponent == 0) factors_.erase(factors_.begin() + static_cast<std::ptrdiff_t>(index));
}

namespace {

template <class Combine>
Denominator merge_factors(const Denominator& a, const Denominator& b, Combine combine) {
  Denominator out;
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].base < fb[j].base)) {
      out.multiply(fa[i].base, fa[i].exponent);
      ++i;
    } else if (i == fa.size() || fb[j].base < fa[i].base) {
      out.multiply(fb[j].base, fb[j].exponent);
      ++j;
    } else {
      out.multiply(fa[i].base, combine(fa[i].exponent, fb[j].exponent));
      ++i;
      ++j;
    }
  }
  return out;
}

Poly power(const Poly& base, int e, int nvars) {
  Poly r = Poly::constant(nvars, GaussScalar(1));
  for (int k = 0; k < e; ++k) r = r * base;
  return r;
}

}  // namespace

Denominator lcm(const Denominator& a, const Denominator& b) {
  return merge_factors(a, b, [](int x, int y) { return std::max(x, y); });
}

Denominator operator*(const Denominator& a, const Denominator& b) {
  return merge_factors(a, b, [](int x, int y) { return x + y; });
}

bool operator==(const Denominator& a, const Denominator& b) {
  if (a.factors_.size() != b.factors_.size()) return false;
  for (std::size_t i = 0; i < a.factors_.size(); ++i) {
    if (a.factors_[i].exponent != b.factors_[i].exponent || !(a.factors_[i].base == b.factors_[i].base)) return false;
  }
  return true;
}

Poly Denominator::expand(int nvars) const {
  Poly r = Poly::constant(nvars, GaussScalar(1));
  for (const auto& f : factors_) r = r * power(f.base, f.exponent, nvars);
  return r;
}

Poly Denominator::cofactor(const Denominator& d, int nvars) const {
  Poly r = Poly::constant(nvars, GaussScalar(1));
  auto fd = d.factors();
  for (const auto& f : factors_) {
    int e = f.exponent;
    for (const auto& g : fd) {
      if (g.base == f.base) e -= g.exponent;
    }
    r = r * power(f.base, e, nvars);
  }
  return r;
}

Denominator Denominator::radical() const {
  Denominator r = *this;
  for (auto& f : r.factors_) f.exponent = 1;
  return r;
}

Denominator Denominator::remapped(int nvars, std::span<const int> to) const {
  Denominator r;
  for (const auto& f : factors_) r.multiply(f.base.remapped(nvars, to), f.exponent);
  return r;
}

Poly RadicalFraction::q_squared(int coords, int nvars) {
  std::vector<Term> terms;
  for (int v = 0; v < coords; ++v) terms.push_back({mono::var(v, 2), GaussScalar(1)});
  return Poly::from_terms(nvars, std::move(terms));
}

RadicalFraction RadicalFraction::from_poly(int coords, Poly a) {
  RadicalFraction r(coords, a.nvars());
  r.a_ = std::move(a);
  return r;
}

RadicalFraction RadicalFraction::constant(int coords, int nvars, GaussScalar c) {
  return from_poly(coords, Poly::constant(nvars, std::move(c)));
}

RadicalFraction RadicalFraction::radical_s(int coords, int nvars) {
  RadicalFraction r(coords, nvars);
  r.b_ = Poly::constant(nvars, GaussScalar(1));
  r.radical_ = true;
  return r;
}

RadicalFraction RadicalFraction::make(int coords, Poly a, Poly b, Denominator d) {
  RadicalFraction r(coords, a.nvars());
  r.radical_ = !b.is_zero() || !d.is_one();
  r.a_ = std::move(a);
  r.b_ = std::move(b);
  r.d_ = std::move(d);
  r.normalize();
  return r;
}

void RadicalFraction::check_compatible(const RadicalFraction& other) const {
  if (coords_ != other.coords_ || nvars_ != other.nvars_) throw DimensionError("operands live in different dimensions");
}

void RadicalFraction::normalize() {
  if (is_zero()) {
    d_ = Denominator();
    return;
  }
  for (std::size_t i = d_.factors().size(); i-- > 0;) {
    while (true) {
      const Poly& base = d_.factors()[i].base;
      // Try the smaller numerator first so a failure costs little.
      Poly& first = a_.size() <= b_.size() ? a_ : b_;
      Poly& second = a_.size() <= b_.size() ? b_ : a_;
      auto q1 = first.divide_exact_block(base, coords_);
      if (!q1) break;
      auto q2 = second.divide_exact_block(base, coords_);
      if (!q2) break;
      first = std::move(*q1);
      second = std::move(*q2);
      bool last = d_.factors()[i].exponent == 1;
      d_.divide_once(i);
      if (last) break;
    }
  }
}

RadicalFraction RadicalFraction::operator-() const {
  RadicalFraction r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

RadicalFraction operator+(const RadicalFraction& x, const RadicalFraction& y) {
  x.check_compatible(y);
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  RadicalFraction r(x.coords_, x.nvars_);
  r.radical_ = x.radical_ || y.radical_;
  if (x.d_ == y.d_) {
    r.a_ = x.a_ + y.a_;
    r.b_ = x.b_ + y.b_;
    r.d_ = x.d_;
  } else {
    r.d_ = lcm(x.d_, y.d_);
    Poly cx = r.d_.cofactor(x.d_, x.nvars_);
    Poly cy = r.d_.cofactor(y.d_, x.nvars_);
    r.a_ = x.a_ * cx + y.a_ * cy;
    r.b_ = x.b_ * cx + y.b_ * cy;
  }
  r.normalize();
  return r;
}

RadicalFraction operator-(const RadicalFraction& x, const RadicalFraction& y) { return x + (-y); }

RadicalFraction operator*(const RadicalFraction& x, const RadicalFraction& y) {
  x.check_compatible(y);
  RadicalFraction r(x.coords_, x.nvars_);
  r.radical_ = x.radical_ || y.radical_;
  if (x.is_zero() || y.is_zero()) return r;
  if (x.b_.is_zero() && y.b_.is_zero()) {
    r.a_ = x.a_ * y.a_;
  } else if (y.b_.is_zero()) {
    r.a_ = x.a_ * y.a_;
    r.b_ = x.b_ * y.a_;
  } else if (x.b_.is_zero()) {
    r.a_ = x.a_ * y.a_;
    r.b_ = x.a_ * y.b_;
  } else {
    Poly aa = x.a_ * y.a_;
    Poly bb = x.b_ * y.b_;
    Poly cross = (x.a_ + x.b_) * (y.a_ + y.b_) - aa - bb;
    Poly one_minus_q2 = Poly::constant(x.nvars_, GaussScalar(1)) - RadicalFraction::q_squared(x.coords_, x.nvars_);
    r.a_ = aa + bb * one_minus_q2;
    r.b_ = std::move(cross);
  }
  if (x.d_.is_one()) {
    r.d_ = y.d_;
  } else if (y.d_.is_one()) {
    r.d_ = x.d_;
  } else {
    r.d_ = x.d_ * y.d_;
  }
  if (!r.d_.is_one()) r.normalize();
  return r;
}

RadicalFraction RadicalFraction::scaled(const GaussScalar& c) const {
  if (c.is_zero()) return RadicalFraction(coords_, nvars_);
  RadicalFraction r = *this;
  r.a_ = a_.scaled(c);
  r.b_ = b_.scaled(c);
  return r;
}

RadicalFraction RadicalFraction::times_poly(const Poly& p) const {
  RadicalFraction r = *this;
  r.a_ = a_ * p;
  r.b_ = b_ * p;
  r.normalize();
  return r;
}

RadicalFraction RadicalFraction::times_monomial(Mono m, const GaussScalar& c) const {
  if (c.is_zero()) return RadicalFraction(coords_, nvars_);
  RadicalFraction r = *this;
  r.a_ = a_.times_term(m, c);
  r.b_ = b_.times_term(m, c);
  return r;
}

RadicalFraction RadicalFraction::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (a_.depends_on_range(coords_, nvars_) || b_.depends_on_range(coords_, nvars_)) {
    throw DomainError("only expressions in the coordinates alone can be inverted");
  }
  Poly q2 = q_squared(coords_, nvars_);
  Poly one = Poly::constant(nvars_, GaussScalar(1));
  Poly norm = a_ * a_ - b_ * b_ * (one - q2);
  Denominator nd;
  std::vector<Poly> known{q2, q2 - one};
  for (const auto& f : d_.factors()) known.push_back(f.base);
  for (const auto& base : known) {
    while (!norm.is_constant()) {
      auto q = norm.divide_exact(base);
      if (!q) break;
      norm = std::move(*q);
      nd.multiply(base);
    }
  }
  GaussScalar lead = norm.leading().coeff;
  GaussScalar inv = lead.inverse();
  if (!norm.is_constant()) nd.multiply(norm.scaled(inv));
  Poly dexp = d_.expand(nvars_);
  RadicalFraction r = make(coords_, (a_ * dexp).scaled(inv), (-(b_ * dexp)).scaled(inv), std::move(nd));
  r.radical_ = true;
  return r;
}

RadicalFraction RadicalFraction::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RadicalFraction result = constant(coords_, nvars_, GaussScalar(1));
  result.radical_ = radical_;
  RadicalFraction base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

RadicalFraction RadicalFraction::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw DimensionError("derivative variable out of range");
  RadicalFraction r(coords_, nvars_);
  r.radical_ = radical_;
  if (is_zero()) return r;
  if (var >= coords_ || (d_.is_one() && b_.is_zero())) {
    r.a_ = a_.derivative(var);
    r.b_ = b_.derivative(var);
    r.d_ = d_;
    if (var < coords_ || !d_.is_one()) r.normalize();
    return r;
  }
  // d/dx_j of (A + B s)/D with ds/dx_j = x_j s / (q^2 - 1).
  Denominator rad = d_.radical();
  Poly prad = rad.expand(nvars_);
  std::vector<Poly> log_terms;
  for (const auto& f : d_.factors()) {
    Poly df = f.base.derivative(var);
    if (df.is_zero()) continue;
    Poly others = Poly::constant(nvars_, GaussScalar(1));
    for (const auto& g : d_.factors()) {
      if (!(g.base == f.base)) others = others * g.base;
    }
    log_terms.push_back((df * others).scaled(GaussScalar(f.exponent)));
  }
  Poly q = Poly::sum(nvars_, std::move(log_terms));
  Poly na = a_.derivative(var) * prad - a_ * q;
  if (b_.is_zero()) {
    r.a_ = std::move(na);
    r.d_ = d_ * rad;
    r.normalize();
    return r;
  }
  Poly t = q_squared(coords_, nvars_) - Poly::constant(nvars_, GaussScalar(1));
  Poly nb = b_.derivative(var) * prad - b_ * q;
  r.a_ = na * t;
  r.b_ = nb * t + (b_ * prad).times_term(mono::var(var), GaussScalar(1));
  r.d_ = d_ * rad;
  r.d_.multiply(t);
  r.normalize();
  return r;
}

RadicalFraction RadicalFraction::sum(int coords, int nvars, std::span<const RadicalFraction> parts) {
  RadicalFraction r(coords, nvars);
  Denominator common;
  for (const auto& p : parts) {
    p.check_compatible(r);
    if (p.is_zero()) continue;
    r.radical_ = r.radical_ || p.radical_;
    common = lcm(common, p.d_);
  }
  std::vector<Poly> as;
  std::vector<Poly> bs;
  for (const auto& p : parts) {
    r.radical_ = r.radical_ || p.radical_;
    if (p.is_zero()) continue;
    if (p.d_ == common) {
      as.push_back(p.a_);
      bs.push_back(p.b_);
    } else {
      Poly c = common.cofactor(p.d_, nvars);
      as.push_back(p.a_ * c);
      bs.push_back(p.b_ * c);
    }
  }
  r.a_ = Poly::sum(nvars, std::move(as));
  r.b_ = Poly::sum(nvars, std::move(bs));
  r.d_ = std::move(common);
  r.normalize();
  return r;
}

GaussScalar RadicalFraction::evaluate(std::span<const GaussScalar> values, const GaussScalar& s) const {
  GaussScalar den(1);
  for (const auto& f : d_.factors()) {
    GaussScalar v = f.base.evaluate(values);
    for (int k = 0; k < f.exponent; ++k) den *= v;
  }
  if (den.is_zero()) throw EvaluationPole("denominator vanishes at the evaluation point");
  GaussScalar num = a_.evaluate(values);
  if (!b_.is_zero()) num += b_.evaluate(values) * s;
  return num / den;
}

RadicalFraction RadicalFraction::remapped(int coords, int nvars, std::span<const int> to) const {
  RadicalFraction r(coords, nvars);
  r.radical_ = radical_;
  r.a_ = a_.remapped(nvars, to);
  r.b_ = b_.remapped(nvars, to);
  r.d_ = d_.remapped(nvars, to);
  r.normalize();
  return r;
}

}  // namespace nambu
