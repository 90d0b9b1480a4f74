#include "nambu/poly.hpp"

#include <algorithm>
#include <map>

#include "nambu/error.hpp"

namespace nambu {

namespace mono {

Mono mul(Mono a, Mono b) {
  Mono r = a + b;
  if ((r & kHighBits) != 0) throw DomainError("monomial exponent overflow (limit 127)");
  return r;
}

Mono project(Mono m, Mono mask) {
  Mono r = m & mask;
  int deg = 0;
  for (int v = 0; v < kMaxVars; ++v) deg += exponent(r, v);
  return r | (static_cast<Mono>(deg) << kDegreeShift);
}

Mono remap(Mono m, std::span<const int> to) {
  Mono r = 0;
  for (std::size_t v = 0; v < to.size(); ++v) {
    int e = exponent(m, static_cast<int>(v));
    if (e != 0 && to[v] >= 0) r += var(to[v], e);
  }
  return r;
}

}  // namespace mono

namespace {

// Merges two ascending term lists, combining equal monomials.
std::vector<Term> merge(std::vector<Term>&& a, std::vector<Term>&& b, bool negate_b = false) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].mono < b[j].mono) {
      out.push_back(std::move(a[i++]));
    } else if (b[j].mono < a[i].mono) {
      if (negate_b) b[j].coeff = -b[j].coeff;
      out.push_back(std::move(b[j++]));
    } else {
      GaussScalar c = std::move(a[i].coeff);
      if (negate_b) {
        c -= b[j].coeff;
      } else {
        c += b[j].coeff;
      }
      if (!c.is_zero()) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(std::move(a[i]));
  for (; j < b.size(); ++j) {
    if (negate_b) b[j].coeff = -b[j].coeff;
    out.push_back(std::move(b[j]));
  }
  return out;
}

void combine_sorted(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.mono < y.mono; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < terms.size();) {
    Mono m = terms[r].mono;
    GaussScalar c = std::move(terms[r].coeff);
    ++r;
    while (r < terms.size() && terms[r].mono == m) c += terms[r++].coeff;
    if (!c.is_zero()) terms[w++] = Term{m, std::move(c)};
  }
  terms.resize(w);
}

}  // namespace

std::string scalar_factor_text(const GaussScalar& c) {
  if (c.is_real()) {
    return c.re().is_integer() ? c.re().to_string() : "(" + c.re().to_string() + ")";
  }
  if (c.re().is_zero()) {
    if (c.im().is_one()) return "i";
    if (c.im().is_integer()) return c.im().to_string() + "*i";
    return "(" + c.im().to_string() + ")*i";
  }
  return c.to_string();
}

bool reads_negative(const GaussScalar& c) {
  if (c.is_real()) return c.re().sign() < 0;
  if (c.re().is_zero()) return c.im().sign() < 0;
  return false;
}

Poly Poly::constant(int nvars, GaussScalar c) {
  Poly p(nvars);
  if (!c.is_zero()) p.terms_.push_back({0, std::move(c)});
  return p;
}

Poly Poly::variable(int nvars, int v, int e) {
  if (v < 0 || v >= nvars) throw DimensionError("variable index out of range");
  Poly p(nvars);
  p.terms_.push_back({mono::var(v, e), GaussScalar(1)});
  return p;
}

Poly Poly::monomial(int nvars, Mono m, GaussScalar c) {
  Poly p(nvars);
  if (!c.is_zero()) p.terms_.push_back({m, std::move(c)});
  return p;
}

Poly Poly::from_terms(int nvars, std::vector<Term> terms) {
  Poly p(nvars);
  combine_sorted(terms);
  p.terms_ = std::move(terms);
  return p;
}

Poly Poly::sum(int nvars, std::vector<Poly> parts) {
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  std::vector<Term> all;
  all.reserve(total);
  for (auto& part : parts) {
    for (auto& t : part.terms_) all.push_back(std::move(t));
  }
  return from_terms(nvars, std::move(all));
}

bool Poly::is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == 0); }

GaussScalar Poly::constant_term() const {
  if (!terms_.empty() && terms_[0].mono == 0) return terms_[0].coeff;
  return {};
}

int Poly::degree_in(int v) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, mono::exponent(t.mono, v));
  return d;
}

int Poly::degree_in_range(int first, int last) const {
  int d = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (int v = first; v < last; ++v) s += mono::exponent(t.mono, v);
    d = std::max(d, s);
  }
  return d;
}

bool Poly::depends_on_range(int first, int last) const {
  Mono mask = mono::var_mask(first, last);
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return (t.mono & mask) != 0; });
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly& Poly::operator+=(const Poly& rhs) {
  std::vector<Term> b(rhs.terms_);
  terms_ = merge(std::move(terms_), std::move(b));
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  std::vector<Term> b(rhs.terms_);
  terms_ = merge(std::move(terms_), std::move(b), true);
  return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r(a);
  r += b;
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r(a);
  r -= b;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r(std::max(a.nvars_, b.nvars_));
  if (a.is_zero() || b.is_zero()) return r;
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& big = a.size() <= b.size() ? b : a;
  // Each row small[i] * big is already sorted; merge rows pairwise.
  std::vector<std::vector<Term>> rows;
  rows.reserve(small.size());
  for (const auto& s : small.terms_) {
    std::vector<Term> row;
    row.reserve(big.size());
    for (const auto& t : big.terms_) row.push_back({mono::mul(s.mono, t.mono), s.coeff * t.coeff});
    rows.push_back(std::move(row));
  }
  while (rows.size() > 1) {
    std::vector<std::vector<Term>> next;
    next.reserve((rows.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) next.push_back(merge(std::move(rows[i]), std::move(rows[i + 1])));
    if (rows.size() % 2 == 1) next.push_back(std::move(rows.back()));
    rows = std::move(next);
  }
  r.terms_ = std::move(rows[0]);
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  }
  return true;
}

bool operator<(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.terms_[a.terms_.size() - 1 - i];
    const auto& y = b.terms_[b.terms_.size() - 1 - i];
    if (x.mono != y.mono) return x.mono < y.mono;
    if (!(x.coeff.re() == y.coeff.re())) return x.coeff.re() < y.coeff.re();
    if (!(x.coeff.im() == y.coeff.im())) return x.coeff.im() < y.coeff.im();
  }
  return a.terms_.size() < b.terms_.size();
}

Poly Poly::scaled(const GaussScalar& c) const {
  if (c.is_zero()) return Poly(nvars_);
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly Poly::times_term(Mono m, const GaussScalar& c) const {
  if (c.is_zero()) return Poly(nvars_);
  Poly r(nvars_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({mono::mul(t.mono, m), t.coeff * c});
  return r;
}

Poly Poly::derivative(int v) const {
  Poly r(nvars_);
  Mono unit = mono::var(v);
  for (const auto& t : terms_) {
    int e = mono::exponent(t.mono, v);
    if (e == 0) continue;
    r.terms_.push_back({t.mono - unit, t.coeff * GaussScalar(e)});
  }
  return r;
}

Poly Poly::without_var(int v) const {
  Poly r(nvars_);
  for (const auto& t : terms_) {
    if (mono::exponent(t.mono, v) == 0) r.terms_.push_back(t);
  }
  return r;
}

Poly Poly::coefficient_of(int v, int e) const {
  Poly r(nvars_);
  Mono shift = mono::var(v, e);
  for (const auto& t : terms_) {
    if (mono::exponent(t.mono, v) == e) r.terms_.push_back({t.mono - shift, t.coeff});
  }
  return r;
}

Poly Poly::remapped(int nvars, std::span<const int> to) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({mono::remap(t.mono, to), t.coeff});
  return from_terms(nvars, std::move(out));
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return Poly(nvars_);
  const Term& lead = d.leading();
  GaussScalar lead_inv = lead.coeff.inverse();
  std::map<Mono, GaussScalar> rem;
  for (const auto& t : terms_) rem.emplace(t.mono, t.coeff);
  std::vector<Term> quot;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    if (!mono::divides(lead.mono, top->first)) return std::nullopt;
    Mono qm = top->first - lead.mono;
    GaussScalar qc = top->second * lead_inv;
    for (const auto& t : d.terms_) {
      Mono m = qm + t.mono;
      auto [it, inserted] = rem.try_emplace(m);
      it->second -= qc * t.coeff;
      if (it->second.is_zero()) rem.erase(it);
    }
    quot.push_back({qm, std::move(qc)});
  }
  return from_terms(nvars_, std::move(quot));
}

std::optional<Poly> Poly::divide_exact_block(const Poly& d, int first_other) const {
  if (is_zero()) return Poly(nvars_);
  Mono inner_mask = mono::var_mask(0, first_other);
  Mono outer_mask = mono::var_mask(first_other, mono::kMaxVars);
  // Group by the exponents outside the divisor's variables.
  std::vector<std::pair<Mono, Term>> keyed;
  keyed.reserve(terms_.size());
  for (const auto& t : terms_) keyed.push_back({mono::project(t.mono, outer_mask), Term{mono::project(t.mono, inner_mask), t.coeff}});
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t j = i;
    std::vector<Term> group;
    while (j < keyed.size() && keyed[j].first == keyed[i].first) group.push_back(std::move(keyed[j++].second));
    Poly g(nvars_);
    g.terms_ = std::move(group);  // already ascending within a group
    auto q = g.divide_exact(d);
    if (!q) return std::nullopt;
    for (const auto& t : q->terms_) out.push_back({t.mono + keyed[i].first, t.coeff});
    i = j;
  }
  return from_terms(nvars_, std::move(out));
}

GaussScalar Poly::evaluate(std::span<const GaussScalar> values) const {
  GaussScalar acc;
  std::vector<std::vector<GaussScalar>> powers(static_cast<std::size_t>(nvars_));
  for (const auto& t : terms_) {
    GaussScalar term = t.coeff;
    for (int v = 0; v < nvars_; ++v) {
      int e = mono::exponent(t.mono, v);
      if (e == 0) continue;
      auto& pw = powers[static_cast<std::size_t>(v)];
      if (pw.empty()) pw.push_back(GaussScalar(1));
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * values[static_cast<std::size_t>(v)]);
      term *= pw[static_cast<std::size_t>(e)];
    }
    acc += term;
  }
  return acc;
}

std::string monomial_to_string(Mono m, int nvars, std::span<const std::string> names) {
  std::string out;
  for (int v = 0; v < nvars; ++v) {
    int e = mono::exponent(m, v);
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += names[static_cast<std::size_t>(v)];
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string Poly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    bool neg = reads_negative(it->coeff);
    GaussScalar c = neg ? -it->coeff : it->coeff;
    std::string body;
    std::string mon = monomial_to_string(it->mono, nvars_, names);
    if (mon.empty()) {
      body = scalar_factor_text(c);
    } else if (c.is_one()) {
      body = mon;
    } else {
      body = scalar_factor_text(c) + "*" + mon;
    }
    if (out.empty()) {
      out = neg ? "-" + body : body;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace nambu
