#include "nambu/models.hpp"

#include <algorithm>
#include <cctype>

#include "nambu/brackets.hpp"
#include "nambu/error.hpp"

namespace nambu {
namespace {

int epsilon(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // Even permutations of (0,1,2) are its cyclic shifts.
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

PhaseExpr num(int n, const Rational& r) { return PhaseExpr::constant(n, GaussScalar(r)); }

PhaseExpr delta(int n, int a, int b) { return num(n, Rational(a == b ? 1 : 0)); }

PhaseExpr q_squared(int n) {
  std::vector<PhaseExpr> parts;
  for (int a = 0; a < n; ++a) parts.push_back(PhaseExpr::x(n, a) * PhaseExpr::x(n, a));
  return PhaseExpr::sum(n, parts);
}

ExprMatrix square_matrix(int n) { return ExprMatrix(static_cast<std::size_t>(n), std::vector<PhaseExpr>(static_cast<std::size_t>(n), PhaseExpr(n))); }

PhaseExpr& at(ExprMatrix& m, int a, int b) { return m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
const PhaseExpr& at(const ExprMatrix& m, int a, int b) { return m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }

// g_ab = delta + q^a q^b / (1 - q^2) and g^ab = delta - q^a q^b.
void fill_sphere_metric(int n, Geometry& geo) {
  PhaseExpr one = num(n, Rational(1));
  PhaseExpr inv = (one - q_squared(n)).inverse();
  geo.g_down = square_matrix(n);
  geo.g_up = square_matrix(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      PhaseExpr qq = PhaseExpr::x(n, a) * PhaseExpr::x(n, b);
      at(geo.g_down, a, b) = delta(n, a, b) + qq * inv;
      at(geo.g_up, a, b) = delta(n, a, b) - qq;
    }
  }
}

PhaseExpr half_sum_of_squares(int n, const std::vector<PhaseExpr>& xs, bool use_star) {
  std::vector<PhaseExpr> parts;
  for (const auto& x : xs) parts.push_back(use_star ? star(x, x) : x * x);
  return PhaseExpr::sum(n, parts).scaled(GaussScalar(Rational(1, 2)));
}

PhaseExpr star_sum_of_squares(int n, const std::vector<PhaseExpr>& xs) {
  std::vector<PhaseExpr> parts;
  for (const auto& x : xs) parts.push_back(star(x, x));
  return PhaseExpr::sum(n, parts);
}

std::vector<PhaseExpr> currents(const Geometry& geo, int n) {
  std::vector<PhaseExpr> out;
  for (int j = 0; j < n; ++j) out.push_back(vielbein_current(geo, n, j));
  return out;
}

}  // namespace

const PhaseExpr& Model::charge(const std::string& key) const {
  auto it = charges.find(key);
  if (it == charges.end()) throw UnknownName("model " + name + " has no charge named " + key);
  return it->second;
}

std::string charge_key(const std::string& base, const std::vector<int>& indices) {
  if (indices.empty()) return base;
  std::string key = base + "[";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) key += ",";
    key += std::to_string(indices[i]);
  }
  return key + "]";
}

Geometry sphere_geometry(int n, int vielbein_sign) {
  if (n < 2) throw DomainError("sphere needs N >= 2");
  if (vielbein_sign != 1 && vielbein_sign != -1) throw DomainError("Vielbein sign must be +1 or -1");
  Geometry geo;
  geo.vielbein_sign = vielbein_sign;
  const PhaseExpr one = num(n, Rational(1));
  const PhaseExpr s = PhaseExpr::radical_s(n);
  const PhaseExpr sigma = num(n, Rational(vielbein_sign));
  const PhaseExpr inv_q2 = q_squared(n).inverse();
  // V^{ai} = delta - q^a q^i (1 +- s)/q^2, V_a^i = delta - q^a q^i (1 +- 1/s)/q^2
  const PhaseExpr up = (one + sigma * s) * inv_q2;
  const PhaseExpr down = (one + sigma * s.inverse()) * inv_q2;
  geo.v_up = square_matrix(n);
  geo.v_down = square_matrix(n);
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i) {
      PhaseExpr qq = PhaseExpr::x(n, a) * PhaseExpr::x(n, i);
      at(geo.v_up, a, i) = delta(n, a, i) - qq * up;
      at(geo.v_down, a, i) = delta(n, a, i) - qq * down;
    }
  }
  fill_sphere_metric(n, geo);
  geo.w = (one - s) * inv_q2;
  return geo;
}

Model build_sphere(int n, int sign) {
  if (n < 2) throw DomainError("sphere needs N >= 2, got " + std::to_string(n));
  if (sign != 1 && sign != -1) throw DomainError("hemisphere sign must be +1 or -1");
  Model m;
  m.name = "sphere:" + std::to_string(n) + (sign > 0 ? ":+" : ":-");
  m.n = n;
  m.sign = sign;
  m.kind = ModelKind::Sphere;
  const PhaseExpr s = PhaseExpr::radical_s(n);
  const PhaseExpr hemi_s = s.scaled(GaussScalar(Rational(sign)));

  std::vector<PhaseExpr> momenta;
  std::vector<PhaseExpr> rotations;
  for (int a = 0; a < n; ++a) {
    PhaseExpr pa = hemi_s * PhaseExpr::p(n, a);
    m.charges[charge_key("P", {a + 1})] = pa;
    m.conserved.push_back(charge_key("P", {a + 1}));
    momenta.push_back(pa);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      PhaseExpr lab = PhaseExpr::x(n, a) * PhaseExpr::p(n, b) - PhaseExpr::x(n, b) * PhaseExpr::p(n, a);
      m.charges[charge_key("L", {a + 1, b + 1})] = lab;
      if (a < b) {
        m.conserved.push_back(charge_key("L", {a + 1, b + 1}));
        rotations.push_back(lab);
      }
    }
  }
  // 1/2 P.P + 1/4 L_ab L_ab, the second sum running over ordered pairs.
  PhaseExpr hp = half_sum_of_squares(n, momenta, false);
  PhaseExpr hl = half_sum_of_squares(n, rotations, false);
  m.h_classical = hp + hl;
  m.h_quantum = half_sum_of_squares(n, momenta, true) + half_sum_of_squares(n, rotations, true);
  m.charges["H"] = m.h_classical;
  m.charges["Hqm"] = m.h_quantum;
  m.charges["s"] = s;

  if (n == 2) {
    const PhaseExpr& lz = m.charges.at("L[1,2]");
    const PhaseExpr ly = m.charges.at("P[1]");
    const PhaseExpr lx = -m.charges.at("P[2]");
    m.charges["Lz"] = lz;
    m.charges["Ly"] = ly;
    m.charges["Lx"] = lx;
    PhaseExpr i_ly = ly.scaled(GaussScalar::i());
    m.charges["Lp"] = lx + i_ly;
    m.charges["Lm"] = lx - i_ly;
    for (const char* name : {"Lx", "Ly", "Lz"}) m.conserved.emplace_back(name);
  }
  m.geometry = sphere_geometry(n, -1);
  m.charges["w"] = *m.geometry->w;
  return m;
}

Geometry chiral_geometry(int sign) {
  if (sign != 1 && sign != -1) throw DomainError("Dreibein sign must be +1 or -1");
  const int n = 3;
  Geometry geo;
  geo.vielbein_sign = sign;
  fill_sphere_metric(n, geo);
  const PhaseExpr ss = PhaseExpr::radical_s(n).scaled(GaussScalar(Rational(sign)));
  geo.v_up = square_matrix(n);
  geo.v_down = square_matrix(n);
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i) {
      std::vector<PhaseExpr> parts;
      for (int b = 0; b < n; ++b) {
        int e = epsilon(i, b, a);
        if (e != 0) parts.push_back(PhaseExpr::x(n, b).scaled(GaussScalar(Rational(e))));
      }
      PhaseExpr rot = PhaseExpr::sum(n, parts);
      at(geo.v_up, a, i) = rot + ss * delta(n, a, i);
      at(geo.v_down, a, i) = rot + ss * at(geo.g_down, a, i);
    }
  }
  return geo;
}

Model build_chiral_s3() {
  const int n = 3;
  Model m;
  m.name = "chiral-s3";
  m.n = n;
  m.sign = 1;
  m.kind = ModelKind::ChiralS3;
  const Geometry right = chiral_geometry(1);
  const Geometry left = chiral_geometry(-1);
  std::vector<PhaseExpr> r = currents(right, n);
  std::vector<PhaseExpr> l = currents(left, n);
  const GaussScalar half(Rational(1, 2));
  for (int i = 0; i < n; ++i) {
    const auto& ri = r[static_cast<std::size_t>(i)];
    const auto& li = l[static_cast<std::size_t>(i)];
    m.charges[charge_key("R", {i + 1})] = ri;
    m.charges[charge_key("Lch", {i + 1})] = li;
    m.charges[charge_key("A", {i + 1})] = (ri - li).scaled(half);
    m.charges[charge_key("I", {i + 1})] = (ri + li).scaled(half);
    m.charges[charge_key("JR", {i + 1})] = ri.scaled(half);
    m.charges[charge_key("JL", {i + 1})] = li.scaled(half);
  }
  m.charges["IL"] = star_sum_of_squares(n, l);
  m.charges["IR"] = star_sum_of_squares(n, r);
  for (const char* base : {"R", "Lch", "A", "I", "JR", "JL"}) {
    for (int i = 1; i <= n; ++i) m.conserved.push_back(charge_key(base, {i}));
  }
  m.conserved.emplace_back("IL");
  m.conserved.emplace_back("IR");
  m.h_classical = half_sum_of_squares(n, l, false);
  m.h_quantum = m.charges.at("IL").scaled(half);
  m.charges["H"] = m.h_classical;
  m.charges["Hqm"] = m.h_quantum;
  m.charges["s"] = PhaseExpr::radical_s(n);
  m.geometry = left;
  return m;
}

Model build_gnomonic_s3() {
  const int n = 3;
  Model m;
  m.name = "gnomonic-s3";
  m.n = n;
  m.sign = 1;
  m.kind = ModelKind::GnomonicS3;
  Geometry geo;
  geo.v_up = square_matrix(n);
  // V^{aj} = delta + Q^j Q^a + eps^{jab} Q^b
  for (int a = 0; a < n; ++a) {
    for (int j = 0; j < n; ++j) {
      PhaseExpr v = delta(n, a, j) + PhaseExpr::x(n, j) * PhaseExpr::x(n, a);
      for (int b = 0; b < n; ++b) {
        int e = epsilon(j, a, b);
        if (e != 0) v += PhaseExpr::x(n, b).scaled(GaussScalar(Rational(e)));
      }
      at(geo.v_up, a, j) = v;
    }
  }
  geo.g_up = square_matrix(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::vector<PhaseExpr> parts;
      for (int j = 0; j < n; ++j) parts.push_back(at(geo.v_up, a, j) * at(geo.v_up, b, j));
      at(geo.g_up, a, b) = PhaseExpr::sum(n, parts);
    }
  }
  std::vector<PhaseExpr> j = currents(geo, n);
  for (int i = 0; i < n; ++i) {
    m.charges[charge_key("J", {i + 1})] = j[static_cast<std::size_t>(i)];
    m.charges[charge_key("Q", {i + 1})] = PhaseExpr::x(n, i);
    m.conserved.push_back(charge_key("J", {i + 1}));
  }
  m.h_classical = half_sum_of_squares(n, j, false);
  m.h_quantum = half_sum_of_squares(n, j, true);
  m.charges["H"] = m.h_classical;
  m.charges["Hqm"] = m.h_quantum;
  m.geometry = geo;
  return m;
}

std::vector<std::string> model_registry() { return {"sphere:N[:+|-]", "chiral-s3", "gnomonic-s3"}; }

Model build_model(const std::string& name) {
  if (name == "chiral-s3") return build_chiral_s3();
  if (name == "gnomonic-s3") return build_gnomonic_s3();
  const std::string prefix = "sphere:";
  if (name.rfind(prefix, 0) == 0) {
    std::string rest = name.substr(prefix.size());
    int sign = 1;
    if (rest.size() > 2 && rest[rest.size() - 2] == ':') {
      char c = rest.back();
      if (c != '+' && c != '-') throw UsageError("bad hemisphere sign in model name " + name);
      sign = c == '+' ? 1 : -1;
      rest.resize(rest.size() - 2);
    }
    if (rest.empty() || rest.size() > 1 || !std::isdigit(static_cast<unsigned char>(rest[0]))) {
      throw UsageError("bad sphere dimension in model name " + name);
    }
    int n = rest[0] - '0';
    if (n < 2 || n > 7) throw UsageError("sphere dimension must be between 2 and 7: " + name);
    return build_sphere(n, sign);
  }
  throw UsageError("unknown model " + name + " (known: sphere:N[:+|-], chiral-s3, gnomonic-s3)");
}

PhaseExpr vielbein_current(const Geometry& geo, int n, int j) {
  std::vector<PhaseExpr> parts;
  for (int a = 0; a < n; ++a) parts.push_back(at(geo.v_up, a, j) * PhaseExpr::p(n, a));
  return PhaseExpr::sum(n, parts);
}

PhaseExpr h_other(const Model& model) {
  if (model.kind != ModelKind::Sphere || !model.geometry) throw DomainError("h_other needs a sphere model");
  return half_sum_of_squares(model.n, currents(*model.geometry, model.n), true);
}

PhaseExpr current_algebra_omega(const Model& model, int j, int k) {
  if (model.kind != ModelKind::Sphere || !model.geometry) throw DomainError("omega current needs a sphere model");
  const int n = model.n;
  if (j < 1 || j > n || k < 1 || k > n) throw DomainError("omega current index out of range");
  --j;
  --k;
  PhaseExpr c = PhaseExpr::x(n, k) * PhaseExpr::p(n, j) - PhaseExpr::x(n, j) * PhaseExpr::p(n, k);
  return c * *model.geometry->w;
}

std::vector<IdentityPair> similarity_identities(const Model& model) {
  if (model.kind != ModelKind::Sphere || !model.geometry) throw DomainError("similarity identities need a sphere model");
  const int n = model.n;
  const Geometry& geo = *model.geometry;
  const PhaseExpr& w = *geo.w;
  const PhaseExpr w_up = w.pow(n - 1);
  const PhaseExpr w_down = w.pow(1 - n);
  const PhaseExpr w_mid = w.pow(-2 * (n - 1));
  const PhaseExpr inv_w = w.inverse();
  const GaussScalar shift(Rational(0), Rational(n - 1, 2));  // i (N-1)/2

  std::vector<IdentityPair> out;
  std::vector<PhaseExpr> dressed;
  for (int j = 0; j < n; ++j) {
    PhaseExpr cur = vielbein_current(geo, n, j);
    std::vector<PhaseExpr> parts;
    for (int a = 0; a < n; ++a) parts.push_back(at(geo.v_up, a, j) * w.differentiate(Var::x(a)) * inv_w);
    PhaseExpr log_term = PhaseExpr::sum(n, parts).times_hbar(1, shift);
    PhaseExpr right = cur * w_up;
    out.push_back({"conjugation j=" + std::to_string(j + 1), star(w_down, right), cur - log_term});
    out.push_back({"reverse conjugation j=" + std::to_string(j + 1), star(right, w_down), cur + log_term});
    dressed.push_back(right);
  }
  std::vector<PhaseExpr> parts;
  for (const auto& d : dressed) parts.push_back(star(star(d, w_mid), d));
  out.push_back({"factorized Hqm", PhaseExpr::sum(n, parts).scaled(GaussScalar(Rational(1, 2))), model.h_quantum});
  return out;
}

namespace {

// Solves m y = rhs over GaussScalar by Gauss-Jordan elimination; empty when
// the system is singular.
std::optional<std::vector<GaussScalar>> solve(std::vector<std::vector<GaussScalar>> m, std::vector<GaussScalar> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    GaussScalar inv = m[col][col].inverse();
    for (std::size_t c = 0; c < n; ++c) m[col][c] *= inv;
    rhs[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      GaussScalar factor = m[r][col];
      for (std::size_t c = 0; c < n; ++c) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  return rhs;
}

}  // namespace

StructureConstants read_structure_constants(const std::vector<PhaseExpr>& xs) {
  if (xs.size() != 3) throw StructureConstantError("structure constants need exactly three currents");
  const int n = xs[0].dim();
  // A point with rational s: (1/5, 2/5, 2/5, s = 4/5) padded with zeros.
  EvalPoint pt;
  const Rational coords[3] = {Rational(1, 5), Rational(2, 5), Rational(2, 5)};
  Rational sum_sq(0);
  for (int a = 0; a < n; ++a) {
    Rational v = a < 3 ? coords[a] : Rational(0);
    pt.x.push_back(v);
    pt.p.push_back(Rational(0));
    sum_sq += v * v;
  }
  if (n < 3) throw StructureConstantError("structure constants need at least three coordinates");
  pt.s = Rational(4, 5);
  if (sum_sq + pt.s * pt.s != Rational(1)) throw StructureConstantError("internal: bad sample point");

  auto momentum_coefficients = [&](const PhaseExpr& e) {
    std::vector<GaussScalar> out;
    for (int a = 0; a < n; ++a) out.push_back(e.differentiate(Var::p(a)).evaluate(pt, Rational(0)));
    return out;
  };
  // Least-squares is unnecessary: the first three momentum directions suffice
  // when the frame is invertible there.
  std::vector<std::vector<GaussScalar>> frame(3, std::vector<GaussScalar>(3));
  for (int c = 0; c < 3; ++c) {
    auto coeffs = momentum_coefficients(xs[static_cast<std::size_t>(c)]);
    for (int a = 0; a < 3; ++a) frame[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] = coeffs[static_cast<std::size_t>(a)];
  }

  StructureConstants sc;
  for (int j = 0; j < 3; ++j) {
    for (int k = j + 1; k < 3; ++k) {
      PhaseExpr pb = poisson(xs[static_cast<std::size_t>(j)], xs[static_cast<std::size_t>(k)]);
      auto coeffs = momentum_coefficients(pb);
      std::vector<GaussScalar> rhs(coeffs.begin(), coeffs.begin() + 3);
      auto y = solve(frame, rhs);
      if (!y) throw StructureConstantError("frame is singular at the sample point");
      std::vector<PhaseExpr> parts;
      for (int c = 0; c < 3; ++c) {
        GaussScalar f = (*y)[static_cast<std::size_t>(c)] * GaussScalar(Rational(-1, 2));
        sc(j, k, c) = f;
        sc(k, j, c) = -f;
        parts.push_back(xs[static_cast<std::size_t>(c)].scaled((*y)[static_cast<std::size_t>(c)]));
      }
      if (!(PhaseExpr::sum(n, parts) == pb)) {
        throw StructureConstantError("Poisson closure is not a constant combination of the currents");
      }
    }
  }
  // f_abc f_bcd = c delta_ad
  std::optional<GaussScalar> c_adj;
  for (int a = 0; a < 3; ++a) {
    for (int d = 0; d < 3; ++d) {
      GaussScalar acc(0);
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) acc += sc(a, b, c) * sc(b, c, d);
      }
      if (a != d && !acc.is_zero()) throw StructureConstantError("f_abc f_bcd is not proportional to delta");
      if (a == d) {
        if (c_adj && !(*c_adj == acc)) throw StructureConstantError("f_abc f_bcd is not proportional to delta");
        c_adj = acc;
      }
    }
  }
  sc.c_adjoint = *c_adj;
  return sc;
}

std::vector<ExprMatrix> christoffel(const ExprMatrix& g_down, const ExprMatrix& g_up) {
  const int n = static_cast<int>(g_down.size());
  const int dim = at(g_down, 0, 0).dim();
  // dg[d][a][c] = d_d g_ac
  std::vector<ExprMatrix> dg;
  for (int d = 0; d < n; ++d) {
    ExprMatrix m = square_matrix(dim);
    m.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      for (int c = 0; c < n; ++c) at(m, a, c) = at(g_down, a, c).differentiate(Var::x(d));
    }
    dg.push_back(std::move(m));
  }
  auto d_g = [&](int d, int a, int c) -> const PhaseExpr& { return at(dg[static_cast<std::size_t>(d)], a, c); };
  std::vector<ExprMatrix> gamma;
  const GaussScalar half(Rational(1, 2));
  for (int b = 0; b < n; ++b) {
    ExprMatrix m = square_matrix(dim);
    m.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      for (int c = 0; c < n; ++c) {
        std::vector<PhaseExpr> parts;
        for (int d = 0; d < n; ++d) {
          PhaseExpr inner = d_g(a, d, c) + d_g(c, d, a) - d_g(d, a, c);
          if (!inner.is_zero()) parts.push_back(at(g_up, b, d) * inner);
        }
        at(m, a, c) = PhaseExpr::sum(dim, parts).scaled(half);
      }
    }
    gamma.push_back(std::move(m));
  }
  return gamma;
}

ChristoffelCorrection christoffel_correction(const Model& model, int dreibein_sign) {
  if (model.kind != ModelKind::ChiralS3) throw DomainError("Christoffel correction needs the chiral S^3 model");
  const int n = model.n;
  Geometry geo = chiral_geometry(dreibein_sign);
  std::vector<ExprMatrix> gamma = christoffel(geo.g_down, geo.g_up);
  auto g = [&](int b, int a, int c) -> const PhaseExpr& { return at(gamma[static_cast<std::size_t>(b)], a, c); };
  std::vector<PhaseExpr> parts;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (g(b, a, c).is_zero()) continue;
        for (int d = 0; d < n; ++d) {
          if (g(a, b, d).is_zero() || at(geo.g_up, c, d).is_zero()) continue;
          parts.push_back(g(b, a, c) * at(geo.g_up, c, d) * g(a, b, d));
        }
      }
    }
  }
  ChristoffelCorrection out;
  out.gamma_contraction = PhaseExpr::sum(n, parts);
  out.structure = read_structure_constants(currents(geo, n));
  GaussScalar ff(0);
  for (const auto& f : out.structure.f) ff += f * f;
  PhaseExpr diff = out.gamma_contraction - PhaseExpr::constant(n, ff);
  out.correction = diff.times_hbar(2, GaussScalar(Rational(1, 8)));
  return out;
}

PhaseExpr fab(const Model& model, int a, int b, FabVariant variant) {
  if (model.kind != ModelKind::ChiralS3) throw DomainError("f_ab needs the chiral S^3 model");
  if (a < 1 || a > 3 || b < 1 || b > 3) throw DomainError("f_ab indices must lie in 1..3");
  if (variant == FabVariant::Cartesian) {
    // (I_a + A_a) = R_a and (I_b - A_b) = Lch_b
    return star(model.charge(charge_key("R", {a})), model.charge(charge_key("Lch", {b})));
  }
  return star(model.charge(charge_key("JL", {a})), model.charge(charge_key("JR", {b})));
}

}  // namespace nambu
