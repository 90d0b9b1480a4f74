#include "nambu/operators.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "nambu/error.hpp"

namespace nambu {

ExactMatrix::ExactMatrix(int dim) : dim_(dim) {
  if (dim < 0) throw DimensionError("negative matrix dimension");
}

ExactMatrix ExactMatrix::identity(int dim) {
  ExactMatrix m(dim);
  for (int r = 0; r < dim; ++r) m.add(r, r, 0, GaussScalar(1));
  return m;
}

ExactMatrix ExactMatrix::from_integers(int dim, std::span<const long long> values, int hbar_power) {
  if (values.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
    throw DimensionError("matrix needs dim*dim values");
  }
  ExactMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      long long v = values[static_cast<std::size_t>(r * dim + c)];
      if (v != 0) m.add(r, c, hbar_power, GaussScalar(v));
    }
  }
  return m;
}

ExactMatrix::Layer& ExactMatrix::layer(int k) {
  while (static_cast<int>(layers_.size()) <= k) layers_.emplace_back(static_cast<std::size_t>(dim_ * dim_));
  return layers_[static_cast<std::size_t>(k)];
}

void ExactMatrix::trim() {
  while (!layers_.empty() &&
         std::all_of(layers_.back().begin(), layers_.back().end(), [](const GaussScalar& v) { return v.is_zero(); })) {
    layers_.pop_back();
  }
}

void ExactMatrix::add(int r, int c, int hbar_power, const GaussScalar& value) {
  if (r < 0 || r >= dim_ || c < 0 || c >= dim_ || hbar_power < 0) throw DimensionError("matrix index out of range");
  if (value.is_zero()) return;
  layer(hbar_power)[static_cast<std::size_t>(r * dim_ + c)] += value;
  trim();
}

GaussScalar ExactMatrix::coefficient(int r, int c, int hbar_power) const {
  if (r < 0 || r >= dim_ || c < 0 || c >= dim_) throw DimensionError("matrix index out of range");
  if (hbar_power < 0 || hbar_power >= static_cast<int>(layers_.size())) return GaussScalar(0);
  return layers_[static_cast<std::size_t>(hbar_power)][static_cast<std::size_t>(r * dim_ + c)];
}

Poly ExactMatrix::entry(int r, int c) const {
  std::vector<Poly> parts;
  for (int k = 0; k < static_cast<int>(layers_.size()); ++k) {
    GaussScalar v = coefficient(r, c, k);
    if (!v.is_zero()) parts.push_back(Poly::variable(1, 0, k).scaled(v));
  }
  return Poly::sum(1, std::move(parts));
}

ExactMatrix ExactMatrix::operator-() const { return scaled(GaussScalar(-1)); }

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionError("matrix sum of different dimensions");
  ExactMatrix out = a;
  for (int k = 0; k < static_cast<int>(b.layers_.size()); ++k) {
    auto& dst = out.layer(k);
    const auto& src = b.layers_[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (!src[i].is_zero()) dst[i] += src[i];
    }
  }
  out.trim();
  return out;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) { return a + (-b); }

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionError("matrix product of different dimensions");
  const int d = a.dim_;
  ExactMatrix out(d);
  for (int i = 0; i < static_cast<int>(a.layers_.size()); ++i) {
    const auto& la = a.layers_[static_cast<std::size_t>(i)];
    for (int j = 0; j < static_cast<int>(b.layers_.size()); ++j) {
      const auto& lb = b.layers_[static_cast<std::size_t>(j)];
      auto& dst = out.layer(i + j);
      for (int r = 0; r < d; ++r) {
        for (int m = 0; m < d; ++m) {
          const GaussScalar& x = la[static_cast<std::size_t>(r * d + m)];
          if (x.is_zero()) continue;
          for (int c = 0; c < d; ++c) {
            const GaussScalar& y = lb[static_cast<std::size_t>(m * d + c)];
            if (!y.is_zero()) dst[static_cast<std::size_t>(r * d + c)] += x * y;
          }
        }
      }
    }
  }
  out.trim();
  return out;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) { return a.dim_ == b.dim_ && a.layers_ == b.layers_; }

ExactMatrix ExactMatrix::scaled(const GaussScalar& c) const {
  ExactMatrix out = *this;
  for (auto& l : out.layers_) {
    for (auto& v : l) v *= c;
  }
  out.trim();
  return out;
}

ExactMatrix ExactMatrix::times_hbar(int k) const {
  if (k < 0) throw DomainError("negative hbar power");
  ExactMatrix out(dim_);
  if (is_zero()) return out;
  out.layers_.assign(static_cast<std::size_t>(k), Layer(static_cast<std::size_t>(dim_ * dim_)));
  out.layers_.insert(out.layers_.end(), layers_.begin(), layers_.end());
  return out;
}

std::string ExactMatrix::to_string() const {
  static const std::vector<std::string> names{"hbar"};
  std::string out = "[";
  for (int r = 0; r < dim_; ++r) {
    if (r > 0) out += "; ";
    for (int c = 0; c < dim_; ++c) {
      if (c > 0) out += ", ";
      out += entry(r, c).to_string(names);
    }
  }
  return out + "]";
}

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) { return a * b - b * a; }

ExactMatrix tensor(const ExactMatrix& a, const ExactMatrix& b) {
  const int da = a.dim();
  const int db = b.dim();
  ExactMatrix out(da * db);
  for (int ka = 0; ka <= a.hbar_degree(); ++ka) {
    for (int kb = 0; kb <= b.hbar_degree(); ++kb) {
      for (int r1 = 0; r1 < da; ++r1) {
        for (int c1 = 0; c1 < da; ++c1) {
          GaussScalar x = a.coefficient(r1, c1, ka);
          if (x.is_zero()) continue;
          for (int r2 = 0; r2 < db; ++r2) {
            for (int c2 = 0; c2 < db; ++c2) {
              GaussScalar y = b.coefficient(r2, c2, kb);
              if (!y.is_zero()) out.add(r1 * db + r2, c1 * db + c2, ka + kb, x * y);
            }
          }
        }
      }
    }
  }
  return out;
}

ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b) {
  const int da = a.dim();
  ExactMatrix out(da + b.dim());
  for (int k = 0; k <= std::max(a.hbar_degree(), b.hbar_degree()); ++k) {
    for (int r = 0; r < da; ++r) {
      for (int c = 0; c < da; ++c) out.add(r, c, k, a.coefficient(r, c, k));
    }
    for (int r = 0; r < b.dim(); ++r) {
      for (int c = 0; c < b.dim(); ++c) out.add(da + r, da + c, k, b.coefficient(r, c, k));
    }
  }
  return out;
}

ExactMatrix MatrixAlgebra::sum(std::span<const ExactMatrix> parts) const {
  ExactMatrix out(dim);
  for (const auto& p : parts) out += p;
  return out;
}

namespace {

// Appends every state with the given total in descending lexicographic order.
void append_sector(int n, int total, std::vector<std::vector<int>>& out) {
  std::vector<int> m(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      m[static_cast<std::size_t>(pos)] = left;
      out.push_back(m);
      return;
    }
    for (int v = left; v >= 0; --v) {
      m[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, total);
}

}  // namespace

FockBasis FockBasis::sector(int n, int total) {
  if (n < 1 || total < 0) throw DomainError("Fock sector needs n >= 1 and M >= 0");
  FockBasis b;
  b.n_ = n;
  append_sector(n, total, b.states_);
  return b;
}

FockBasis FockBasis::up_to(int n, int max_total) {
  if (n < 1 || max_total < 0) throw DomainError("Fock space needs n >= 1 and M >= 0");
  FockBasis b;
  b.n_ = n;
  for (int t = max_total; t >= 0; --t) append_sector(n, t, b.states_);
  return b;
}

int FockBasis::index(const std::vector<int>& state) const {
  auto it = std::find(states_.begin(), states_.end(), state);
  return it == states_.end() ? -1 : static_cast<int>(it - states_.begin());
}

ExactMatrix number_matrix(const FockBasis& basis, int i, int j) {
  const int n = basis.oscillators();
  if (i < 1 || i > n || j < 1 || j > n) throw DomainError("number operator index out of range");
  ExactMatrix out(basis.size());
  for (int col = 0; col < basis.size(); ++col) {
    std::vector<int> m = basis.states()[static_cast<std::size_t>(col)];
    int mj = m[static_cast<std::size_t>(j - 1)];
    if (mj == 0) continue;
    --m[static_cast<std::size_t>(j - 1)];
    ++m[static_cast<std::size_t>(i - 1)];
    int row = basis.index(m);
    if (row < 0) throw Error("number operator left the basis");
    out.add(row, col, 1, GaussScalar(mj));
  }
  return out;
}

ExactMatrix number_matrix(int n, int total, int i, int j) { return number_matrix(FockBasis::sector(n, total), i, j); }

OscillatorCheck oscillator_theorem_check(const FockBasis& basis, const ExactMatrix& f, const std::vector<int>& path) {
  const int n = basis.oscillators();
  if (f.dim() != basis.size()) throw DimensionError("f does not act on the Fock basis");
  std::vector<int> sorted = path;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < n; ++k) {
    if (static_cast<int>(sorted.size()) != n || sorted[static_cast<std::size_t>(k)] != k + 1) {
      throw DomainError("path must be a permutation of 1..n");
    }
  }
  const MatrixAlgebra alg{basis.size()};
  std::vector<ExactMatrix> entries{f};
  std::vector<ExactMatrix> off_diagonal;
  ExactMatrix total(basis.size());
  for (int k = 0; k < n; ++k) {
    int p = path[static_cast<std::size_t>(k)];
    ExactMatrix diag = number_matrix(basis, p, p);
    entries.push_back(diag);
    total += diag;
    if (k + 1 < n) {
      ExactMatrix link = number_matrix(basis, p, path[static_cast<std::size_t>(k + 1)]);
      entries.push_back(link);
      off_diagonal.push_back(link);
    }
  }
  OscillatorCheck out;
  auto bracket = qnb<MatrixAlgebra>(entries, alg);
  out.bracket = bracket.value;
  out.stats = bracket.stats;

  std::vector<ExactMatrix> left{commutator(f, total)};
  left.insert(left.end(), off_diagonal.begin(), off_diagonal.end());
  out.jordan_form = jordan<MatrixAlgebra>(left, alg).value.times_hbar(n - 1);

  std::vector<ExactMatrix> right{f};
  right.insert(right.end(), off_diagonal.begin(), off_diagonal.end());
  out.commutator_form = commutator(jordan<MatrixAlgebra>(right, alg).value, total).times_hbar(n - 1);

  out.holds = out.bracket == out.jordan_form && out.bracket == out.commutator_form;
  return out;
}

ExactMatrix Su2Rep::lx() const { return (lplus + lminus).scaled(GaussScalar(Rational(1, 2))); }

ExactMatrix Su2Rep::ly() const {
  // 1/(2i) = -i/2
  return (lplus - lminus).scaled(GaussScalar(Rational(0), Rational(-1, 2)));
}

ExactMatrix Su2Rep::casimir() const {
  ExactMatrix x = lx();
  ExactMatrix y = ly();
  return x * x + y * y + lz * lz;
}

Su2Rep su2_verma(int two_j) {
  if (two_j < 0) throw DomainError("twoJ must be non-negative");
  const int d = two_j + 1;
  Su2Rep rep{ExactMatrix(d), ExactMatrix(d), ExactMatrix(d)};
  for (int k = 0; k < d; ++k) {
    rep.lz.add(k, k, 1, GaussScalar(Rational(two_j - 2 * k, 2)));
    if (k + 1 < d) rep.lminus.add(k + 1, k, 1, GaussScalar(1));
    if (k > 0) rep.lplus.add(k - 1, k, 1, GaussScalar(static_cast<long long>(k) * (two_j + 1 - k)));
  }
  return rep;
}

Su2Rep su2_direct_sum(const Su2Rep& a, const Su2Rep& b) {
  return {direct_sum(a.lplus, b.lplus), direct_sum(a.lminus, b.lminus), direct_sum(a.lz, b.lz)};
}

}  // namespace nambu
