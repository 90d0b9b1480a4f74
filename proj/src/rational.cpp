#include "nambu/rational.hpp"

#include <limits>
#include <numeric>

#include "nambu/error.hpp"

namespace nambu {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) { return v <= kSmallMax && v >= -kSmallMax; }

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
  mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpz_class to_mpz(std::int64_t v) { return to_mpz(static_cast<i128>(v)); }

}  // namespace

Rational::Rational(long long n) noexcept : num_(n), den_(1) {
  if (n == std::numeric_limits<long long>::min()) assign_big(mpq_class(to_mpz(static_cast<i128>(n))));
}

Rational::Rational(long long n, long long d) {
  if (d == 0) throw DivisionByZero("rational with zero denominator");
  *this = from_wide(n, d);
}

Rational::Rational(const mpq_class& q) { assign_big(q); }

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

void Rational::assign_big(mpq_class q) {
  q.canonicalize();
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 63 && mpz_sizeinbase(d.get_mpz_t(), 2) <= 63) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_unique<mpq_class>(std::move(q));
}

Rational Rational::from_wide(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Rational r;
  if (n == 0) return r;
  if (fits(n) && fits(d)) {
    auto n64 = static_cast<std::int64_t>(n);
    auto d64 = static_cast<std::int64_t>(d);
    std::int64_t g = std::gcd(n64, d64);
    r.num_ = n64 / g;
    r.den_ = d64 / g;
    return r;
  }
  u128 g = gcd_u128(n < 0 ? static_cast<u128>(-n) : static_cast<u128>(n), static_cast<u128>(d));
  if (g > 1) {
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
  }
  if (fits(n) && fits(d)) {
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  mpq_class q(to_mpz(n), to_mpz(d));
  r.assign_big(std::move(q));
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      mpz_class n(std::string(text), 10);
      Rational r;
      r.assign_big(mpq_class(n));
      return r;
    }
    mpz_class n(std::string(text.substr(0, slash)), 10);
    mpz_class d(std::string(text.substr(slash + 1)), 10);
    if (d == 0) throw DivisionByZero("rational literal with zero denominator");
    Rational r;
    r.assign_big(mpq_class(n, d));
    return r;
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational literal '" + std::string(text) + "'");
  }
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(to_mpz(num_), to_mpz(den_));
}

Rational Rational::operator-() const {
  Rational r;
  if (big_) {
    r.big_ = std::make_unique<mpq_class>(-*big_);
  } else {
    r.num_ = -num_;
    r.den_ = den_;
  }
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (rhs.is_zero()) return *this;
  if (!big_ && !rhs.big_) {
    if (den_ == rhs.den_) {
      i128 n = static_cast<i128>(num_) + rhs.num_;
      if (den_ == 1) {
        if (fits(n)) {
          num_ = static_cast<std::int64_t>(n);
          return *this;
        }
      }
      return *this = from_wide(n, den_);
    }
    i128 n = static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_;
    i128 d = static_cast<i128>(den_) * rhs.den_;
    return *this = from_wide(n, d);
  }
  assign_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (!big_ && !rhs.big_ && den_ == 1 && rhs.den_ == 1) {
    std::int64_t diff;
    if (!__builtin_sub_overflow(num_, rhs.num_, &diff) && diff != INT64_MIN) {
      num_ = diff;
      return *this;
    }
  }
  return *this += -rhs;
}

Rational& Rational::operator*=(const Rational& rhs) {
  if (is_zero()) return *this;
  if (rhs.is_zero()) return *this = Rational();
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t prod;
      if (!__builtin_mul_overflow(num_, rhs.num_, &prod) && prod != INT64_MIN) {
        num_ = prod;
        return *this;
      }
    }
    std::uint64_t an = num_ < 0 ? static_cast<std::uint64_t>(-num_) : static_cast<std::uint64_t>(num_);
    std::uint64_t bn = rhs.num_ < 0 ? static_cast<std::uint64_t>(-rhs.num_) : static_cast<std::uint64_t>(rhs.num_);
    std::int64_t g1 = static_cast<std::int64_t>(std::gcd(an, static_cast<std::uint64_t>(rhs.den_)));
    std::int64_t g2 = static_cast<std::int64_t>(std::gcd(bn, static_cast<std::uint64_t>(den_)));
    i128 n = static_cast<i128>(num_ / g1) * (rhs.num_ / g2);
    i128 d = static_cast<i128>(den_ / g2) * (rhs.den_ / g1);
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
    assign_big(mpq_class(to_mpz(n), to_mpz(d)));
    return *this;
  }
  assign_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (big_) {
    Rational r;
    r.assign_big(1 / *big_);
    return r;
  }
  return from_wide(den_, num_);
}

Rational& Rational::operator/=(const Rational& rhs) { return *this *= rhs.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a value is big only when it does not fit inline
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

GaussScalar& GaussScalar::operator+=(const GaussScalar& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

GaussScalar& GaussScalar::operator-=(const GaussScalar& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

GaussScalar& GaussScalar::operator*=(const GaussScalar& rhs) {
  if (im_.is_zero() && rhs.im_.is_zero()) {
    re_ *= rhs.re_;
    return *this;
  }
  if (rhs.im_.is_zero()) {
    re_ *= rhs.re_;
    im_ *= rhs.re_;
    return *this;
  }
  if (rhs.re_.is_zero()) {
    // (a + bi)(ci) = -bc + aci
    Rational nre = -(im_ * rhs.im_);
    im_ = re_ * rhs.im_;
    re_ = std::move(nre);
    return *this;
  }
  Rational nre = re_ * rhs.re_ - im_ * rhs.im_;
  Rational nim = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(nre);
  im_ = std::move(nim);
  return *this;
}

GaussScalar GaussScalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero scalar");
  Rational norm = re_ * re_ + im_ * im_;
  return {re_ / norm, -im_ / norm};
}

GaussScalar& GaussScalar::operator/=(const GaussScalar& rhs) { return *this *= rhs.inverse(); }

std::string GaussScalar::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  std::string imag;
  if (im_.is_one()) {
    imag = "i";
  } else if (im_ == Rational(-1)) {
    imag = "-i";
  } else {
    imag = im_.to_string() + "*i";
  }
  if (re_.is_zero()) return imag;
  std::string out = "(" + re_.to_string();
  if (im_.sign() < 0) {
    Rational a = -im_;
    out += " - " + (a.is_one() ? std::string("i") : a.to_string() + "*i");
  } else {
    out += " + " + imag;
  }
  return out + ")";
}

}  // namespace nambu
