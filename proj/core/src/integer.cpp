#include "coarse/integer.hpp"

#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace coarse {

namespace {

bool mpz_fits_int64(const mpz_class& v) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return mpz_fits_slong_p(v.get_mpz_t()) != 0;
}

}  // namespace

Integer::Integer(const mpz_class& v) { *this = from_mpz(v); }

Integer Integer::from_mpz(mpz_class v) {
  Integer r;
  if (mpz_fits_int64(v)) {
    r.small_ = v.get_si();
  } else {
    r.big_ = std::make_shared<const mpz_class>(std::move(v));
  }
  return r;
}

Integer Integer::parse(std::string_view text) {
  mpz_class v;
  if (v.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not an integer: " + std::string(text));
  }
  return from_mpz(std::move(v));
}

int Integer::sign() const {
  if (is_small()) return (small_ > 0) - (small_ < 0);
  return sgn(*big_);
}

std::int64_t Integer::to_int64() const {
  if (!is_small()) throw std::overflow_error("Integer does not fit in int64");
  return small_;
}

mpz_class Integer::to_mpz() const {
  if (is_small()) return mpz_class(static_cast<long>(small_));
  return *big_;
}

std::string Integer::str() const {
  if (is_small()) return std::to_string(small_);
  return big_->get_str();
}

Integer Integer::operator-() const {
  if (is_small() && small_ != std::numeric_limits<std::int64_t>::min()) {
    return Integer(-small_);
  }
  return from_mpz(-to_mpz());
}

Integer& Integer::operator+=(const Integer& o) {
  std::int64_t r;
  if (is_small() && o.is_small() && !__builtin_add_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  *this = from_mpz(to_mpz() + o.to_mpz());
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  std::int64_t r;
  if (is_small() && o.is_small() && !__builtin_sub_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  *this = from_mpz(to_mpz() - o.to_mpz());
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  std::int64_t r;
  if (is_small() && o.is_small() && !__builtin_mul_overflow(small_, o.small_, &r)) {
    small_ = r;
    return *this;
  }
  *this = from_mpz(to_mpz() * o.to_mpz());
  return *this;
}

bool operator==(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) return a.small_ == b.small_;
  if (a.is_small() != b.is_small()) return false;  // normalized representation
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) return a.small_ <=> b.small_;
  const int c = cmp(a.to_mpz(), b.to_mpz());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::size_t Integer::hash() const {
  if (is_small()) return std::hash<std::int64_t>{}(small_);
  return std::hash<std::string>{}(big_->get_str(16));
}

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

DivMod floor_divmod(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    const std::int64_t x = a.to_int64();
    const std::int64_t y = b.to_int64();
    if (!(x == std::numeric_limits<std::int64_t>::min() && y == -1)) {
      std::int64_t q = x / y;
      std::int64_t r = x % y;
      if (r != 0 && ((r < 0) != (y < 0))) {
        q -= 1;
        r += y;
      }
      return {Integer(q), Integer(r)};
    }
  }
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return {Integer(q), Integer(r)};
}

Integer trunc_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    const std::int64_t x = a.to_int64();
    const std::int64_t y = b.to_int64();
    if (!(x == std::numeric_limits<std::int64_t>::min() && y == -1)) return Integer(x / y);
  }
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

Integer mod_nonneg(const Integer& a, const Integer& m) {
  Integer r = floor_divmod(a, abs(m)).rem;
  return r;
}

Integer exact_div(const Integer& a, const Integer& b) {
  DivMod qr = floor_divmod(a, b);
  if (!qr.rem.is_zero()) throw std::logic_error("inexact division " + a.str() + " / " + b.str());
  return qr.quot;
}

Integer gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    auto uabs = [](std::int64_t v) {
      return v < 0 ? 0ULL - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    };
    std::uint64_t x = uabs(a.to_int64());
    std::uint64_t y = uabs(b.to_int64());
    while (y != 0) {
      std::uint64_t t = x % y;
      x = y;
      y = t;
    }
    if (x <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      return Integer(static_cast<std::int64_t>(x));
    }
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(g);
}

ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  // Iterative extended Euclid on Integer; fast path stays in int64 for small inputs.
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (!r.is_zero()) {
    Integer q = floor_divmod(old_r, r).quot;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r.sign() < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.str(); }

}  // namespace coarse
