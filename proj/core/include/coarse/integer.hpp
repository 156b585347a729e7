#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace coarse {

/// Arbitrary-precision integer with an inline 64-bit fast path.
///
/// Values that fit in int64 are stored inline; anything larger is promoted to
/// a GMP integer transparently. Every operation is exact.
class Integer {
 public:
  Integer() = default;
  Integer(std::int64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(int v) : small_(v) {}           // NOLINT(google-explicit-constructor)
  explicit Integer(const mpz_class& v);
  static Integer parse(std::string_view text);

  bool is_small() const { return big_ == nullptr; }
  bool is_zero() const { return is_small() && small_ == 0; }
  bool is_unit() const { return is_small() && (small_ == 1 || small_ == -1); }
  int sign() const;
  bool fits_int64() const { return is_small(); }
  std::int64_t to_int64() const;  // throws std::overflow_error when big
  mpz_class to_mpz() const;
  std::string str() const;

  Integer operator-() const;
  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

  std::size_t hash() const;

 private:
  static Integer from_mpz(mpz_class v);

  std::int64_t small_ = 0;
  std::shared_ptr<const mpz_class> big_;
};

Integer abs(const Integer& a);

/// Floor division: q = floor(a / b), r = a - q*b with 0 <= r < |b| for b > 0.
struct DivMod {
  Integer quot;
  Integer rem;
};
DivMod floor_divmod(const Integer& a, const Integer& b);

/// Quotient rounded toward zero.
Integer trunc_div(const Integer& a, const Integer& b);
/// Remainder in [0, |m|).
Integer mod_nonneg(const Integer& a, const Integer& m);
/// Division that must be exact; throws std::logic_error otherwise.
Integer exact_div(const Integer& a, const Integer& b);

Integer gcd(const Integer& a, const Integer& b);

/// g = gcd(a, b) >= 0 with s*a + t*b = g.
struct ExtGcd {
  Integer g;
  Integer s;
  Integer t;
};
ExtGcd ext_gcd(const Integer& a, const Integer& b);

std::ostream& operator<<(std::ostream& os, const Integer& v);

struct IntegerHash {
  std::size_t operator()(const Integer& v) const { return v.hash(); }
};

}  // namespace coarse
