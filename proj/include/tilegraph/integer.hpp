#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace tilegraph::zlin {

/// Arbitrary-precision integer. Values in (INT64_MIN, INT64_MAX] are held
/// inline; anything larger spills to a GMP integer. The representation is
/// always normalized, so two equal values have the same storage class.
class Integer {
 public:
  Integer() noexcept = default;
  Integer(int v) noexcept : small_(v) {}
  Integer(long v) noexcept : Integer(static_cast<long long>(v)) {}
  Integer(long long v);
  Integer(unsigned long v) : Integer(static_cast<unsigned long long>(v)) {}
  Integer(unsigned long long v);
  explicit Integer(const mpz_class& v);

  Integer(const Integer& other);
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& other);
  Integer& operator=(Integer&&) noexcept = default;
  ~Integer() = default;

  static Integer from_string(const std::string& text);

  bool is_zero() const noexcept { return !big_ && small_ == 0; }
  bool is_unit() const noexcept { return !big_ && (small_ == 1 || small_ == -1); }
  bool is_small() const noexcept { return !big_; }
  int sign() const noexcept;

  /// Value as int64 when it fits.
  std::optional<std::int64_t> to_int64() const noexcept;
  mpz_class to_mpz() const;
  std::string to_string() const;

  Integer& operator+=(const Integer& rhs);
  Integer& operator-=(const Integer& rhs);
  Integer& operator*=(const Integer& rhs);
  /// this -= factor * rhs, the inner step of every elimination.
  void submul(const Integer& factor, const Integer& rhs);
  Integer operator-() const;

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  friend bool operator==(const Integer& a, const Integer& b) noexcept;
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept;

  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

 private:
  static constexpr std::int64_t kMinSmall = INT64_MIN + 1;

  void assign_mpz(const mpz_class& v);
  void assign_mpz(mpz_class&& v);

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

Integer abs(const Integer& a);
int compare_abs(const Integer& a, const Integer& b) noexcept;

/// Truncating quotient; b must be nonzero.
Integer tdiv(const Integer& a, const Integer& b);
/// Floor quotient; b must be nonzero.
Integer fdiv(const Integer& a, const Integer& b);
/// Nonnegative remainder a mod |b|.
Integer mod(const Integer& a, const Integer& b);
/// Quotient rounded to nearest, so |a - q*b| <= |b|/2.
Integer round_div(const Integer& a, const Integer& b);
/// Exact quotient; throws std::domain_error if b does not divide a.
Integer exact_div(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& a);

/// Nonnegative gcd.
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

struct ExtendedGcd {
  Integer g;  // nonnegative
  Integer s;
  Integer t;  // s*a + t*b == g
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

Integer pow(const Integer& base, unsigned exponent);

}  // namespace tilegraph::zlin
