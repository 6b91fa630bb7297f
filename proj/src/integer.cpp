#include "tilegraph/integer.hpp"

#include <ostream>
#include <stdexcept>

namespace tilegraph::zlin {

namespace {

mpz_class mpz_from_int64(std::int64_t v) {
  mpz_class out;
  // mpz_set_si takes long; long is 64-bit on every platform we build on.
  static_assert(sizeof(long) == sizeof(std::int64_t));
  mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
  return out;
}

}  // namespace

Integer::Integer(long long v) {
  if (v >= kMinSmall) {
    small_ = v;
  } else {
    assign_mpz(mpz_from_int64(v));
  }
}

Integer::Integer(unsigned long long v) {
  if (v <= static_cast<unsigned long long>(INT64_MAX)) {
    small_ = static_cast<std::int64_t>(v);
  } else {
    mpz_class big;
    mpz_set_ui(big.get_mpz_t(), static_cast<unsigned long>(v));
    assign_mpz(std::move(big));
  }
}

Integer::Integer(const mpz_class& v) { assign_mpz(v); }

Integer::Integer(const Integer& other) : small_(other.small_) {
  if (other.big_) big_ = std::make_unique<mpz_class>(*other.big_);
}

Integer& Integer::operator=(const Integer& other) {
  if (this == &other) return *this;
  small_ = other.small_;
  if (other.big_) {
    if (big_) {
      *big_ = *other.big_;
    } else {
      big_ = std::make_unique<mpz_class>(*other.big_);
    }
  } else {
    big_.reset();
  }
  return *this;
}

Integer Integer::from_string(const std::string& text) {
  mpz_class v;
  if (v.set_str(text, 10) != 0) throw std::invalid_argument("not an integer: " + text);
  return Integer(v);
}

void Integer::assign_mpz(const mpz_class& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) {
    const long s = mpz_get_si(v.get_mpz_t());
    if (s >= kMinSmall) {
      small_ = s;
      big_.reset();
      return;
    }
  }
  small_ = 0;
  if (big_) {
    *big_ = v;
  } else {
    big_ = std::make_unique<mpz_class>(v);
  }
}

void Integer::assign_mpz(mpz_class&& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) {
    const long s = mpz_get_si(v.get_mpz_t());
    if (s >= kMinSmall) {
      small_ = s;
      big_.reset();
      return;
    }
  }
  small_ = 0;
  if (big_) {
    mpz_swap(big_->get_mpz_t(), v.get_mpz_t());
  } else {
    big_ = std::make_unique<mpz_class>(std::move(v));
  }
}

int Integer::sign() const noexcept {
  if (big_) return mpz_sgn(big_->get_mpz_t());
  return (small_ > 0) - (small_ < 0);
}

std::optional<std::int64_t> Integer::to_int64() const noexcept {
  if (big_) return std::nullopt;
  return small_;
}

mpz_class Integer::to_mpz() const { return big_ ? *big_ : mpz_from_int64(small_); }

std::string Integer::to_string() const {
  return big_ ? big_->get_str() : std::to_string(small_);
}

Integer& Integer::operator+=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t r;
    if (!__builtin_add_overflow(small_, rhs.small_, &r) && r >= kMinSmall) {
      small_ = r;
      return *this;
    }
  }
  assign_mpz(mpz_class(to_mpz() + rhs.to_mpz()));
  return *this;
}

Integer& Integer::operator-=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t r;
    if (!__builtin_sub_overflow(small_, rhs.small_, &r) && r >= kMinSmall) {
      small_ = r;
      return *this;
    }
  }
  assign_mpz(mpz_class(to_mpz() - rhs.to_mpz()));
  return *this;
}

Integer& Integer::operator*=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t r;
    if (!__builtin_mul_overflow(small_, rhs.small_, &r) && r >= kMinSmall) {
      small_ = r;
      return *this;
    }
  }
  assign_mpz(mpz_class(to_mpz() * rhs.to_mpz()));
  return *this;
}

void Integer::submul(const Integer& factor, const Integer& rhs) {
  if (!big_ && !factor.big_ && !rhs.big_) {
    std::int64_t p;
    std::int64_t r;
    if (!__builtin_mul_overflow(factor.small_, rhs.small_, &p) &&
        !__builtin_sub_overflow(small_, p, &r) && r >= kMinSmall) {
      small_ = r;
      return;
    }
  }
  mpz_class acc = to_mpz();
  mpz_submul(acc.get_mpz_t(), factor.to_mpz().get_mpz_t(), rhs.to_mpz().get_mpz_t());
  assign_mpz(std::move(acc));
}

Integer Integer::operator-() const {
  if (!big_) return Integer(-small_);
  return Integer(mpz_class(-*big_));
}

bool operator==(const Integer& a, const Integer& b) noexcept {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ && b.big_) return mpz_cmp(a.big_->get_mpz_t(), b.big_->get_mpz_t()) == 0;
  return false;  // normalized: mixed storage classes never compare equal
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  int c;
  if (a.big_ && b.big_) {
    c = mpz_cmp(a.big_->get_mpz_t(), b.big_->get_mpz_t());
  } else if (a.big_) {
    c = mpz_sgn(a.big_->get_mpz_t());
  } else {
    c = -mpz_sgn(b.big_->get_mpz_t());
  }
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

int compare_abs(const Integer& a, const Integer& b) noexcept {
  auto sa = a.to_int64();
  auto sb = b.to_int64();
  if (sa && sb) {
    const std::int64_t x = *sa < 0 ? -*sa : *sa;
    const std::int64_t y = *sb < 0 ? -*sb : *sb;
    return (x > y) - (x < y);
  }
  const int c = mpz_cmpabs(a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return (c > 0) - (c < 0);
}

Integer tdiv(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  auto sa = a.to_int64();
  auto sb = b.to_int64();
  if (sa && sb) return Integer(*sa / *sb);
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

Integer fdiv(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  auto sa = a.to_int64();
  auto sb = b.to_int64();
  if (sa && sb) {
    std::int64_t q = *sa / *sb;
    if ((*sa % *sb != 0) && ((*sa < 0) != (*sb < 0))) --q;
    return Integer(q);
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

Integer mod(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  auto sa = a.to_int64();
  auto sb = b.to_int64();
  if (sa && sb) {
    const std::int64_t m = *sb < 0 ? -*sb : *sb;
    std::int64_t r = *sa % m;
    if (r < 0) r += m;
    return Integer(r);
  }
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(r);
}

Integer round_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  auto sa = a.to_int64();
  auto sb = b.to_int64();
  if (sa && sb) {
    std::int64_t q = *sa / *sb;
    const std::int64_t r = *sa % *sb;
    const std::int64_t ar = r < 0 ? -r : r;
    const std::int64_t ab = *sb < 0 ? -*sb : *sb;
    if (ar > ab - ar) q += ((*sa < 0) == (*sb < 0)) ? 1 : -1;
    return Integer(q);
  }
  const mpz_class ma = a.to_mpz();
  const mpz_class mb = b.to_mpz();
  mpz_class q;
  mpz_class r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), ma.get_mpz_t(), mb.get_mpz_t());
  mpz_class twice = 2 * abs(r);
  if (twice > abs(mb)) {
    if ((sgn(ma) < 0) == (sgn(mb) < 0)) {
      q += 1;
    } else {
      q -= 1;
    }
  }
  return Integer(q);
}

Integer exact_div(const Integer& a, const Integer& b) {
  if (!divides(b, a)) throw std::domain_error("inexact division");
  return tdiv(a, b);
}

bool divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  return mod(a, d).is_zero();
}

Integer gcd(const Integer& a, const Integer& b) {
  auto sa = a.to_int64();
  auto sb = b.to_int64();
  if (sa && sb) {
    std::uint64_t x = *sa < 0 ? static_cast<std::uint64_t>(-*sa) : static_cast<std::uint64_t>(*sa);
    std::uint64_t y = *sb < 0 ? static_cast<std::uint64_t>(-*sb) : static_cast<std::uint64_t>(*sb);
    while (y != 0) {
      const std::uint64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(static_cast<unsigned long long>(x));
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(g);
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a.is_zero() || b.is_zero()) return Integer(0);
  return abs(tdiv(a, gcd(a, b)) * b);
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  mpz_class g;
  mpz_class s;
  mpz_class t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.to_mpz().get_mpz_t(),
             b.to_mpz().get_mpz_t());
  return {Integer(g), Integer(s), Integer(t)};
}

Integer pow(const Integer& base, unsigned exponent) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.to_mpz().get_mpz_t(), exponent);
  return Integer(r);
}

}  // namespace tilegraph::zlin
