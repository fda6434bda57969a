#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace optwit {

using Rational = boost::rational<std::int64_t>;

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("dyadic: numerator overflow");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("dyadic: numerator overflow");
  return r;
}

inline std::int64_t checked_shl(std::int64_t v, std::uint32_t s) {
  if (v == 0) return 0;
  if (s >= 63) throw std::overflow_error("dyadic: numerator overflow");
  return checked_mul(v, std::int64_t{1} << s);
}

}  // namespace detail

// Exact binary fraction numerator / 2^exponent.
//
// Canonical form: the numerator is odd, or the exponent is zero (zero is
// always 0/2^0). Arithmetic never rounds; an intermediate that does not fit
// in 64 bits throws std::overflow_error instead.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  template <std::integral I>
  constexpr Dyadic(I integer) : num_(static_cast<std::int64_t>(integer)) {}  // NOLINT(google-explicit-constructor)

  static Dyadic from_parts(std::int64_t numerator, std::uint32_t exponent) {
    Dyadic d;
    d.num_ = numerator;
    d.exp_ = exponent;
    d.canonicalize();
    return d;
  }

  // 2^-k
  static Dyadic inv_pow2(std::uint32_t k) { return from_parts(1, k); }

  // Every finite double is a dyadic rational; nullopt if it does not fit.
  static std::optional<Dyadic> from_double(double x) {
    if (!std::isfinite(x)) return std::nullopt;
    if (x == 0.0) return Dyadic{};
    int e = 0;
    const double m = std::frexp(x, &e);  // x = m * 2^e, 0.5 <= |m| < 1
    const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    const int exp2 = e - 53;  // x = mant * 2^exp2
    if (exp2 >= 0) {
      if (exp2 > 9) return std::nullopt;
      return Dyadic{mant << exp2};
    }
    return from_parts(mant, static_cast<std::uint32_t>(-exp2));
  }

  constexpr std::int64_t numerator() const { return num_; }
  constexpr std::uint32_t exponent() const { return exp_; }
  constexpr bool is_zero() const { return num_ == 0; }

  double to_double() const { return std::ldexp(static_cast<double>(num_), -static_cast<int>(exp_)); }

  Rational to_rational() const {
    if (exp_ >= 63) throw std::overflow_error("dyadic: exponent too large for rational");
    return Rational(num_, std::int64_t{1} << exp_);
  }

  // this * 2^-k
  Dyadic scaled(std::uint32_t k) const { return from_parts(num_, exp_ + k); }

  Dyadic operator-() const {
    if (num_ == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("dyadic: numerator overflow");
    Dyadic r = *this;
    r.num_ = -num_;
    return r;
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.exp_ == b.exp_) return from_parts(detail::checked_add(a.num_, b.num_), a.exp_);
    if (a.exp_ > b.exp_)
      return from_parts(detail::checked_add(a.num_, detail::checked_shl(b.num_, a.exp_ - b.exp_)), a.exp_);
    return from_parts(detail::checked_add(detail::checked_shl(a.num_, b.exp_ - a.exp_), b.num_), b.exp_);
  }

  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return from_parts(detail::checked_mul(a.num_, b.num_), a.exp_ + b.exp_);
  }

  // Exact division; throws std::domain_error when the quotient is not dyadic.
  friend Dyadic operator/(const Dyadic& a, const Dyadic& b) {
    if (b.num_ == 0) throw std::domain_error("dyadic: division by zero");
    std::int64_t odd = b.num_;
    std::uint32_t twos = 0;
    while ((odd & 1) == 0) {
      odd /= 2;
      ++twos;
    }
    if (a.num_ % odd != 0) throw std::domain_error("dyadic: quotient is not a dyadic rational");
    const std::int64_t q = a.num_ / odd;
    // a/b = q * 2^(b.exp - a.exp - twos)
    const std::int64_t shift = static_cast<std::int64_t>(b.exp_) - a.exp_ - twos;
    if (shift >= 0) return from_parts(detail::checked_shl(q, static_cast<std::uint32_t>(shift)), 0);
    return from_parts(q, static_cast<std::uint32_t>(-shift));
  }

  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }
  Dyadic& operator/=(const Dyadic& o) { return *this = *this / o; }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;

  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const Dyadic diff = a - b;
    return diff.num_ <=> 0;
  }

  std::string to_string() const {
    if (exp_ == 0) return std::to_string(num_);
    return std::to_string(num_) + "/2^" + std::to_string(exp_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.to_string(); }

 private:
  void canonicalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
      num_ /= 2;
      --exp_;
    }
  }

  std::int64_t num_ = 0;
  std::uint32_t exp_ = 0;
};

}  // namespace optwit
