#pragma once

#include "optwit/dyadic.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <type_traits>

namespace optwit {

template <class T>
struct is_complex : std::false_type {};
template <class R>
struct is_complex<std::complex<R>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

// Scalars whose arithmetic never rounds.
template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Dyadic> || std::is_same_v<T, Rational>;

template <class T>
T conj_of(const T& v) {
  if constexpr (is_complex_v<T>) {
    return std::conj(v);
  } else {
    return v;
  }
}

// 2^-k in the scalar type T.
template <class T>
T inv_pow2(std::uint32_t k) {
  if constexpr (std::is_same_v<T, Dyadic>) {
    return Dyadic::inv_pow2(k);
  } else if constexpr (std::is_same_v<T, Rational>) {
    return Rational(1, std::int64_t{1} << k);
  } else {
    return T(std::ldexp(1.0, -static_cast<int>(k)));
  }
}

inline double to_double(double v) { return v; }
inline double to_double(const Dyadic& v) { return v.to_double(); }
inline double to_double(const Rational& v) {
  return static_cast<double>(v.numerator()) / static_cast<double>(v.denominator());
}

// Exact embedding of a Dyadic into T (rounded only for floating T).
template <class T>
T from_dyadic(const Dyadic& v) {
  if constexpr (std::is_same_v<T, Dyadic>) {
    return v;
  } else if constexpr (std::is_same_v<T, Rational>) {
    return v.to_rational();
  } else {
    return T(v.to_double());
  }
}

inline double abs_of(double v) { return std::abs(v); }
inline double abs_of(const std::complex<double>& v) { return std::abs(v); }

}  // namespace optwit
