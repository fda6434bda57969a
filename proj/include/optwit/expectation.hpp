#pragma once

#include "optwit/psi.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace optwit {

namespace detail {

template <class T>
void require_witness_dim(const Witness& w, const HermOp<T>& rho) {
  if (rho.dim() != w.dim())
    throw std::invalid_argument("expectation: witness has dimension " + std::to_string(w.dim()) +
                                ", state has dimension " + std::to_string(rho.dim()));
}

}  // namespace detail

// Tr(W rho), exact.
inline Dyadic expectation(const Witness& w, const DyadicOp& rho) {
  detail::require_witness_dim(w, rho);
  Dyadic acc;
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j) {
      const Dyadic& wij = w.matrix(i, j);
      if (!wij.is_zero()) acc += wij * rho(j, i);
    }
  return acc;
}

inline double expectation(const Witness& w, const RealOp& rho) {
  detail::require_witness_dim(w, rho);
  double acc = 0.0;
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j) {
      const Dyadic& wij = w.matrix(i, j);
      if (!wij.is_zero()) acc += wij.to_double() * rho(j, i);
    }
  return acc;
}

// Tr(W rho_t) = constant + t·slope for a state affine in t.
struct ExpectationLine {
  Dyadic constant;
  Dyadic slope;

  Dyadic value(const Dyadic& t) const { return constant + t * slope; }

  // Exact whenever t converts to a Dyadic without overflow; rounded once at the end.
  double value(double t) const {
    if (const auto exact_t = Dyadic::from_double(t)) {
      try {
        return value(*exact_t).to_double();
      } catch (const std::overflow_error&) {
      }
    }
    return constant.to_double() + t * slope.to_double();
  }
};

}  // namespace optwit
