#pragma once

// One-parameter family of (unnormalized) PPT-entangled candidates rho_t on
// N+N qubits, N >= 2. With d = 2^N, h = d/2 and W_ij = 2^-N Psi_N(e_ij), the
// d×d blocks are
//
//   rho_ii          = 2^-N·1 − (h − 1)·W_ii
//   rho_ij          = 0                        i ≠ j in the same half
//   rho_{i,i±h}     = −t·W_{i,i±h}
//   rho_ij          = 2^-(2N−1)·e_ij            other cross-half blocks
//
// rho_t is affine in t, so it is stored as constant + t·slope.

#include "optwit/expectation.hpp"
#include "optwit/parallel.hpp"
#include "optwit/psi.hpp"
#include "optwit/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace optwit {

struct AffineOp {
  DyadicOp constant;
  DyadicOp slope;

  DyadicOp at(const Dyadic& t) const {
    DyadicOp out = constant + t * slope;
    out.mark_hermitian();
    return out;
  }

  RealOp at(double t) const {
    RealOp out(constant.dim());
    for (std::size_t i = 0; i < out.dim(); ++i)
      for (std::size_t j = 0; j < out.dim(); ++j)
        out(i, j) = constant(i, j).to_double() + t * slope(i, j).to_double();
    out.mark_hermitian();
    return out;
  }
};

inline void require_state_qubits(QubitCount n, const char* who) {
  if (n.n() < 2) throw std::invalid_argument(std::string(who) + ": requires N >= 2, got " + std::to_string(n.n()));
}

inline AffineOp rho_affine(QubitCount n) {
  require_state_qubits(n, "rho_t");
  const std::size_t d = n.dim(), h = d / 2;
  const auto big_n = static_cast<std::uint32_t>(n.n());
  AffineOp rho{DyadicOp(d * d), DyadicOp(d * d)};

  auto w_block = [&](std::size_t i, std::size_t j) {
    DyadicOp b = psi_apply(n, DyadicOp::unit(d, i, j));
    for (auto& v : b.entries()) v = v.scaled(big_n);
    return b;
  };
  auto put = [&](DyadicOp& target, std::size_t bi, std::size_t bj, const DyadicOp& block) {
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) target(bi * d + k, bj * d + l) = block(k, l);
  };

  const Dyadic diag_shift = Dyadic::inv_pow2(big_n);
  const Dyadic diag_weight = Dyadic(static_cast<std::int64_t>(h) - 1);
  const Dyadic cross = Dyadic::inv_pow2(2 * big_n - 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const bool same_half = (i < h) == (j < h);
      if (i == j) {
        DyadicOp b = w_block(i, i);
        b *= -diag_weight;
        for (std::size_t k = 0; k < d; ++k) b(k, k) += diag_shift;
        put(rho.constant, i, j, b);
      } else if (same_half) {
        continue;
      } else if (j == i + h || i == j + h) {
        DyadicOp b = w_block(i, j);
        b *= Dyadic(-1);
        put(rho.slope, i, j, b);
      } else {
        rho.constant(i * d + i, j * d + j) = cross;
      }
    }
  }
  rho.constant.mark_hermitian();
  rho.slope.mark_hermitian();
  return rho;
}

inline DyadicOp rho_t(QubitCount n, const Dyadic& t) { return rho_affine(n).at(t); }
inline RealOp rho_t(QubitCount n, double t) { return rho_affine(n).at(t); }

struct PptEigs {
  double min_eig_rho;
  double min_eig_rho_gamma;
};

inline PptEigs ppt_min_eigs(const AffineOp& rho, std::size_t d, double t) {
  const RealOp m = rho.at(t);
  return {min_eigenvalue(m), min_eigenvalue(partial_transpose(m, d))};
}

inline PptEigs ppt_min_eigs(QubitCount n, double t) { return ppt_min_eigs(rho_affine(n), n.dim(), t); }

// Tr(W_N rho_t) = (−4t(2^N + 4) + 2^(N+2)) / 2^(4N), exact.
inline Dyadic witness_closed_form(QubitCount n, const Dyadic& t) {
  const std::int64_t two_n = std::int64_t{1} << n.n();
  const Dyadic numer = Dyadic(-4) * t * Dyadic(two_n + 4) + Dyadic(two_n * 4);
  return numer.scaled(static_cast<std::uint32_t>(4 * n.n()));
}

inline double witness_closed_form(QubitCount n, double t) {
  const double two_n = std::ldexp(1.0, n.n());
  return (-4.0 * t * (two_n + 4.0) + 4.0 * two_n) / std::ldexp(1.0, 4 * n.n());
}

struct SweepRow {
  double t;
  double min_eig_rho;
  double min_eig_rho_gamma;
  double witness_value;
  double witness_formula;
};

inline void validate_grid(double t_min, double t_max, int steps) {
  if (!std::isfinite(t_min) || !std::isfinite(t_max)) throw std::invalid_argument("sweep: grid bounds must be finite");
  if (steps < 2) throw std::invalid_argument("sweep: steps must be at least 2, got " + std::to_string(steps));
  if (!(t_min < t_max)) throw std::invalid_argument("sweep: t_min must be strictly below t_max");
}

// Uniform grid t_k = t_min + (t_max − t_min)·k/(steps − 1), endpoints included.
inline std::vector<double> sweep_grid(double t_min, double t_max, int steps) {
  validate_grid(t_min, t_max, steps);
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) grid[k] = t_min + (t_max - t_min) * k / (steps - 1);
  grid.back() = t_max;
  return grid;
}

inline std::vector<SweepRow> sweep(QubitCount n, double t_min, double t_max, int steps, unsigned threads = 1) {
  require_state_qubits(n, "sweep");
  const std::vector<double> grid = sweep_grid(t_min, t_max, steps);
  const AffineOp rho = rho_affine(n);
  const Witness w = build_witness(n);
  const ExpectationLine line{expectation(w, rho.constant), expectation(w, rho.slope)};
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    const double t = grid[k];
    const PptEigs eigs = ppt_min_eigs(rho, n.dim(), t);
    rows[k] = {t, eigs.min_eig_rho, eigs.min_eig_rho_gamma, line.value(t), witness_closed_form(n, t)};
  });
  return rows;
}

inline constexpr const char* kSweepHeader = "t,min_eig_rho,min_eig_rho_gamma,witness_value,witness_formula";

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepHeader << '\n';
  for (const auto& r : rows)
    os << format_real(r.t) << ',' << format_real(r.min_eig_rho) << ',' << format_real(r.min_eig_rho_gamma) << ','
       << format_real(r.witness_value) << ',' << format_real(r.witness_formula) << '\n';
}

}  // namespace optwit
