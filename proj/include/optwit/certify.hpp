#pragma once

#include "optwit/expectation.hpp"
#include "optwit/parallel.hpp"
#include "optwit/psi.hpp"
#include "optwit/spectrum.hpp"
#include "optwit/states.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace optwit {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// A certificate that should hold did not. Carries the report field at fault.
class CertificateError : public std::runtime_error {
 public:
  CertificateError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kZeroViolationTolerance = 1e-12;
inline constexpr double kRankThreshold = 1e-8;

// --- witness spectrum -------------------------------------------------------

struct WitnessSpectrumCheck {
  double min_eig;
  std::size_t negative_count;  // eigenvalues below −kPsdTolerance
  bool phi_plus_exact;         // W·phi+ = −2^-N·phi+ in exact arithmetic
};

inline WitnessSpectrumCheck check_witness_spectrum(const Witness& w) {
  const std::vector<double> eig = hermitian_eigenvalues(w.matrix);
  std::size_t negative = 0;
  for (double v : eig)
    if (v < -kPsdTolerance) ++negative;
  const auto phi = max_entangled_vector<Dyadic>(w.n.dim());
  const auto image = apply(w.matrix, phi);
  const Dyadic shift = -w.normalization();
  bool exact = true;
  for (std::size_t k = 0; k < phi.size(); ++k) exact = exact && image[k] == shift * phi[k];
  return {eig.front(), negative, exact};
}

// --- detection --------------------------------------------------------------

// rho_t is detected exactly for t in (lower, upper].
struct DetectionInterval {
  Rational lower;
  Rational upper;
};

inline DetectionInterval detection_threshold(QubitCount n) {
  require_state_qubits(n, "detection_threshold");
  const std::int64_t two_n = std::int64_t{1} << n.n();
  return {Rational(two_n, two_n + 4), Rational(1)};
}

struct IndecomposabilityPoint {
  Dyadic t;
  Dyadic witness_value;
  double ppt_min_eig;
};

// At t = 1, rho_t must be PPT while Tr(W_N rho_t) < 0.
inline IndecomposabilityPoint indecomposability_certificate(const Witness& w) {
  require_state_qubits(w.n, "indecomposability_certificate");
  const AffineOp rho = rho_affine(w.n);
  const Dyadic t(1);
  const Dyadic value = expectation(w, rho.at(t));
  const double ppt = min_eigenvalue(partial_transpose(rho.at(1.0), w.n.dim()));
  if (!(value < Dyadic(0)))
    throw CertificateError("indecomposability_point", "witness value " + value.to_string() + " is not negative");
  if (ppt < -kPsdTolerance)
    throw CertificateError("indecomposability_point", "state is not PPT, min eigenvalue " + format_real(ppt));
  return {t, value, ppt};
}

inline IndecomposabilityPoint indecomposability_certificate(QubitCount n) {
  require_state_qubits(n, "indecomposability_certificate");
  return indecomposability_certificate(build_witness(n));
}

// --- optimality -------------------------------------------------------------

// psi_a ⊗ conj(psi_a) for psi_a in {e_l} ∪ {e_m + e_n} ∪ {e_m + i·e_n}, m < n ≤ 2^N.
struct ProductVectorSet {
  QubitCount n;
  std::vector<CVector> generators;
  std::vector<CVector> vectors;
};

inline CVector product_with_conjugate(const CVector& psi) {
  CVector v(psi.size() * psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) v[i * psi.size() + j] = psi[i] * std::conj(psi[j]);
  return v;
}

inline ProductVectorSet spanning_family(QubitCount n) {
  if (n.n() < 1) throw std::invalid_argument("spanning_family: requires N >= 1");
  const std::size_t d = n.dim();
  ProductVectorSet set{n, {}, {}};
  set.generators.reserve(d * d);
  auto basis = [d](std::size_t l) {
    CVector e(d, Complex{0.0});
    e[l] = 1.0;
    return e;
  };
  for (std::size_t l = 0; l < d; ++l) set.generators.push_back(basis(l));
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t k = m + 1; k < d; ++k) {
      CVector f = basis(m);
      f[k] = 1.0;
      set.generators.push_back(std::move(f));
    }
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t k = m + 1; k < d; ++k) {
      CVector g = basis(m);
      g[k] = Complex{0.0, 1.0};
      set.generators.push_back(std::move(g));
    }
  for (const auto& g : set.generators) set.vectors.push_back(product_with_conjugate(g));
  return set;
}

// <v|W|v> over the sparse entries of W.
inline Complex quadratic_form(const std::vector<CoordinateEntry>& coords, const CVector& v) {
  Complex acc{0.0};
  for (const auto& e : coords) acc += std::conj(v[e.row]) * e.value.to_double() * v[e.col];
  return acc;
}

struct OptimalityCertificate {
  std::size_t rank;
  double max_zero_violation;  // max_a |<v_a|W|v_a>| / ‖psi_a‖^4
  double sigma_min;
  double sigma_max;
};

inline OptimalityCertificate optimality_certificate(const Witness& w) {
  const ProductVectorSet set = spanning_family(w.n);
  const auto coords = w.coordinates();
  const std::size_t dim = w.dim();

  Eigen::MatrixXcd stacked(set.vectors.size(), dim);
  double violation = 0.0;
  for (std::size_t a = 0; a < set.vectors.size(); ++a) {
    const CVector& v = set.vectors[a];
    double norm2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      stacked(a, k) = v[k];
      norm2 += std::norm(v[k]);
    }
    violation = std::max(violation, std::abs(quadratic_form(coords, v)) / norm2);
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(stacked);
  const auto& sv = svd.singularValues();
  const double cut = kRankThreshold * sv(0);
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > cut) ++rank;

  OptimalityCertificate cert{rank, violation, sv(sv.size() - 1), sv(0)};
  if (rank != dim)
    throw CertificateError("optimality_rank", "product zeros span rank " + std::to_string(rank) + " of " +
                                                  std::to_string(dim));
  if (violation > kZeroViolationTolerance)
    throw CertificateError("max_zero_violation", "product vector expectation " + format_real(violation) +
                                                     " exceeds tolerance");
  return cert;
}

// --- structural physical approximation --------------------------------------

struct SpaResult {
  Rational p_star;
  HermOp<Rational> state;  // p*/4^N·1 + (1 − p*)·W, unit trace
  double spa_min_eig;
  Rational spa_trace;
  double spa_ppt_min_eig;
  double xi_min;  // smallest eigenvalue of W (floating)
  bool corollary_holds;
};

inline SpaResult spa(const Witness& w) {
  const WitnessSpectrumCheck spectrum = check_witness_spectrum(w);
  const std::int64_t two_n = std::int64_t{1} << w.n.n();
  const std::int64_t dim = two_n * two_n;
  // The minimum is the phi+ eigenvalue −2^-N; the floating solve must agree.
  const Rational xi(-1, two_n);
  const bool xi_consistent = spectrum.phi_plus_exact && std::abs(spectrum.min_eig - to_double(xi)) <= kPsdTolerance;
  // Smallest p with p/dim + (1 − p)·xi >= 0.
  const Rational p_star = -xi * dim / (Rational(1) - xi * dim);

  HermOp<Rational> state(w.dim());
  const Rational keep = Rational(1) - p_star;
  const Rational noise = p_star / dim;
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j) {
      const Dyadic& v = w.matrix(i, j);
      state(i, j) = v.is_zero() ? Rational(0) : keep * v.to_rational();
      if (i == j) state(i, j) += noise;
    }
  state.mark_hermitian();

  const bool unital = psi_apply(w.n, DyadicOp::identity(w.n.dim())) == DyadicOp::identity(w.n.dim());
  SpaResult r{p_star,
              std::move(state),
              0.0,
              Rational(0),
              0.0,
              spectrum.min_eig,
              unital && xi_consistent && xi <= Rational(-1, two_n)};
  r.spa_trace = r.state.trace();
  const RealOp floating = to_double(r.state);
  r.spa_min_eig = min_eigenvalue(floating);
  r.spa_ppt_min_eig = min_eigenvalue(partial_transpose(floating, w.n.dim()));
  return r;
}

// --- see-saw probe of block positivity --------------------------------------

struct ProbeResult {
  double min_value = std::numeric_limits<double>::infinity();
  CVector psi;  // first factor
  CVector phi;  // second factor
  std::size_t best_restart = 0;
  // Objective after every half-step, per restart (filled when requested).
  // A NaN marks a resample after a degenerate contraction.
  std::vector<std::vector<double>> histories;
};

namespace detail {

inline CVector random_unit_vector(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector v(d);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& x : v) {
      x = Complex{gauss(rng), gauss(rng)};
      norm2 += std::norm(x);
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

// M_ij = <e_i ⊗ phi|W|e_j ⊗ phi> when contracting the second factor,
// M_kl = <psi ⊗ e_k|W|psi ⊗ e_l> when contracting the first.
inline Eigen::MatrixXcd contract(const std::vector<CoordinateEntry>& coords, std::size_t d, const CVector& fixed,
                                 bool fixed_is_second) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& e : coords) {
    const std::size_t i = e.row / d, k = e.row % d, j = e.col / d, l = e.col % d;
    const double w = e.value.to_double();
    if (fixed_is_second) {
      m(i, j) += std::conj(fixed[k]) * w * fixed[l];
    } else {
      m(k, l) += std::conj(fixed[i]) * w * fixed[j];
    }
  }
  return m;
}

struct HalfStep {
  double value;
  CVector vector;
};

inline std::optional<HalfStep> minimize_factor(const Eigen::MatrixXcd& m) {
  if (m.cwiseAbs().maxCoeff() < 1e-14) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  const Eigen::VectorXcd v = solver.eigenvectors().col(0);
  return HalfStep{solver.eigenvalues()(0), CVector(v.data(), v.data() + v.size())};
}

}  // namespace detail

// Alternating minimization of <psi ⊗ phi|W|psi ⊗ phi> over unit vectors.
// Restart r draws from a stream seeded by (seed, r), so results do not
// depend on the thread count. A value below zero would falsify block
// positivity; a nonnegative result proves nothing.
inline ProbeResult blockpos_probe(const Witness& w, int restarts, int iters, std::uint64_t seed, unsigned threads = 1,
                                  bool record_history = false) {
  if (restarts < 1 || iters < 1) throw std::invalid_argument("blockpos_probe: restarts and iters must be >= 1");
  const std::size_t d = w.n.dim();
  const auto coords = w.coordinates();

  struct RestartOutcome {
    double value = std::numeric_limits<double>::infinity();
    CVector psi, phi;
    std::vector<double> history;
  };
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));

  parallel_for(outcomes.size(), threads, [&](std::size_t r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    RestartOutcome& out = outcomes[r];
    CVector psi = detail::random_unit_vector(d, rng);
    CVector phi = detail::random_unit_vector(d, rng);
    constexpr int kMaxResamples = 100;
    int resamples = 0;
    for (int it = 0; it < iters; ++it) {
      auto first = detail::minimize_factor(detail::contract(coords, d, phi, true));
      if (!first) {
        if (++resamples > kMaxResamples) break;
        phi = detail::random_unit_vector(d, rng);
        if (record_history) out.history.push_back(std::numeric_limits<double>::quiet_NaN());
        --it;
        continue;
      }
      psi = std::move(first->vector);
      if (record_history) out.history.push_back(first->value);
      auto second = detail::minimize_factor(detail::contract(coords, d, psi, false));
      if (!second) {
        if (++resamples > kMaxResamples) break;
        phi = detail::random_unit_vector(d, rng);
        if (record_history) out.history.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      phi = std::move(second->vector);
      if (record_history) out.history.push_back(second->value);
      out.value = second->value;
    }
    out.psi = psi;
    out.phi = phi;
  });

  ProbeResult result;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    if (outcomes[r].value < result.min_value) {
      result.min_value = outcomes[r].value;
      result.psi = outcomes[r].psi;
      result.phi = outcomes[r].phi;
      result.best_restart = r;
    }
    if (record_history) result.histories.push_back(std::move(outcomes[r].history));
  }
  return result;
}

// <psi ⊗ phi|W|psi ⊗ phi>
inline double product_expectation(const Witness& w, const CVector& psi, const CVector& phi) {
  CVector v(psi.size() * phi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t k = 0; k < phi.size(); ++k) v[i * phi.size() + k] = psi[i] * phi[k];
  return quadratic_form(w.coordinates(), v).real();
}

// --- aggregate report -------------------------------------------------------

struct SpaSummary {
  Rational p_star;
  double spa_min_eig;
  Rational spa_trace;
  double spa_ppt_min_eig;
  bool corollary_holds;
};

struct CertReport {
  int n = 0;
  double witness_min_eig = 0.0;
  std::size_t negative_eig_count = 0;
  std::size_t optimality_rank = 0;
  double max_zero_violation = 0.0;
  // Empty for N = 1: the reduction map is decomposable.
  std::optional<DetectionInterval> detection_threshold;
  std::optional<IndecomposabilityPoint> indecomposability_point;
  SpaSummary spa;
};

// Runs every certificate for W_N; throws CertificateError naming the first
// field that fails.
inline CertReport certify(QubitCount n) {
  const Witness w = build_witness(n);
  CertReport report;
  report.n = n.n();

  const WitnessSpectrumCheck spectrum = check_witness_spectrum(w);
  report.witness_min_eig = spectrum.min_eig;
  report.negative_eig_count = spectrum.negative_count;
  if (!spectrum.phi_plus_exact)
    throw CertificateError("witness_min_eig", "phi+ is not an exact eigenvector with eigenvalue -2^-N");
  if (spectrum.negative_count != 1)
    throw CertificateError("negative_eig_count", "expected exactly one negative eigenvalue, found " +
                                                     std::to_string(spectrum.negative_count));
  if (std::abs(spectrum.min_eig + to_double(w.normalization())) > kPsdTolerance)
    throw CertificateError("witness_min_eig", "minimum eigenvalue " + format_real(spectrum.min_eig) +
                                                  " differs from -2^-N");

  const OptimalityCertificate opt = optimality_certificate(w);
  report.optimality_rank = opt.rank;
  report.max_zero_violation = opt.max_zero_violation;

  if (n.n() >= 2) {
    report.detection_threshold = detection_threshold(n);
    report.indecomposability_point = indecomposability_certificate(w);
  }

  const SpaResult s = spa(w);
  report.spa = {s.p_star, s.spa_min_eig, s.spa_trace, s.spa_ppt_min_eig, s.corollary_holds};
  if (s.spa_trace != Rational(1)) throw CertificateError("spa.spa_trace", "trace is not exactly 1");
  if (s.spa_min_eig < -kPsdTolerance) throw CertificateError("spa.spa_min_eig", "SPA state is not PSD");
  if (s.spa_ppt_min_eig < -kPsdTolerance) throw CertificateError("spa.spa_ppt_min_eig", "SPA state is not PPT");
  if (!s.corollary_holds) throw CertificateError("spa.corollary_holds", "eigenvalue hypothesis fails");
  return report;
}

}  // namespace optwit
