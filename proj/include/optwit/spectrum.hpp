#pragma once

#include "optwit/hermop.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace optwit {

// Ascending real eigenvalues plus the worst relative residual
// max_i ‖Mv_i − λ_i v_i‖ / ‖M‖ observed for the computed eigenvectors.
struct Spectrum {
  std::vector<double> eigenvalues;
  double residual_tol = 0.0;

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
  std::size_t count_below(double threshold) const {
    return static_cast<std::size_t>(
        std::count_if(eigenvalues.begin(), eigenvalues.end(), [&](double v) { return v < threshold; }));
  }
};

template <class T>
auto to_eigen(const HermOp<T>& m) {
  using S = std::conditional_t<is_complex_v<T>, std::complex<double>, double>;
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if constexpr (is_complex_v<T>) {
        out(i, j) = m(i, j);
      } else {
        out(i, j) = to_double(m(i, j));
      }
    }
  return out;
}

namespace detail {

template <class T>
void require_hermitian(const HermOp<T>& m, const char* who) {
  if (!m.hermitian()) throw std::invalid_argument(std::string(who) + ": operator is not flagged Hermitian");
  if (m.dim() == 0) throw std::invalid_argument(std::string(who) + ": empty operator");
}

}  // namespace detail

template <class T>
Spectrum hermitian_spectrum(const HermOp<T>& m) {
  detail::require_hermitian(m, "hermitian_spectrum");
  const auto a = to_eigen(m);
  using Mat = std::decay_t<decltype(a)>;
  Eigen::SelfAdjointEigenSolver<Mat> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_spectrum: eigensolver failed");
  Spectrum s;
  const auto& vals = solver.eigenvalues();
  s.eigenvalues.assign(vals.data(), vals.data() + vals.size());
  const double norm = std::max(vals.cwiseAbs().maxCoeff(), 1e-300);
  const Mat residual = a * solver.eigenvectors() - solver.eigenvectors() * vals.asDiagonal();
  s.residual_tol = residual.colwise().norm().maxCoeff() / norm;
  return s;
}

// Eigenvalues only (ascending); used where eigenvectors would be wasted work.
template <class T>
std::vector<double> hermitian_eigenvalues(const HermOp<T>& m) {
  detail::require_hermitian(m, "hermitian_eigenvalues");
  const auto a = to_eigen(m);
  using Mat = std::decay_t<decltype(a)>;
  Eigen::SelfAdjointEigenSolver<Mat> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  const auto& vals = solver.eigenvalues();
  return {vals.data(), vals.data() + vals.size()};
}

template <class T>
double min_eigenvalue(const HermOp<T>& m) {
  return hermitian_eigenvalues(m).front();
}

// Largest singular value.
template <class T>
double operator_norm(const HermOp<T>& m) {
  if (m.dim() == 0) return 0.0;
  const auto a = to_eigen(m);
  using Mat = std::decay_t<decltype(a)>;
  if (m.hermitian()) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

}  // namespace optwit
