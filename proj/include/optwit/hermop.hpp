#pragma once

#include "optwit/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace optwit {

// Strided square view into row-major storage.
template <class T>
struct BlockRef {
  T* data = nullptr;
  std::size_t stride = 0;
  std::size_t dim = 0;

  T& operator()(std::size_t i, std::size_t j) const { return data[i * stride + j]; }
  BlockRef sub(std::size_t row, std::size_t col, std::size_t d) const {
    return {data + row * stride + col, stride, d};
  }
};

template <class T>
struct ConstBlockRef {
  const T* data = nullptr;
  std::size_t stride = 0;
  std::size_t dim = 0;

  ConstBlockRef() = default;
  ConstBlockRef(const T* p, std::size_t s, std::size_t d) : data(p), stride(s), dim(d) {}
  ConstBlockRef(BlockRef<T> b) : data(b.data), stride(b.stride), dim(b.dim) {}  // NOLINT

  const T& operator()(std::size_t i, std::size_t j) const { return data[i * stride + j]; }
  ConstBlockRef sub(std::size_t row, std::size_t col, std::size_t d) const {
    return {data + row * stride + col, stride, d};
  }
  T trace() const {
    T t{0};
    for (std::size_t i = 0; i < dim; ++i) t += (*this)(i, i);
    return t;
  }
};

// Dense square operator in the canonical basis, row-major, 0-based.
//
// The hermitian flag is a checked claim: mark_hermitian() verifies the
// entries (exactly for exact scalars, within 1e-12 for floating ones) and
// throws if they are not conjugate-symmetric.
template <class T>
class HermOp {
 public:
  using value_type = T;

  HermOp() = default;
  explicit HermOp(std::size_t dim) : dim_(dim), entries_(dim * dim, T{0}) {}

  HermOp(std::initializer_list<std::initializer_list<T>> rows) : HermOp(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != dim_) throw std::invalid_argument("HermOp: rows must form a square grid");
      std::size_t j = 0;
      for (const auto& v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static HermOp identity(std::size_t dim) {
    HermOp m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = T{1};
    m.hermitian_ = true;
    return m;
  }

  // e_ij with 0-based indices.
  static HermOp unit(std::size_t dim, std::size_t i, std::size_t j) {
    HermOp m(dim);
    m(i, j) = T{1};
    m.hermitian_ = (i == j);
    return m;
  }

  static HermOp diagonal(const std::vector<T>& diag) {
    HermOp m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    if constexpr (!is_complex_v<T>) m.hermitian_ = true;
    return m;
  }

  std::size_t dim() const { return dim_; }
  bool hermitian() const { return hermitian_; }

  T& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  std::span<T> entries() { return entries_; }
  std::span<const T> entries() const { return entries_; }

  BlockRef<T> ref() { return {entries_.data(), dim_, dim_}; }
  ConstBlockRef<T> ref() const { return {entries_.data(), dim_, dim_}; }

  bool is_hermitian(double tol = 1e-12) const {
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = i; j < dim_; ++j) {
        if constexpr (is_exact_v<T>) {
          if ((*this)(i, j) != conj_of((*this)(j, i))) return false;
        } else {
          if (abs_of((*this)(i, j) - conj_of((*this)(j, i))) > tol) return false;
        }
      }
    }
    return true;
  }

  HermOp& mark_hermitian() {
    if (!is_hermitian()) throw std::domain_error("HermOp: entries are not conjugate-symmetric");
    hermitian_ = true;
    return *this;
  }
  HermOp& clear_hermitian() {
    hermitian_ = false;
    return *this;
  }

  T trace() const { return ref().trace(); }

  std::size_t nonzeros() const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](const T& v) { return v != T{0}; }));
  }

  template <class F>
  auto map(F&& f) const -> HermOp<std::invoke_result_t<F, const T&>> {
    using U = std::invoke_result_t<F, const T&>;
    HermOp<U> out(dim_);
    std::transform(entries_.begin(), entries_.end(), out.entries().begin(), f);
    return out;
  }

  HermOp& operator+=(const HermOp& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    hermitian_ = hermitian_ && o.hermitian_;
    return *this;
  }
  HermOp& operator-=(const HermOp& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    hermitian_ = hermitian_ && o.hermitian_;
    return *this;
  }
  HermOp& operator*=(const T& s) {
    for (auto& v : entries_) v *= s;
    if constexpr (is_complex_v<T>) {
      if (s.imag() != 0) hermitian_ = false;
    }
    return *this;
  }

  friend HermOp operator+(HermOp a, const HermOp& b) { return a += b; }
  friend HermOp operator-(HermOp a, const HermOp& b) { return a -= b; }
  friend HermOp operator*(const T& s, HermOp a) { return a *= s; }

  // Entry equality; the hermitian flag is metadata and does not participate.
  friend bool operator==(const HermOp& a, const HermOp& b) { return a.dim_ == b.dim_ && a.entries_ == b.entries_; }

 private:
  void require_same_dim(const HermOp& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("HermOp: dimension mismatch");
  }

  std::size_t dim_ = 0;
  std::vector<T> entries_;
  bool hermitian_ = false;
};

using RealOp = HermOp<double>;
using ComplexOp = HermOp<std::complex<double>>;
using DyadicOp = HermOp<Dyadic>;

template <class T>
HermOp<double> to_double(const HermOp<T>& m) {
  HermOp<double> out = m.map([](const T& v) { return to_double(v); });
  if (m.hermitian()) out.mark_hermitian();
  return out;
}

// Four m×m quadrants of a 2m×2m operator.
template <class T>
class BlockView {
 public:
  explicit BlockView(const HermOp<T>& parent) : parent_(&parent) {
    if (parent.dim() % 2 != 0) throw std::invalid_argument("BlockView: parent dimension must be even");
  }

  std::size_t half() const { return parent_->dim() / 2; }
  ConstBlockRef<T> x11() const { return parent_->ref().sub(0, 0, half()); }
  ConstBlockRef<T> x12() const { return parent_->ref().sub(0, half(), half()); }
  ConstBlockRef<T> x21() const { return parent_->ref().sub(half(), 0, half()); }
  ConstBlockRef<T> x22() const { return parent_->ref().sub(half(), half(), half()); }

  HermOp<T> reassemble() const {
    const std::size_t h = half();
    HermOp<T> out(2 * h);
    const ConstBlockRef<T> blocks[2][2] = {{x11(), x12()}, {x21(), x22()}};
    for (std::size_t bi = 0; bi < 2; ++bi)
      for (std::size_t bj = 0; bj < 2; ++bj)
        for (std::size_t i = 0; i < h; ++i)
          for (std::size_t j = 0; j < h; ++j) out(bi * h + i, bj * h + j) = blocks[bi][bj](i, j);
    if (parent_->hermitian()) out.mark_hermitian();
    return out;
  }

 private:
  const HermOp<T>* parent_;
};

// Entry ((i·n+k),(j·n+l)) = A[i][j]·B[k][l].
template <class T>
HermOp<T> kron(const HermOp<T>& a, const HermOp<T>& b) {
  const std::size_t m = a.dim(), n = b.dim();
  HermOp<T> out(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const T& aij = a(i, j);
      if (aij == T{0}) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(i * n + k, j * n + l) = aij * b(k, l);
    }
  if (a.hermitian() && b.hermitian()) out.mark_hermitian();
  return out;
}

template <class T>
HermOp<T> transpose(const HermOp<T>& m) {
  HermOp<T> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(j, i) = m(i, j);
  if (m.hermitian()) out.mark_hermitian();
  return out;
}

template <class T>
HermOp<T> adjoint(const HermOp<T>& m) {
  HermOp<T> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(j, i) = conj_of(m(i, j));
  if (m.hermitian()) out.mark_hermitian();
  return out;
}

// Transpose on the second tensor factor: output block (i,j) = (input block (i,j))^T.
template <class T>
HermOp<T> partial_transpose(const HermOp<T>& m, std::size_t d) {
  if (d == 0 || m.dim() != d * d)
    throw std::invalid_argument("partial_transpose: dimension " + std::to_string(m.dim()) + " is not " +
                                std::to_string(d) + "^2");
  HermOp<T> out(m.dim());
  for (std::size_t bi = 0; bi < d; ++bi)
    for (std::size_t bj = 0; bj < d; ++bj)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) out(bi * d + k, bj * d + l) = m(bi * d + l, bj * d + k);
  if (m.hermitian()) out.mark_hermitian();
  return out;
}

// Transpose on the first tensor factor.
template <class T>
HermOp<T> partial_transpose_first(const HermOp<T>& m, std::size_t d) {
  if (d == 0 || m.dim() != d * d) throw std::invalid_argument("partial_transpose_first: dimension mismatch");
  HermOp<T> out(m.dim());
  for (std::size_t bi = 0; bi < d; ++bi)
    for (std::size_t bj = 0; bj < d; ++bj)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) out(bi * d + k, bj * d + l) = m(bj * d + k, bi * d + l);
  if (m.hermitian()) out.mark_hermitian();
  return out;
}

}  // namespace optwit
