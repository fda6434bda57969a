#pragma once

// Recursive positive maps Psi_N on the algebra of N-qubit operators and the
// entanglement witnesses W_N they induce.
//
// Writing X = sum_ij e_ij ⊗ X_ij with X_ij acting on N qubits, the step
// N -> N+1 is
//
//   Psi_{N+1}(X) = 2^-N [ 1·Tr X_22        -(X_12 + Psi_N(X_21)) ]
//                       [ -(X_21 + Psi_N(X_12))        1·Tr X_11 ]
//
// starting from the zero map Psi_0 on scalars. Psi_1 is the reduction map
// R(X) = 1·Tr X − X and Psi_2 the Robertson map. Every coefficient is 1 or a
// power of 1/2, so the recursion is exact over Dyadic scalars.

#include "optwit/hermop.hpp"
#include "optwit/parallel.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace optwit {

inline constexpr int kMaxQubits = 6;  // witness dimension 4^6 = 4096

class QubitCount {
 public:
  explicit QubitCount(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("qubit count must be non-negative, got " + std::to_string(n));
    if (n > kMaxQubits)
      throw std::invalid_argument("qubit count " + std::to_string(n) + " exceeds the supported ceiling of " +
                                  std::to_string(kMaxQubits));
  }
  int n() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  friend bool operator==(QubitCount, QubitCount) = default;

 private:
  int n_;
};

namespace detail {

// Writes Psi_N(in) into out, where in.dim = 2^N. O(d^2) scalar operations
// with no allocation; the only temporaries are the output blocks themselves.
template <class T>
void psi_into(ConstBlockRef<T> in, BlockRef<T> out) {
  const std::size_t d = in.dim;
  if (d == 1) {
    out(0, 0) = T{0};
    return;
  }
  const std::size_t h = d / 2;
  std::uint32_t level = 0;  // N with d = 2^(N+1)
  while ((std::size_t{2} << level) < d) ++level;
  const T scale = inv_pow2<T>(level);

  const auto x11 = in.sub(0, 0, h), x12 = in.sub(0, h, h), x21 = in.sub(h, 0, h), x22 = in.sub(h, h, h);
  auto y11 = out.sub(0, 0, h), y12 = out.sub(0, h, h), y21 = out.sub(h, 0, h), y22 = out.sub(h, h, h);

  psi_into(x21, y12);
  psi_into(x12, y21);

  const T d11 = scale * x22.trace();
  const T d22 = scale * x11.trace();
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < h; ++j) {
      y12(i, j) = -(scale * (x12(i, j) + y12(i, j)));
      y21(i, j) = -(scale * (x21(i, j) + y21(i, j)));
      y11(i, j) = (i == j) ? d11 : T{0};
      y22(i, j) = (i == j) ? d22 : T{0};
    }
  }
}

inline void require_dim(QubitCount n, std::size_t dim, const char* who) {
  if (dim != n.dim())
    throw std::invalid_argument(std::string(who) + ": expected dimension " + std::to_string(n.dim()) + " for N=" +
                                std::to_string(n.n()) + ", got " + std::to_string(dim));
}

}  // namespace detail

// Psi_N(X), matrix-free. Accepts non-Hermitian input; the output is flagged
// Hermitian exactly when the input is, since Psi_N(X†) = Psi_N(X)†.
template <class T>
HermOp<T> psi_apply(QubitCount n, const HermOp<T>& x) {
  detail::require_dim(n, x.dim(), "psi_apply");
  HermOp<T> y(x.dim());
  detail::psi_into(x.ref(), y.ref());
  if (x.hermitian()) y.mark_hermitian();
  return y;
}

// R(X) = 1·Tr X − X
template <class T>
HermOp<T> reduction_apply(const HermOp<T>& x) {
  HermOp<T> y(x.dim());
  const T tr = x.trace();
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < x.dim(); ++j) y(i, j) = (i == j ? tr : T{0}) - x(i, j);
  if (x.hermitian()) y.mark_hermitian();
  return y;
}

// Closed form of Psi_2 in terms of the reduction map on 2×2 blocks:
//   (1/2) [ 1·Tr X_22           -(X_12 + R(X_21)) ]
//         [ -(X_21 + R(X_12))           1·Tr X_11 ]
template <class T>
HermOp<T> robertson_apply(const HermOp<T>& x) {
  if (x.dim() != 4) throw std::invalid_argument("robertson_apply: expected a 4x4 operator");
  auto block = [&](std::size_t bi, std::size_t bj) {
    HermOp<T> b(2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) b(i, j) = x(2 * bi + i, 2 * bj + j);
    return b;
  };
  const HermOp<T> x11 = block(0, 0), x12 = block(0, 1), x21 = block(1, 0), x22 = block(1, 1);
  const HermOp<T> a = x12 + reduction_apply(x21);
  const HermOp<T> b = x21 + reduction_apply(x12);
  const T half = inv_pow2<T>(1);
  HermOp<T> y(4);
  for (std::size_t i = 0; i < 2; ++i) {
    y(i, i) = half * x22.trace();
    y(2 + i, 2 + i) = half * x11.trace();
    for (std::size_t j = 0; j < 2; ++j) {
      y(i, 2 + j) = -(half * a(i, j));
      y(2 + i, j) = -(half * b(i, j));
    }
  }
  if (x.hermitian()) y.mark_hermitian();
  return y;
}

// phi+ = sum_i e_i ⊗ e_i, unnormalized.
template <class T = Dyadic>
std::vector<T> max_entangled_vector(std::size_t d) {
  if (d == 0) throw std::invalid_argument("max_entangled_vector: d must be positive");
  std::vector<T> v(d * d, T{0});
  for (std::size_t i = 0; i < d; ++i) v[i * d + i] = T{1};
  return v;
}

template <class T>
std::vector<T> apply(const HermOp<T>& m, const std::vector<T>& v) {
  if (v.size() != m.dim()) throw std::invalid_argument("apply: dimension mismatch");
  std::vector<T> out(m.dim(), T{0});
  for (std::size_t i = 0; i < m.dim(); ++i) {
    T acc{0};
    for (std::size_t j = 0; j < m.dim(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

struct CoordinateEntry {
  std::size_t row;
  std::size_t col;
  Dyadic value;
};

// W_N = 2^-N sum_ij e_ij ⊗ Psi_N(e_ij), of dimension 4^N and unit trace.
struct Witness {
  QubitCount n;
  DyadicOp matrix;

  std::size_t dim() const { return matrix.dim(); }
  Dyadic normalization() const { return Dyadic::inv_pow2(static_cast<std::uint32_t>(n.n())); }

  // Row-major list of nonzeros.
  std::vector<CoordinateEntry> coordinates() const {
    std::vector<CoordinateEntry> out;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        if (!matrix(i, j).is_zero()) out.push_back({i, j, matrix(i, j)});
    return out;
  }
};

inline Witness build_witness(QubitCount n, unsigned threads = 1) {
  if (n.n() == 0) throw std::invalid_argument("build_witness: N must be at least 1");
  const std::size_t d = n.dim();
  DyadicOp w(d * d);
  const auto norm = static_cast<std::uint32_t>(n.n());
  // Each generator e_ij fills the disjoint block (i,j), so columns are independent.
  parallel_for(d * d, threads, [&](std::size_t g) {
    const std::size_t i = g / d, j = g % d;
    const DyadicOp image = psi_apply(n, DyadicOp::unit(d, i, j));
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) w(i * d + k, j * d + l) = image(k, l).scaled(norm);
  });
  w.mark_hermitian();
  return Witness{n, std::move(w)};
}

// Psi_N(X) read back from the Choi matrix: Psi_N(X)_kl = 2^N sum_ij X_ij W[(i,k),(j,l)].
template <class T>
HermOp<T> choi_apply(const Witness& w, const std::vector<CoordinateEntry>& coords, const HermOp<T>& x) {
  const std::size_t d = w.n.dim();
  detail::require_dim(w.n, x.dim(), "choi_apply");
  HermOp<T> y(d);
  const T scale = from_dyadic<T>(Dyadic(std::int64_t{1} << w.n.n()));
  for (const auto& e : coords) {
    const std::size_t i = e.row / d, k = e.row % d, j = e.col / d, l = e.col % d;
    y(k, l) += x(i, j) * from_dyadic<T>(e.value);
  }
  y *= scale;
  if (x.hermitian() && y.is_hermitian()) y.mark_hermitian();
  return y;
}

// Dense variant: the full Choi matrix is streamed, zeros included.
template <class T>
HermOp<T> choi_apply_dense(QubitCount n, const HermOp<double>& choi, const HermOp<T>& x) {
  const std::size_t d = n.dim();
  detail::require_dim(n, x.dim(), "choi_apply_dense");
  if (choi.dim() != d * d) throw std::invalid_argument("choi_apply_dense: Choi dimension mismatch");
  HermOp<T> y(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const T xij = x(i, j);
      for (std::size_t k = 0; k < d; ++k) {
        const double* row = &choi(i * d + k, j * d);
        for (std::size_t l = 0; l < d; ++l) y(k, l) += xij * row[l];
      }
    }
  y *= T(static_cast<double>(std::size_t{1} << n.n()));
  return y;
}

}  // namespace optwit
