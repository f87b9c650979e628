// Cauchy kernel primitive: sums of v_j / (omega_i - lambda_j) over all nodes.
// Only the naive streamed product is implemented; the backend enum leaves a
// slot for a fast-multipole variant.
#pragma once

#include <complex>
#include <span>

#include "s4/errors.hpp"
#include "s4/scratch.hpp"

namespace s4::cauchy {

using Complex = std::complex<double>;
using Buffer = scratch::vector<Complex>;

enum class Backend { Naive };

// Evaluation nodes and poles. Construction validates the separation
// invariant: every |omega_i - lambda_j| >= 1e-12.
struct CauchyNodes {
  CauchyNodes(Buffer omega_in, Buffer lambda_in);

  Buffer omega;   // M evaluation nodes
  Buffer lambda;  // N poles

  std::size_t nodes() const { return omega.size(); }
  std::size_t poles() const { return lambda.size(); }
};

// w_i = sum_j v_j / (omega_i - lambda_j). Accumulation is pole-index
// ascending per node, so results are identical under node parallelism.
Buffer cauchy_matvec_naive(const CauchyNodes& nodes, std::span<const Complex> v,
                           Backend backend = Backend::Naive);

// Fused quadratic form w_i = sum_j conj(a_j) b_j / (omega_i - lambda_j);
// equal to cauchy_matvec_naive(nodes, conj(a) .* b).
Buffer cauchy_quad(const CauchyNodes& nodes, std::span<const Complex> a,
                   std::span<const Complex> b, Backend backend = Backend::Naive);

// All pairwise quadratic forms between the `left` and `right` vector families
// in one streamed pass; out[s * right.size() + t] holds the form for
// (left[s], right[t]) over all nodes. One reciprocal per node/pole pair is
// shared across the pairs, which is what makes the kernel's four multiplies
// cheap. Auxiliary space stays O(M + N).
using QuadBlock = std::vector<Buffer>;
QuadBlock cauchy_quad_block(const CauchyNodes& nodes,
                            std::span<const std::span<const Complex>> left,
                            std::span<const std::span<const Complex>> right,
                            Backend backend = Backend::Naive);

}  // namespace s4::cauchy
