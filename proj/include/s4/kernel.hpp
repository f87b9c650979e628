// SSM convolution kernels, two ways: an O(N^2 L) Krylov oracle on the dense
// system, and the fast path that evaluates the truncated generating function
// at the roots of unity (four Cauchy quadratic forms + Woodbury correction),
// then recovers the kernel with one inverse transform.
//
// Transform pairing: nodes are omega_k = exp(+2*pi*i*k/L) and the kernel is
// recovered as K_j = (1/L) sum_k Khat_k exp(-2*pi*i*j*k/L). Only the pairing
// matters; the round-trip tests pin it.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "s4/cauchy.hpp"
#include "s4/discretize.hpp"
#include "s4/scratch.hpp"
#include "s4/ssm.hpp"

namespace s4 {

struct ConvKernel {
  std::vector<double> k;
  double delta = 0.0;
  std::size_t length = 0;
};

// Roots of unity and the derived resolvent nodes g(omega). For even L the
// node omega = -1 is masked; its generating-function value has the closed
// form (delta/2) C~* B and is patched rather than divided by 1 + omega.
struct NodeGrid {
  scratch::vector<Complex> omega;
  scratch::vector<Complex> g;  // (2/delta)(1-omega)/(1+omega); 0 where masked
  std::vector<std::uint8_t> singular_mask;
  double delta = 0.0;

  std::size_t length() const { return omega.size(); }
};

NodeGrid make_node_grid(std::size_t l, double delta);

// Truncation-corrected output vector C~ = (I - Abar^L)* C.
struct CTilde {
  Vec v;
};

// The verification oracle: K_i = Re(Cbar* Abar^i Bbar) by iterated
// matrix-vector products.
ConvKernel krylov_kernel_naive(const DiscreteDense& disc, std::size_t l);

// C~ from C via dense Abar^L (binary exponentiation), and the inverse map.
CTilde c_tilde_from_c(const DplrSpec& spec, double delta, std::size_t l);
Vec c_from_c_tilde(const DplrSpec& spec, double delta, std::size_t l, const CTilde& ct);

// Dense reference path for the truncated generating function
// Cbar* (I - Abar^L z^L)(I - Abar z)^{-1} Bbar.
Complex truncated_generating_function(const DiscreteDense& disc, std::size_t l, Complex z);

// Woodbury-reduced generating function on a node grid, O(N) per node via the
// Cauchy primitive. Masked nodes receive the analytic value (delta/2) C~* B.
scratch::vector<Complex> gf_dplr_eval(const DplrSpec& spec, double delta, const CTilde& ct,
                                      const NodeGrid& nodes);

// The fast kernel: generating function at all roots of unity, inverse
// transform, real part. O(N L) work, O(N + L) auxiliary memory.
ConvKernel s4_kernel(const DplrSpec& spec, double delta, std::size_t l, const CTilde& ct);

// Causal convolution truncated to length L via zero-padded FFTs.
std::vector<double> convolve(const ConvKernel& kernel, std::span<const double> u);

// Relative l-inf distance, normalized by max |b| with a 1e-12 floor.
double rel_linf(std::span<const double> a, std::span<const double> b);

// Binary export: 16-byte header (magic "S4K1", u32 length, 8 reserved bytes),
// then length little-endian doubles. CSV export is (index,value) rows.
void write_kernel_binary(const ConvKernel& kernel, std::ostream& out);
ConvKernel read_kernel_binary(std::istream& in);
void write_kernel_csv(const ConvKernel& kernel, std::ostream& out);

// Dense matrix power by repeated squaring.
Mat matrix_power(const Mat& m, std::size_t e);

}  // namespace s4
