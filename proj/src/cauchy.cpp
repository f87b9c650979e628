#include "s4/cauchy.hpp"

#include <algorithm>
#include <string>

#include "s4/parallel.hpp"

namespace s4::cauchy {

CauchyNodes::CauchyNodes(Buffer omega_in, Buffer lambda_in)
    : omega(std::move(omega_in)), lambda(std::move(lambda_in)) {
  // Separation check on squared distances; the sqrt would dominate the whole
  // naive product otherwise.
  constexpr double kMinSq = 1e-12 * 1e-12;
  scratch::vector<double> lr(lambda.size()), li(lambda.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    lr[j] = lambda[j].real();
    li[j] = lambda[j].imag();
  }
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const double wr = omega[i].real();
    const double wi = omega[i].imag();
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      const double dr = wr - lr[j];
      const double di = wi - li[j];
      if (dr * dr + di * di < kMinSq)
        throw SingularKernelError("node " + std::to_string(i) + " coincides with pole " +
                                      std::to_string(j),
                                  i, j);
    }
  }
}

namespace {

template <class Term>
Buffer evaluate(const CauchyNodes& nodes, Term term) {
  const std::size_t m = nodes.nodes();
  const std::size_t n = nodes.poles();
  Buffer out(m);
  const Complex* omega = nodes.omega.data();
  const Complex* lambda = nodes.lambda.data();
  parallel::for_each_index(0, m, [&](std::size_t i) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) acc += term(j) / (omega[i] - lambda[j]);
    out[i] = acc;
  });
  return out;
}

void check_length(std::size_t got, std::size_t want, const char* name) {
  if (got != want)
    throw ContractError(std::string(name) + " has length " + std::to_string(got) +
                        ", expected " + std::to_string(want));
}

}  // namespace

Buffer cauchy_matvec_naive(const CauchyNodes& nodes, std::span<const Complex> v,
                           Backend /*backend*/) {
  check_length(v.size(), nodes.poles(), "v");
  return evaluate(nodes, [&](std::size_t j) { return v[j]; });
}

Buffer cauchy_quad(const CauchyNodes& nodes, std::span<const Complex> a,
                   std::span<const Complex> b, Backend /*backend*/) {
  check_length(a.size(), nodes.poles(), "a");
  check_length(b.size(), nodes.poles(), "b");
  return evaluate(nodes, [&](std::size_t j) { return std::conj(a[j]) * b[j]; });
}

QuadBlock cauchy_quad_block(const CauchyNodes& nodes,
                            std::span<const std::span<const Complex>> left,
                            std::span<const std::span<const Complex>> right,
                            Backend /*backend*/) {
  const std::size_t m = nodes.nodes();
  const std::size_t n = nodes.poles();
  const std::size_t pairs = left.size() * right.size();
  if (pairs == 0 || pairs > 16)
    throw ContractError("quad block supports 1..16 pairs, got " + std::to_string(pairs));
  for (const auto& a : left) check_length(a.size(), n, "left vector");
  for (const auto& b : right) check_length(b.size(), n, "right vector");

  // Split-layout pole coordinates and pair weights conj(a) .* b.
  scratch::vector<double> pole_re(n), pole_im(n);
  for (std::size_t j = 0; j < n; ++j) {
    pole_re[j] = nodes.lambda[j].real();
    pole_im[j] = nodes.lambda[j].imag();
  }
  scratch::vector<double> w_re(pairs * n), w_im(pairs * n);
  for (std::size_t s = 0; s < left.size(); ++s)
    for (std::size_t t = 0; t < right.size(); ++t) {
      const std::size_t k = s * right.size() + t;
      for (std::size_t j = 0; j < n; ++j) {
        const Complex w = std::conj(left[s][j]) * right[t][j];
        w_re[k * n + j] = w.real();
        w_im[k * n + j] = w.imag();
      }
    }

  QuadBlock out(pairs);
  for (auto& buf : out) buf.resize(m);

  constexpr std::size_t kTile = 256;
  parallel::for_each_index(
      0, m,
      [&](std::size_t i) {
        const double gr = nodes.omega[i].real();
        const double gi = nodes.omega[i].imag();
        double acc_re[16] = {0}, acc_im[16] = {0};
        double rec_re[kTile], rec_im[kTile];
        for (std::size_t base = 0; base < n; base += kTile) {
          const std::size_t len = std::min(kTile, n - base);
          for (std::size_t j = 0; j < len; ++j) {
            const double dr = gr - pole_re[base + j];
            const double di = gi - pole_im[base + j];
            const double inv = 1.0 / (dr * dr + di * di);
            rec_re[j] = dr * inv;
            rec_im[j] = -di * inv;
          }
          for (std::size_t k = 0; k < pairs; ++k) {
            const double* wr = w_re.data() + k * n + base;
            const double* wi = w_im.data() + k * n + base;
            double ar = 0.0, ai = 0.0;
            for (std::size_t j = 0; j < len; ++j) {
              ar += wr[j] * rec_re[j] - wi[j] * rec_im[j];
              ai += wr[j] * rec_im[j] + wi[j] * rec_re[j];
            }
            acc_re[k] += ar;
            acc_im[k] += ai;
          }
        }
        for (std::size_t k = 0; k < pairs; ++k) out[k][i] = Complex{acc_re[k], acc_im[k]};
      },
      256);
  return out;
}

}  // namespace s4::cauchy
