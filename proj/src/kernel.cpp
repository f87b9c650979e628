#include "s4/kernel.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "s4/fft.hpp"

namespace s4 {

namespace {

constexpr double kPi = std::numbers::pi;

void check_length(std::size_t l) {
  if (l < 1) throw DimensionError("kernel length must be at least 1");
}

Complex ctilde_dot_b(const CTilde& ct, const Vec& b) {
  return ct.v.dot(b);  // conjugates ct
}

}  // namespace

NodeGrid make_node_grid(std::size_t l, double delta) {
  check_length(l);
  NodeGrid grid;
  grid.delta = delta;
  grid.omega.resize(l);
  grid.g.resize(l);
  grid.singular_mask.assign(l, 0);
  for (std::size_t k = 0; k < l; ++k) {
    const double ang = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(l);
    const Complex w{std::cos(ang), std::sin(ang)};
    grid.omega[k] = w;
    if (std::abs(1.0 + w) < 1e-12) {
      grid.singular_mask[k] = 1;
      grid.g[k] = Complex{0.0, 0.0};
    } else {
      grid.g[k] = (2.0 / delta) * (1.0 - w) / (1.0 + w);
    }
  }
  return grid;
}

ConvKernel krylov_kernel_naive(const DiscreteDense& disc, std::size_t l) {
  check_length(l);
  const Eigen::Index n = disc.a_bar.rows();

  ConvKernel kernel;
  kernel.delta = disc.delta;
  kernel.length = l;
  kernel.k.resize(l);

  Vec x = disc.b_bar;
  Vec next(n);
  kernel.k[0] = disc.c_bar.dot(x).real();
  for (std::size_t i = 1; i < l; ++i) {
    next.noalias() = disc.a_bar * x;
    x.swap(next);
    if (!x.allFinite())
      throw DivergenceError("matrix power diverged", static_cast<std::ptrdiff_t>(i));
    kernel.k[i] = disc.c_bar.dot(x).real();
  }
  return kernel;
}

Mat matrix_power(const Mat& m, std::size_t e) {
  Mat result = Mat::Identity(m.rows(), m.cols());
  Mat base = m;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

CTilde c_tilde_from_c(const DplrSpec& spec, double delta, std::size_t l) {
  check_length(l);
  const DiscreteDense disc = bilinear_discretize_dense(dplr_to_continuous(spec), delta);
  const Mat al = matrix_power(disc.a_bar, l);
  CTilde ct;
  ct.v = spec.c - al.adjoint() * spec.c;
  return ct;
}

Vec c_from_c_tilde(const DplrSpec& spec, double delta, std::size_t l, const CTilde& ct) {
  check_length(l);
  const DiscreteDense disc = bilinear_discretize_dense(dplr_to_continuous(spec), delta);
  const Mat al = matrix_power(disc.a_bar, l);
  const Mat m = (Mat::Identity(al.rows(), al.cols()) - al).adjoint();
  Eigen::FullPivLU<Mat> lu(m);
  if (!lu.isInvertible())
    throw SingularityError("(I - Abar^L) is singular; C cannot be recovered from C~");
  return lu.solve(ct.v);
}

Complex truncated_generating_function(const DiscreteDense& disc, std::size_t l, Complex z) {
  check_length(l);
  const Eigen::Index n = disc.a_bar.rows();
  const Mat m = Mat::Identity(n, n) - disc.a_bar * z;
  Eigen::FullPivLU<Mat> lu(m);
  if (!lu.isInvertible())
    throw PoleError("resolvent (I - Abar z) is singular at the requested node");
  const Vec w = lu.solve(disc.b_bar);
  const Mat al = matrix_power(disc.a_bar, l);
  const Complex zl = std::pow(z, static_cast<double>(l));
  return disc.c_bar.dot(w) - zl * disc.c_bar.dot(al * w);
}

scratch::vector<Complex> gf_dplr_eval(const DplrSpec& spec, double delta, const CTilde& ct,
                                      const NodeGrid& nodes) {
  validate_dplr(spec);
  const Eigen::Index n = spec.size();
  if (ct.v.size() != n)
    throw DimensionError("c_tilde has length " + std::to_string(ct.v.size()) + ", system has " +
                         std::to_string(n));
  const std::size_t l = nodes.length();
  const int r = spec.rank;

  // Compact the unmasked resolvent nodes.
  scratch::vector<std::size_t> keep;
  keep.reserve(l);
  cauchy::Buffer g_active;
  g_active.reserve(l);
  for (std::size_t k = 0; k < l; ++k) {
    if (!nodes.singular_mask[k]) {
      keep.push_back(k);
      g_active.push_back(nodes.g[k]);
    }
  }

  cauchy::Buffer poles(spec.lambda.data(), spec.lambda.data() + n);
  const cauchy::CauchyNodes cnodes(std::move(g_active), std::move(poles));

  // The four Cauchy multiplies of the kernel algorithm: every quadratic form
  // between [C~, Q] and [B, P], evaluated in one streamed block. Row-major
  // layout: index (s, t) -> s * (1 + r) + t with s, t = 0 meaning C~ / B.
  auto col = [n](const Mat& m, int j) {
    return std::span<const Complex>(m.col(j).data(), static_cast<std::size_t>(n));
  };
  std::vector<std::span<const Complex>> left, right;
  left.emplace_back(ct.v.data(), static_cast<std::size_t>(n));
  right.emplace_back(spec.b.data(), static_cast<std::size_t>(n));
  for (int j = 0; j < r; ++j) {
    left.push_back(col(spec.q, j));
    right.push_back(col(spec.p, j));
  }
  const cauchy::QuadBlock quads = cauchy::cauchy_quad_block(cnodes, left, right);
  const int w = 1 + r;
  auto quad = [&](int s, int t) -> const cauchy::Buffer& { return quads[s * w + t]; };

  scratch::vector<Complex> khat(l);
  for (std::size_t idx = 0; idx < keep.size(); ++idx) {
    const std::size_t k = keep[idx];
    Complex corrected = quad(0, 0)[idx];
    if (r == 1) {
      const Complex denom = 1.0 + quad(1, 1)[idx];
      if (std::abs(denom) < 1e-12)
        throw RankCorrectionError("rank correction 1 + k11 vanishes at node " + std::to_string(k),
                                  static_cast<std::ptrdiff_t>(k));
      corrected -= quad(0, 1)[idx] * quad(1, 0)[idx] / denom;
    } else if (r == 2) {
      const Complex m00 = 1.0 + quad(1, 1)[idx];
      const Complex m01 = quad(1, 2)[idx];
      const Complex m10 = quad(2, 1)[idx];
      const Complex m11 = 1.0 + quad(2, 2)[idx];
      const Complex det = m00 * m11 - m01 * m10;
      if (std::abs(det) < 1e-12)
        throw RankCorrectionError("rank correction I + k11 is singular at node " +
                                      std::to_string(k),
                                  static_cast<std::ptrdiff_t>(k));
      // k01 (I + k11)^{-1} k10 with the 2x2 inverse written out.
      const Complex s0 = (m11 * quad(1, 0)[idx] - m01 * quad(2, 0)[idx]) / det;
      const Complex s1 = (-m10 * quad(1, 0)[idx] + m00 * quad(2, 0)[idx]) / det;
      corrected -= quad(0, 1)[idx] * s0 + quad(0, 2)[idx] * s1;
    }
    khat[k] = 2.0 / (1.0 + nodes.omega[k]) * corrected;
  }

  if (keep.size() != l) {
    // omega = -1: (I + Abar)^{-1} Bbar = (delta/2) B exactly, so the node
    // value collapses to (delta/2) C~* B.
    const Complex patched = (delta / 2.0) * ctilde_dot_b(ct, spec.b);
    for (std::size_t k = 0; k < l; ++k)
      if (nodes.singular_mask[k]) khat[k] = patched;
  }
  return khat;
}

ConvKernel s4_kernel(const DplrSpec& spec, double delta, std::size_t l, const CTilde& ct) {
  const NodeGrid grid = make_node_grid(l, delta);
  scratch::vector<Complex> khat = gf_dplr_eval(spec, delta, ct, grid);

  // Recovery transform matching the +k/L node convention.
  fft::forward(khat);
  const double scale = 1.0 / static_cast<double>(l);

  ConvKernel kernel;
  kernel.delta = delta;
  kernel.length = l;
  kernel.k.resize(l);
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t j = 0; j < l; ++j) {
    kernel.k[j] = khat[j].real() * scale;
    max_re = std::max(max_re, std::abs(khat[j].real()) * scale);
    max_im = std::max(max_im, std::abs(khat[j].imag()) * scale);
  }
  if (spec.conjugate_symmetric && max_im > 1e-8 * std::max(max_re, 1e-12))
    throw ValidationError("kernel imaginary residue " + std::to_string(max_im) +
                          " exceeds bound for a conjugate-symmetric system");
  return kernel;
}

std::vector<double> convolve(const ConvKernel& kernel, std::span<const double> u) {
  const std::size_t l = kernel.length;
  if (u.size() != l)
    throw ContractError("input has length " + std::to_string(u.size()) + ", kernel has " +
                        std::to_string(l));
  if (l == 1) return {kernel.k[0] * u[0]};

  const std::size_t m = fft::next_pow2(2 * l - 1);
  fft::Buffer ka(m, Complex{0.0, 0.0});
  fft::Buffer ub(m, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < l; ++i) {
    ka[i] = Complex{kernel.k[i], 0.0};
    ub[i] = Complex{u[i], 0.0};
  }
  fft::forward(ka);
  fft::forward(ub);
  for (std::size_t i = 0; i < m; ++i) ka[i] *= ub[i];
  fft::inverse(ka);

  std::vector<double> y(l);
  for (std::size_t i = 0; i < l; ++i) y[i] = ka[i].real();
  return y;
}

double rel_linf(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw ContractError("length mismatch: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return diff / std::max(scale, 1e-12);
}

void write_kernel_binary(const ConvKernel& kernel, std::ostream& out) {
  char header[16] = {0};
  std::memcpy(header, "S4K1", 4);
  const std::uint32_t l = static_cast<std::uint32_t>(kernel.length);
  std::memcpy(header + 4, &l, 4);
  out.write(header, sizeof(header));
  out.write(reinterpret_cast<const char*>(kernel.k.data()),
            static_cast<std::streamsize>(kernel.k.size() * sizeof(double)));
}

ConvKernel read_kernel_binary(std::istream& in) {
  char header[16] = {0};
  in.read(header, sizeof(header));
  if (!in || std::memcmp(header, "S4K1", 4) != 0)
    throw ValidationError("bad kernel file: missing S4K1 magic");
  std::uint32_t l = 0;
  std::memcpy(&l, header + 4, 4);
  ConvKernel kernel;
  kernel.length = l;
  kernel.k.resize(l);
  in.read(reinterpret_cast<char*>(kernel.k.data()),
          static_cast<std::streamsize>(l * sizeof(double)));
  if (!in) throw ValidationError("bad kernel file: truncated payload");
  return kernel;
}

void write_kernel_csv(const ConvKernel& kernel, std::ostream& out) {
  out << "index,value\n";
  char buf[64];
  for (std::size_t i = 0; i < kernel.length; ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i, kernel.k[i]);
    out << buf;
  }
}

}  // namespace s4
