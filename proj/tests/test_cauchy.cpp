#include <doctest.h>

#include "s4/cauchy.hpp"
#include "s4/rng.hpp"

using s4::cauchy::Buffer;
using s4::cauchy::CauchyNodes;
using s4::cauchy::Complex;

TEST_CASE("single node, single pole") {
  const CauchyNodes nodes(Buffer{Complex{2.0, 0.0}}, Buffer{Complex{1.0, 0.0}});
  const std::vector<Complex> v{Complex{1.0, 0.0}};
  const auto w = s4::cauchy::cauchy_matvec_naive(nodes, v);
  CHECK(std::abs(w[0] - Complex{1.0, 0.0}) < 1e-15);
}

TEST_CASE("antisymmetric pole pair cancels at the origin") {
  const CauchyNodes nodes(Buffer{Complex{0.0, 0.0}},
                          Buffer{Complex{1.0, 0.0}, Complex{-1.0, 0.0}});
  const std::vector<Complex> ones{Complex{1.0, 0.0}, Complex{1.0, 0.0}};
  CHECK(std::abs(s4::cauchy::cauchy_matvec_naive(nodes, ones)[0]) < 1e-15);
  CHECK(std::abs(s4::cauchy::cauchy_quad(nodes, ones, ones)[0]) < 1e-15);
}

TEST_CASE("matvec equals the explicit dense matrix product") {
  s4::Rng rng(21);
  Buffer omega(3), lambda(4);
  for (auto& w : omega) w = rng.complex_gaussian() + Complex{4.0, 0.0};
  for (auto& l : lambda) l = rng.complex_gaussian() - Complex{4.0, 0.0};
  std::vector<Complex> v(4);
  for (auto& z : v) z = rng.complex_gaussian();

  const CauchyNodes nodes(omega, lambda);
  const auto got = s4::cauchy::cauchy_matvec_naive(nodes, v);
  for (std::size_t i = 0; i < omega.size(); ++i) {
    Complex want{0, 0};
    for (std::size_t j = 0; j < lambda.size(); ++j) want += v[j] / (omega[i] - lambda[j]);
    CHECK(std::abs(got[i] - want) < 1e-12);
  }
}

TEST_CASE("quad composes as matvec on the elementwise product") {
  s4::Rng rng(22);
  Buffer omega(64), lambda(16);
  for (auto& w : omega) w = rng.complex_gaussian() + Complex{4.0, 0.0};
  for (auto& l : lambda) l = rng.complex_gaussian() - Complex{4.0, 0.0};
  const CauchyNodes nodes(omega, lambda);

  std::vector<Complex> a(16), b(16), prod(16);
  for (std::size_t j = 0; j < 16; ++j) {
    a[j] = rng.complex_gaussian();
    b[j] = rng.complex_gaussian();
    prod[j] = std::conj(a[j]) * b[j];
  }
  const auto quad = s4::cauchy::cauchy_quad(nodes, a, b);
  const auto ref = s4::cauchy::cauchy_matvec_naive(nodes, prod);
  for (std::size_t i = 0; i < quad.size(); ++i) CHECK(std::abs(quad[i] - ref[i]) < 1e-12);
}

TEST_CASE("conjugate-paired data gives conjugate outputs at conjugate nodes") {
  s4::Rng rng(23);
  const std::size_t m = 8;
  Buffer omega(2 * m), lambda(4);
  for (std::size_t i = 0; i < m; ++i) {
    const Complex w = rng.complex_gaussian() + Complex{5.0, 0.0};
    omega[2 * i] = w;
    omega[2 * i + 1] = std::conj(w);
  }
  for (std::size_t j = 0; j < 4; j += 2) {
    const Complex l = rng.complex_gaussian() - Complex{5.0, 0.0};
    lambda[j] = l;
    lambda[j + 1] = std::conj(l);
  }
  std::vector<Complex> v(4);
  for (std::size_t j = 0; j < 4; j += 2) {
    v[j] = rng.complex_gaussian();
    v[j + 1] = std::conj(v[j]);
  }
  const CauchyNodes nodes(omega, lambda);
  const auto w = s4::cauchy::cauchy_matvec_naive(nodes, v);
  for (std::size_t i = 0; i < m; ++i)
    CHECK(std::abs(w[2 * i] - std::conj(w[2 * i + 1])) < 1e-12);
}

TEST_CASE("coincident node and pole is rejected with indices") {
  Buffer omega{Complex{1.0, 0.0}, Complex{2.0, 0.0}};
  Buffer lambda{Complex{-1.0, 0.0}, Complex{2.0, 0.0}};
  try {
    const CauchyNodes nodes(omega, lambda);
    FAIL("expected SingularKernelError");
  } catch (const s4::SingularKernelError& e) {
    CHECK(e.node_index == 1);
    CHECK(e.pole_index == 1);
  }
}

TEST_CASE("streamed evaluation keeps auxiliary space off the node-pole grid") {
  s4::Rng rng(24);
  const std::size_t m = 2048;
  const std::size_t n = 128;
  Buffer omega(m), lambda(n);
  for (auto& w : omega) w = rng.complex_gaussian() + Complex{8.0, 0.0};
  for (auto& l : lambda) l = rng.complex_gaussian() - Complex{8.0, 0.0};
  std::vector<Complex> v(n);
  for (auto& z : v) z = rng.complex_gaussian();
  const CauchyNodes nodes(std::move(omega), std::move(lambda));

  s4::scratch::reset_peak();
  const std::size_t before = s4::scratch::current_bytes();
  const auto w = s4::cauchy::cauchy_matvec_naive(nodes, v);
  const std::size_t peak = s4::scratch::peak_bytes() - before;
  // Output plus small change, nowhere near the m*n dense matrix.
  CHECK(peak < 4 * (m + n) * sizeof(Complex));
  CHECK(w.size() == m);
}
