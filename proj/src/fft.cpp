#include "s4/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace s4::fft {

namespace {

constexpr double kPi = std::numbers::pi;

// In-place radix-2 Cooley-Tukey, sign = -1 forward / +1 inverse (unscaled).
void radix2(Buffer& x, int sign) {
  const std::size_t n = x.size();
  if (n < 2) return;

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  // Twiddles for the largest stage; smaller stages stride through the table.
  Buffer twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double ang = sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    twiddle[k] = {std::cos(ang), std::sin(ang)};
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex w = twiddle[k * stride];
        const Complex even = x[i + k];
        const Complex odd = x[i + k + len / 2] * w;
        x[i + k] = even + odd;
        x[i + k + len / 2] = even - odd;
      }
    }
  }
}

// Direct O(n^2) DFT, kept for small lengths with awkward factors.
void quadratic_dft(Buffer& x, int sign) {
  const std::size_t n = x.size();
  Buffer out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t m = 0; m < n; ++m) {
      const double ang =
          sign * 2.0 * kPi * static_cast<double>((k * m) % n) / static_cast<double>(n);
      acc += x[m] * Complex{std::cos(ang), std::sin(ang)};
    }
    out[k] = acc;
  }
  x = std::move(out);
}

// Bluestein chirp-z: any length via one power-of-two circular convolution.
void bluestein(Buffer& x, int sign) {
  const std::size_t n = x.size();
  const std::size_t m = next_pow2(2 * n - 1);

  Buffer chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the phase argument small without changing the value.
    const unsigned long long sq = (static_cast<unsigned long long>(k) * k) % (2 * n);
    const double ang = sign * kPi * static_cast<double>(sq) / static_cast<double>(n);
    chirp[k] = {std::cos(ang), std::sin(ang)};
  }

  Buffer a(m, Complex{0.0, 0.0});
  Buffer b(m, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    b[k] = std::conj(chirp[k]);
    b[m - k] = b[k];
  }

  radix2(a, -1);
  radix2(b, -1);
  for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
  radix2(a, +1);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * scale * chirp[k];
}

void transform(Buffer& x, int sign) {
  const std::size_t n = x.size();
  if (n < 2) return;
  if (is_pow2(n)) {
    radix2(x, sign);
  } else if (n < 64) {
    quadratic_dft(x, sign);
  } else {
    bluestein(x, sign);
  }
}

}  // namespace

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void forward(Buffer& x) { transform(x, -1); }

void inverse(Buffer& x) {
  transform(x, +1);
  const double scale = 1.0 / static_cast<double>(x.size());
  for (auto& v : x) v *= scale;
}

}  // namespace s4::fft
