#include "s4/diagnostics.hpp"

#include <cmath>
#include <string>

namespace s4 {

double log2_of(const BigInt& value) {
  signed long exp = 0;
  const double d = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return std::log2(d) + static_cast<double>(exp);
}

namespace {

const BigInt kDoubleExactLimit = BigInt(1) << 53;

GrowthReport make_report(int n, BigInt max_entry, GrowthContext context) {
  GrowthReport report;
  report.n = n;
  report.log2_max = log2_of(max_entry);
  report.threshold_exceeded = max_entry > kDoubleExactLimit;
  report.max_entry = std::move(max_entry);
  report.context = context;
  return report;
}

}  // namespace

GrowthReport eigvec_growth(int n) {
  const BigMatrix v = legs_eigenvector_matrix(n);
  BigInt max_entry = 1;
  for (const auto& row : v)
    for (const auto& entry : row)
      if (entry > max_entry) max_entry = entry;
  return make_report(n, std::move(max_entry), GrowthContext::EigvecMatrix);
}

GrowthReport lssl_charpoly_inverse_coeffs(int n, int l) {
  if (n < 2) throw DimensionError("state size must be at least 2");
  if (l < 1) throw DimensionError("sequence length must be at least 1");
  BigInt coeff;
  mpz_bin_uiui(coeff.get_mpz_t(), static_cast<unsigned long>(n + l - 2),
               static_cast<unsigned long>(l - 1));
  return make_report(n, std::move(coeff), GrowthContext::CharpolyInverse);
}

BigInt charpoly_forward_max_coeff(int n) {
  if (n < 1) throw DimensionError("state size must be at least 1");
  BigInt coeff;
  mpz_bin_uiui(coeff.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(n / 2));
  return coeff;
}

bool verify_legs_eigenpairs_exact(int n) {
  if (n < 1) throw DimensionError("state size must be at least 1");
  if (n > 64) throw SizeError("exact eigenpair check capped at n = 64, got " + std::to_string(n));

  const BigMatrix v = legs_eigenvector_matrix(n);

  // Sign-variant triangular matrix with integer entries.
  BigMatrix a(n, std::vector<BigInt>(n, BigInt(0)));
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < row; ++col) {
      BigInt entry = 2 * col + 1;
      if ((row - col) % 2 != 0) entry = -entry;
      a[row][col] = entry;
    }
    a[row][row] = row + 1;
  }

  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      BigInt lhs = 0;
      for (int i = 0; i < n; ++i) lhs += a[k][i] * v[i][j];
      const BigInt rhs = BigInt(j + 1) * v[k][j];
      if (lhs != rhs) return false;
    }
  }
  return true;
}

}  // namespace s4
