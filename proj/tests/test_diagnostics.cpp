#include <doctest.h>

#include "s4/diagnostics.hpp"

using s4::BigInt;
using s4::BigMatrix;

TEST_CASE("eigenvector growth: small sizes") {
  const s4::GrowthReport r4 = s4::eigvec_growth(4);
  CHECK(r4.max_entry == 6);
  CHECK(!r4.threshold_exceeded);

  const s4::GrowthReport r1 = s4::eigvec_growth(1);
  CHECK(r1.max_entry == 1);
  CHECK(!r1.threshold_exceeded);
}

TEST_CASE("n = 31 matrix contains binom(40, 20) at row 30, column 10") {
  const BigMatrix v = s4::legs_eigenvector_matrix(31);
  CHECK(v[30][10] == BigInt("137846528820"));
}

TEST_CASE("growth passes the exact-double threshold around n = 48") {
  CHECK(!s4::eigvec_growth(8).threshold_exceeded);
  CHECK(s4::eigvec_growth(48).threshold_exceeded);
}

TEST_CASE("max entry is nondecreasing and the log2 slope approaches 4/3") {
  BigInt prev = 0;
  for (int n = 1; n <= 32; ++n) {
    const s4::GrowthReport r = s4::eigvec_growth(n);
    CHECK(r.max_entry >= prev);
    prev = r.max_entry;
  }

  // Least-squares slope of log2(max) over n in {12, 24, 36, 48}.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const int n : {12, 24, 36, 48}) {
    const double y = s4::eigvec_growth(n).log2_max;
    sx += n;
    sy += y;
    sxx += static_cast<double>(n) * n;
    sxy += n * y;
  }
  const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
  CHECK(slope >= 4.0 / 3.0 * 0.9);
}

TEST_CASE("inverse characteristic polynomial coefficients") {
  SUBCASE("n = 2: coefficient of x^k is k+1") {
    const s4::GrowthReport r = s4::lssl_charpoly_inverse_coeffs(2, 5);
    CHECK(r.max_entry == 5);  // binom(5, 4)
  }
  SUBCASE("n = 5, l = 4") {
    const s4::GrowthReport r = s4::lssl_charpoly_inverse_coeffs(5, 4);
    CHECK(r.max_entry == 35);  // binom(7, 3)
  }
  SUBCASE("n = l = 64 exceeds 2^120") {
    const s4::GrowthReport r = s4::lssl_charpoly_inverse_coeffs(64, 64);
    CHECK(r.log2_max > 120.0);
    CHECK(r.max_entry > (BigInt(1) << 120));
    CHECK(r.threshold_exceeded);
  }
}

TEST_CASE("forward characteristic polynomial coefficient") {
  CHECK(s4::charpoly_forward_max_coeff(6) == 20);   // binom(6, 3)
  CHECK(s4::charpoly_forward_max_coeff(64) == BigInt("1832624140942590534"));
}

TEST_CASE("inverse coefficients satisfy the Pascal-type recurrence exactly") {
  for (const int n : {3, 8, 33}) {
    for (int k = 1; k <= 40; ++k) {
      BigInt lhs, prev;
      mpz_bin_uiui(lhs.get_mpz_t(), n + k - 1, k);
      mpz_bin_uiui(prev.get_mpz_t(), n + k - 2, k - 1);
      CHECK(lhs * k == prev * (n + k - 1));
    }
  }
}

TEST_CASE("exact eigenpair identity holds for all n up to 16") {
  for (int n = 1; n <= 16; ++n) {
    CAPTURE(n);
    CHECK(s4::verify_legs_eigenpairs_exact(n));
  }
}

TEST_CASE("mutation control: perturbing one eigenvector entry breaks the identity") {
  const int n = 8;
  BigMatrix v = s4::legs_eigenvector_matrix(n);
  v[2][1] += 1;

  // Literal statement of the identity, recomputed here with the perturbed V.
  BigMatrix a(n, std::vector<BigInt>(n, BigInt(0)));
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < row; ++col) {
      a[row][col] = 2 * col + 1;
      if ((row - col) % 2 != 0) a[row][col] = -a[row][col];
    }
    a[row][row] = row + 1;
  }
  bool all_hold = true;
  for (int j = 0; j < n && all_hold; ++j)
    for (int k = 0; k < n && all_hold; ++k) {
      BigInt lhs = 0;
      for (int i = 0; i < n; ++i) lhs += a[k][i] * v[i][j];
      if (lhs != BigInt(j + 1) * v[k][j]) all_hold = false;
    }
  CHECK(!all_hold);
}

TEST_CASE("exact eigenpair check enforces its size cap") {
  CHECK_THROWS_AS(s4::verify_legs_eigenpairs_exact(65), s4::SizeError);
  CHECK_THROWS_AS(s4::verify_legs_eigenpairs_exact(0), s4::DimensionError);
}
