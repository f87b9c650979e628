// Exact-arithmetic demonstrations of why the naive fast paths fail: the
// binomial eigenvector matrix of the LegS diagonalization grows like 2^(4N/3),
// and the characteristic-polynomial-inverse coefficients of the earlier fast
// kernel algorithm grow like 2^(2N). Everything here uses arbitrary-precision
// integers; floating point is deliberately absent.
#pragma once

#include <gmpxx.h>

#include "s4/hippo.hpp"

namespace s4 {

enum class GrowthContext { EigvecMatrix, CharpolyInverse };

struct GrowthReport {
  int n = 0;
  BigInt max_entry;
  double log2_max = 0.0;
  // Set once the entry exceeds 2^53, the last integer range doubles cover.
  bool threshold_exceeded = false;
  GrowthContext context = GrowthContext::EigvecMatrix;
};

// Exact max entry of the binomial eigenvector matrix of size n.
GrowthReport eigvec_growth(int n);

// Largest coefficient of (1-x)^{-n} mod x^l, i.e. binomial(n+l-2, l-1).
GrowthReport lssl_charpoly_inverse_coeffs(int n, int l);

// Largest coefficient of (1-x)^n itself, binomial(n, floor(n/2)).
BigInt charpoly_forward_max_coeff(int n);

// Checks in exact integer arithmetic that every column of the binomial
// eigenvector matrix is an eigenvector of the sign-variant triangular matrix
// (entries (-1)^(n-k) (2k+1) below the diagonal, k+1 on it) with eigenvalue
// j+1. n is capped at 64; the exact path is unbounded but the cap keeps the
// quadratic-size matrices at desk scale.
bool verify_legs_eigenpairs_exact(int n);

double log2_of(const BigInt& value);

}  // namespace s4
