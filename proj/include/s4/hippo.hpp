// HiPPO state matrices and their normal-plus-low-rank decompositions.
//
// Each family matrix A splits as A = (shift*I + S) - P Q^T with S real
// skew-symmetric and P, Q real rank-1 or rank-2 factors. Diagonalizing the
// skew part through the Hermitian problem for i*S yields a unitary V and the
// diagonal-plus-low-rank form the fast algorithms run on.
#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "s4/ssm.hpp"

namespace s4 {

enum class HippoFamily { LegS, LegT, LagT };

std::string family_name(HippoFamily f);
HippoFamily family_from_name(const std::string& name);

struct NplrOptions {
  // Replace Q by P after decomposition (the Lambda - P P* stability variant).
  bool pp_star = false;
  // Diagonal element of the LagT matrix; generalized-Laguerre variants shift it.
  double lagt_diag = -0.5;
};

// Dense family matrix with indices n, k in {0, ..., N-1}.
Eigen::MatrixXd hippo_matrix(HippoFamily family, int n, const NplrOptions& opts = {});

struct NplrDecomposition {
  Mat v;                   // unitary, columns are eigenvectors of the normal part
  Vec lambda;              // eigenvalues, sorted by (Im, Re) ascending
  Mat p;                   // V* P_real, N x r
  Mat q;                   // V* Q_real, N x r
  Eigen::MatrixXd p_real;  // pre-conjugation low-rank factors
  Eigen::MatrixXd q_real;
  int rank = 0;
  HippoFamily family = HippoFamily::LegS;
};

NplrDecomposition nplr_decompose(HippoFamily family, int n, const NplrOptions& opts = {});

// Real shift of the family's normal part: A + P_real Q_real^T = shift*I + S.
double normal_part_shift(HippoFamily family, const NplrOptions& opts = {});

// DPLR spec in the decomposition basis; b and c are given in the original
// basis and conjugated by V*. Marks the spec conjugate-symmetric when both
// are real (a real system in disguise).
DplrSpec dplr_from_nplr(const NplrDecomposition& d, const Vec& b, const Vec& c);

// Everyday constructor: default B conjugated into the basis, C drawn standard
// normal directly in the basis (it is a free parameter there).
DplrSpec hippo_dplr_spec(HippoFamily family, int n, std::uint64_t c_seed,
                         const NplrOptions& opts = {});

// Default input vectors, adopted from the continuous-time memorization
// framework the families come from (not fixed by the decomposition itself):
// LegS/LegT b_n = sqrt(2n+1), LagT b_n = 1.
Eigen::VectorXd default_b_vector(HippoFamily family, int n);

// Complex standard normal C, deterministic per seed.
Vec default_c_vector(int n, std::uint64_t seed);

// Exact lower-triangular eigenvector matrix of the sign-variant LegS matrix,
// V_ij = binom(i+j, i-j). Arbitrary-precision entries, so no overflow.
using BigInt = mpz_class;
using BigMatrix = std::vector<std::vector<BigInt>>;
BigMatrix legs_eigenvector_matrix(int n);

}  // namespace s4
