// Core state-space representations and the conjugation equivalence.
//
// Convention used throughout the library: B and C are both column vectors and
// outputs are read through the conjugate transpose, y = C* x (+ D u). Every
// operation that applies C documents whether it uses C* or C^T.
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "s4/errors.hpp"

namespace s4 {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Continuous-time system x' = A x + B u, y = C* x + D u.
struct ContinuousSsm {
  Mat a;        // N x N
  Vec b;        // N
  Vec c;        // N, column storage, applied as C*
  double d = 0.0;
  Eigen::Index n = 0;
};

// Diagonal-plus-low-rank system A = diag(lambda) - P Q*, the trainable
// parameter set of the fast kernel path.
struct DplrSpec {
  Vec lambda;   // N
  Mat p;        // N x r
  Mat q;        // N x r
  Vec b;        // N
  Vec c;        // N, applied as C*
  int rank = 0; // r in {0, 1, 2}; 0 collapses to a purely diagonal system
  // Set when lambda/p/q/b/c come in conjugate pairs so the materialized
  // system is real; enables the imaginary-residue assertions downstream.
  bool conjugate_symmetric = false;

  Eigen::Index size() const { return lambda.size(); }
};

// Bilinear-discretized dense system x_k = Abar x_{k-1} + Bbar u_k.
struct DiscreteDense {
  Mat a_bar;
  Vec b_bar;
  Vec c_bar;    // applied as C*
  double delta = 0.0;
};

// Validates shapes and finiteness. Throws DimensionError naming the offending
// field, or ValidationError on non-finite entries.
ContinuousSsm make_continuous_ssm(Mat a, Vec b, Vec c, double d = 0.0);

// Checks rank/shape consistency and finiteness of a DPLR parameter set.
void validate_dplr(const DplrSpec& spec);

// Change of state basis: (A, B, C) -> (V^-1 A V, V^-1 B, V* C). With outputs
// read as y = C* x, the returned system computes the same u -> y map.
// Rejects V whose condition estimate exceeds cond_limit.
ContinuousSsm conjugate(const ContinuousSsm& ssm, const Mat& v, double cond_limit = 1e8);

// Materializes diag(lambda) - P Q* as a dense matrix.
Mat dplr_to_dense(const DplrSpec& spec);

// Continuous dense view of a DPLR spec (same B, C, D = 0).
ContinuousSsm dplr_to_continuous(const DplrSpec& spec);

}  // namespace s4
