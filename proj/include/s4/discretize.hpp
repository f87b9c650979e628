// Bilinear discretization: dense reference path and the closed-form DPLR path
// whose recurrence costs O(N) per step.
//
// The DPLR step uses Abar = A1 A0 and Bbar = 2 A1 B with
//   A0 = (2/delta) I + (Lambda - P Q*)
//   A1 = D - D P (I_r + Q* D P)^{-1} Q* D,   D = (2/delta - Lambda)^{-1}
// so one step is elementwise products, vector adds and r inner products.
#pragma once

#include <Eigen/Dense>

#include "s4/ssm.hpp"

namespace s4 {

struct DiscreteDplr {
  Vec lambda;
  Mat p;
  Mat q;
  Vec b;
  Vec c;   // applied as C*
  double delta = 0.0;
  int rank = 0;
  bool conjugate_symmetric = false;

  Vec d_vec;                 // (2/delta - lambda)^{-1}, elementwise
  Eigen::Matrix2cd woodbury_core;  // (I_r + Q* D P)^{-1}, top-left r x r block

  Eigen::Index size() const { return lambda.size(); }
};

struct SsmState {
  Vec x;

  explicit SsmState(Eigen::Index n) : x(Vec::Zero(n)) {}
  // Step scratch, kept with the state so stepping never allocates.
  Vec scratch;
};

// Dense Eq.-style discretization. Throws PoleError when (I - delta/2 A) is
// singular, reporting the eigenvalue sitting on the pole.
DiscreteDense bilinear_discretize_dense(const ContinuousSsm& ssm, double delta);

// Closed-form DPLR discretization; precomputes the diagonal resolvent and the
// r x r Woodbury core so the per-step work is O(N r).
DiscreteDplr dplr_discretize(const DplrSpec& spec, double delta);

// One recurrence step; mutates state and returns y = Re(C* x_k). The skip
// term D u is owned by the layer and not added here. Throws DivergenceError
// if the state leaves the finite range.
double recurrent_step(const DiscreteDplr& disc, SsmState& state, double u);

// Literal dense recurrence, the verification oracle for the DPLR step.
double dense_step(const DiscreteDense& disc, SsmState& state, double u);

// Dense materializations of the DPLR factors, for cross-checking only.
Mat dplr_materialize_a_bar(const DiscreteDplr& disc);
Vec dplr_materialize_b_bar(const DiscreteDplr& disc);
DiscreteDense dplr_materialize_dense(const DiscreteDplr& disc);

}  // namespace s4
