// Seeded generators for test and benchmark systems. Everything here is
// deterministic given the Rng state.
#pragma once

#include <Eigen/Dense>

#include "s4/rng.hpp"
#include "s4/ssm.hpp"

namespace s4 {

// Stable DPLR spec whose parameters come in conjugate pairs, so the
// materialized system is real and its kernel is real up to roundoff.
// n must be even. Re(lambda) is drawn in [-1, -0.1].
DplrSpec random_stable_dplr(Rng& rng, int n, int rank);

// Real dense system with spectral abscissa pushed below -margin.
Eigen::MatrixXd random_stable_dense(Rng& rng, int n, double margin = 0.2);

// Random complex matrix with singular values in [0.5, 2] (condition <= 4).
Mat random_well_conditioned(Rng& rng, int n);

ContinuousSsm random_stable_ssm(Rng& rng, int n);

std::vector<double> random_input(Rng& rng, std::size_t l);

}  // namespace s4
