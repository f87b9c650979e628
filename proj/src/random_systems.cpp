#include "s4/random_systems.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace s4 {

DplrSpec random_stable_dplr(Rng& rng, int n, int rank) {
  if (n < 2 || n % 2 != 0)
    throw DimensionError("conjugate-paired spec needs even n >= 2");
  DplrSpec spec;
  spec.rank = rank;
  spec.lambda.resize(n);
  spec.p.resize(n, rank);
  spec.q.resize(n, rank);
  spec.b.resize(n);
  spec.c.resize(n);
  for (int i = 0; i < n; i += 2) {
    const Complex lam{-rng.uniform(0.1, 1.0), rng.uniform(0.0, 3.0)};
    spec.lambda(i) = lam;
    spec.lambda(i + 1) = std::conj(lam);
    for (int j = 0; j < rank; ++j) {
      const Complex pv = 0.5 * rng.complex_gaussian();
      const Complex qv = 0.5 * rng.complex_gaussian();
      spec.p(i, j) = pv;
      spec.p(i + 1, j) = std::conj(pv);
      spec.q(i, j) = qv;
      spec.q(i + 1, j) = std::conj(qv);
    }
    const Complex bv = rng.complex_gaussian();
    const Complex cv = rng.complex_gaussian();
    spec.b(i) = bv;
    spec.b(i + 1) = std::conj(bv);
    spec.c(i) = cv;
    spec.c(i + 1) = std::conj(cv);
  }
  spec.conjugate_symmetric = true;

  // Re(lambda) < 0 does not bound the spectrum of lambda - P Q* itself;
  // shrink the factors until the materialized matrix is stable too.
  for (int attempt = 0; attempt < 60; ++attempt) {
    Eigen::ComplexEigenSolver<Mat> es(dplr_to_dense(spec), false);
    if (es.eigenvalues().real().maxCoeff() < -0.02) break;
    spec.p *= 0.5;
    spec.q *= 0.5;
  }
  validate_dplr(spec);
  return spec;
}

Eigen::MatrixXd random_stable_dense(Rng& rng, int n, double margin) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian() / std::sqrt(static_cast<double>(n));
  Eigen::EigenSolver<Eigen::MatrixXd> es(g, false);
  const double abscissa = es.eigenvalues().real().maxCoeff();
  g.diagonal().array() -= abscissa + margin;
  return g;
}

Mat random_well_conditioned(Rng& rng, int n) {
  auto random_unitary = [&] {
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
    return Mat(Eigen::HouseholderQR<Mat>(g).householderQ());
  };
  const Mat q1 = random_unitary();
  const Mat q2 = random_unitary();
  Vec s(n);
  for (int i = 0; i < n; ++i) s(i) = Complex{rng.uniform(0.5, 2.0), 0.0};
  return q1 * s.asDiagonal() * q2.adjoint();
}

ContinuousSsm random_stable_ssm(Rng& rng, int n) {
  const Eigen::MatrixXd a = random_stable_dense(rng, n);
  Vec b(n), c(n);
  for (int i = 0; i < n; ++i) {
    b(i) = Complex{rng.gaussian(), 0.0};
    c(i) = Complex{rng.gaussian(), 0.0};
  }
  return make_continuous_ssm(a.cast<Complex>(), b, c, 0.0);
}

std::vector<double> random_input(Rng& rng, std::size_t l) {
  std::vector<double> u(l);
  for (auto& v : u) v = rng.gaussian();
  return u;
}

}  // namespace s4
