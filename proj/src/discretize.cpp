#include "s4/discretize.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <string>

namespace s4 {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw ValidationError("step size delta must be positive and finite, got " +
                          std::to_string(delta));
}

}  // namespace

DiscreteDense bilinear_discretize_dense(const ContinuousSsm& ssm, double delta) {
  check_delta(delta);
  const Eigen::Index n = ssm.n;
  const Mat id = Mat::Identity(n, n);
  const Mat m = id - (delta / 2.0) * ssm.a;

  Eigen::FullPivLU<Mat> lu(m);
  if (!lu.isInvertible()) {
    // Report which eigenvalue of A sits on the bilinear pole 2/delta.
    Eigen::ComplexEigenSolver<Mat> es(ssm.a, false);
    Complex worst = es.eigenvalues()(0);
    for (Eigen::Index i = 1; i < n; ++i) {
      const Complex ev = es.eigenvalues()(i);
      if (std::abs(1.0 - delta / 2.0 * ev) < std::abs(1.0 - delta / 2.0 * worst)) worst = ev;
    }
    throw PoleError("(I - delta/2 A) is singular: eigenvalue " + std::to_string(worst.real()) +
                    (worst.imag() < 0 ? "-" : "+") + std::to_string(std::abs(worst.imag())) +
                    "i lies on the pole 2/delta = " + std::to_string(2.0 / delta));
  }

  DiscreteDense disc;
  disc.a_bar = lu.solve(id + (delta / 2.0) * ssm.a);
  disc.b_bar = lu.solve(delta * ssm.b);
  disc.c_bar = ssm.c;
  disc.delta = delta;
  return disc;
}

DiscreteDplr dplr_discretize(const DplrSpec& spec, double delta) {
  validate_dplr(spec);
  check_delta(delta);
  const Eigen::Index n = spec.size();
  const double two_over_delta = 2.0 / delta;

  DiscreteDplr disc;
  disc.lambda = spec.lambda;
  disc.p = spec.p;
  disc.q = spec.q;
  disc.b = spec.b;
  disc.c = spec.c;
  disc.delta = delta;
  disc.rank = spec.rank;
  disc.conjugate_symmetric = spec.conjugate_symmetric;

  disc.d_vec.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex denom = two_over_delta - spec.lambda(i);
    if (std::abs(denom) < 1e-12)
      throw PoleError("lambda[" + std::to_string(i) + "] lies on the pole 2/delta = " +
                      std::to_string(two_over_delta));
    disc.d_vec(i) = 1.0 / denom;
  }

  disc.woodbury_core.setZero();
  const int r = spec.rank;
  if (r > 0) {
    // I_r + Q* D P, inverted in closed form (scalar or 2x2).
    Eigen::Matrix2cd core = Eigen::Matrix2cd::Identity();
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        Complex acc{0.0, 0.0};
        for (Eigen::Index i = 0; i < n; ++i)
          acc += std::conj(spec.q(i, j)) * disc.d_vec(i) * spec.p(i, k);
        core(j, k) += acc;
      }
    if (r == 1) {
      if (std::abs(core(0, 0)) < 1e-12)
        throw RankCorrectionError("rank correction (1 + Q* D P) is singular", -1);
      disc.woodbury_core(0, 0) = 1.0 / core(0, 0);
    } else {
      const Complex det = core(0, 0) * core(1, 1) - core(0, 1) * core(1, 0);
      if (std::abs(det) < 1e-12)
        throw RankCorrectionError("rank correction (I + Q* D P) is singular", -1);
      disc.woodbury_core(0, 0) = core(1, 1) / det;
      disc.woodbury_core(0, 1) = -core(0, 1) / det;
      disc.woodbury_core(1, 0) = -core(1, 0) / det;
      disc.woodbury_core(1, 1) = core(0, 0) / det;
    }
  }
  return disc;
}

double recurrent_step(const DiscreteDplr& disc, SsmState& state, double u) {
  const Eigen::Index n = disc.size();
  if (state.x.size() != n)
    throw DimensionError("state length " + std::to_string(state.x.size()) + ", system has " +
                         std::to_string(n));
  if (state.scratch.size() != n) state.scratch.resize(n);

  const int r = disc.rank;
  const double two_over_delta = 2.0 / disc.delta;
  Complex* t = state.scratch.data();
  Complex* x = state.x.data();
  const Complex* lam = disc.lambda.data();
  const Complex* dv = disc.d_vec.data();
  const Complex* b = disc.b.data();

  // qx = Q* x before x is overwritten.
  Complex qx[2] = {Complex{0, 0}, Complex{0, 0}};
  for (int j = 0; j < r; ++j) {
    const Complex* qj = disc.q.col(j).data();
    Complex acc{0, 0};
    for (Eigen::Index i = 0; i < n; ++i) acc += std::conj(qj[i]) * x[i];
    qx[j] = acc;
  }

  // t = A0 x + 2 u B, then w = D t (stored back into t).
  for (Eigen::Index i = 0; i < n; ++i)
    t[i] = (two_over_delta + lam[i]) * x[i] + 2.0 * u * b[i];
  for (int j = 0; j < r; ++j) {
    const Complex* pj = disc.p.col(j).data();
    for (Eigen::Index i = 0; i < n; ++i) t[i] -= pj[i] * qx[j];
  }
  for (Eigen::Index i = 0; i < n; ++i) t[i] *= dv[i];

  // Woodbury correction: x = w - D P core (Q* w).
  Complex s[2] = {Complex{0, 0}, Complex{0, 0}};
  if (r > 0) {
    Complex qw[2] = {Complex{0, 0}, Complex{0, 0}};
    for (int j = 0; j < r; ++j) {
      const Complex* qj = disc.q.col(j).data();
      Complex acc{0, 0};
      for (Eigen::Index i = 0; i < n; ++i) acc += std::conj(qj[i]) * t[i];
      qw[j] = acc;
    }
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) s[j] += disc.woodbury_core(j, k) * qw[k];
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex corr{0, 0};
    for (int j = 0; j < r; ++j) corr += disc.p(i, j) * s[j];
    x[i] = t[i] - dv[i] * corr;
  }

  Complex y{0, 0};
  const Complex* c = disc.c.data();
  for (Eigen::Index i = 0; i < n; ++i) y += std::conj(c[i]) * x[i];

  if (!state.x.allFinite())
    throw DivergenceError("state became non-finite while stepping");
  if (disc.conjugate_symmetric && std::abs(y.imag()) > 1e-8 * (std::abs(y.real()) + 1.0))
    throw ValidationError("output imaginary residue " + std::to_string(y.imag()) +
                          " exceeds bound for a conjugate-symmetric system");
  return y.real();
}

double dense_step(const DiscreteDense& disc, SsmState& state, double u) {
  const Eigen::Index n = disc.a_bar.rows();
  if (state.x.size() != n)
    throw DimensionError("state length " + std::to_string(state.x.size()) + ", system has " +
                         std::to_string(n));
  if (state.scratch.size() != n) state.scratch.resize(n);

  state.scratch.noalias() = disc.a_bar * state.x;
  state.scratch.noalias() += disc.b_bar * u;
  state.x.swap(state.scratch);
  if (!state.x.allFinite())
    throw DivergenceError("state became non-finite while stepping");
  const Complex y = disc.c_bar.dot(state.x);  // Eigen dot conjugates the left side
  return y.real();
}

Mat dplr_materialize_a_bar(const DiscreteDplr& disc) {
  const double two_over_delta = 2.0 / disc.delta;
  Mat a0 = Mat(disc.lambda.asDiagonal());
  a0.diagonal().array() += two_over_delta;
  if (disc.rank > 0) a0 -= disc.p * disc.q.adjoint();

  Mat d = Mat(disc.d_vec.asDiagonal());
  Mat a1 = d;
  if (disc.rank > 0) {
    const Mat core = disc.woodbury_core.topLeftCorner(disc.rank, disc.rank);
    a1 -= d * disc.p * core * disc.q.adjoint() * d;
  }
  return a1 * a0;
}

Vec dplr_materialize_b_bar(const DiscreteDplr& disc) {
  Vec w = disc.d_vec.cwiseProduct(disc.b);
  if (disc.rank > 0) {
    const Mat core = disc.woodbury_core.topLeftCorner(disc.rank, disc.rank);
    const Vec qw = disc.q.adjoint() * w;
    w -= disc.d_vec.cwiseProduct(disc.p * (core * qw));
  }
  return 2.0 * w;
}

DiscreteDense dplr_materialize_dense(const DiscreteDplr& disc) {
  DiscreteDense dense;
  dense.a_bar = dplr_materialize_a_bar(disc);
  dense.b_bar = dplr_materialize_b_bar(disc);
  dense.c_bar = disc.c;
  dense.delta = disc.delta;
  return dense;
}

}  // namespace s4
