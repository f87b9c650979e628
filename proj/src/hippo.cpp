#include "s4/hippo.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "s4/rng.hpp"

namespace s4 {

std::string family_name(HippoFamily f) {
  switch (f) {
    case HippoFamily::LegS: return "legs";
    case HippoFamily::LegT: return "legt";
    case HippoFamily::LagT: return "lagt";
  }
  return "legs";
}

HippoFamily family_from_name(const std::string& name) {
  if (name == "legs") return HippoFamily::LegS;
  if (name == "legt") return HippoFamily::LegT;
  if (name == "lagt") return HippoFamily::LagT;
  throw ValidationError("unknown family '" + name + "', expected legs/legt/lagt");
}

Eigen::MatrixXd hippo_matrix(HippoFamily family, int n, const NplrOptions& opts) {
  if (n < 1) throw DimensionError("state size must be at least 1");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  switch (family) {
    case HippoFamily::LegS:
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k)
          a(i, k) = -std::sqrt(2.0 * i + 1.0) * std::sqrt(2.0 * k + 1.0);
        a(i, i) = -(i + 1.0);
      }
      break;
    case HippoFamily::LegT:
      for (int i = 0; i < n; ++i) {
        const double ri = std::sqrt(2.0 * i + 1.0);
        for (int k = 0; k < n; ++k) {
          const double rk = std::sqrt(2.0 * k + 1.0);
          const double sign = (i < k && (k - i) % 2 == 1) ? -1.0 : 1.0;
          a(i, k) = -ri * rk * sign;
        }
      }
      break;
    case HippoFamily::LagT:
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k) a(i, k) = -1.0;
        a(i, i) = opts.lagt_diag;
      }
      break;
  }
  return a;
}

namespace {

// Real low-rank factors P, Q with A + P Q^T = shift*I + skew.
void low_rank_factors(HippoFamily family, int n, Eigen::MatrixXd& p, Eigen::MatrixXd& q,
                      int& rank) {
  switch (family) {
    case HippoFamily::LegS:
      rank = 1;
      p.resize(n, 1);
      for (int i = 0; i < n; ++i) p(i, 0) = std::sqrt(i + 0.5);
      q = p;
      break;
    case HippoFamily::LagT:
      rank = 1;
      p = Eigen::MatrixXd::Constant(n, 1, std::sqrt(0.5));
      q = p;
      break;
    case HippoFamily::LegT:
      // Symmetric rank-2 correction with sqrt(2n+1) weights interleaved on
      // even/odd indices; the remaining skew part is 2-quasiseparable.
      rank = 2;
      p = Eigen::MatrixXd::Zero(n, 2);
      for (int i = 0; i < n; ++i) p(i, i % 2) = std::sqrt(2.0 * i + 1.0);
      q = p;
      break;
  }
}

}  // namespace

double normal_part_shift(HippoFamily family, const NplrOptions& opts) {
  switch (family) {
    case HippoFamily::LegS: return -0.5;
    case HippoFamily::LegT: return 0.0;
    case HippoFamily::LagT: return opts.lagt_diag + 0.5;
  }
  return 0.0;
}

NplrDecomposition nplr_decompose(HippoFamily family, int n, const NplrOptions& opts) {
  if (n < 1) throw DimensionError("state size must be at least 1");

  const Eigen::MatrixXd a = hippo_matrix(family, n, opts);
  Eigen::MatrixXd p_real, q_real;
  int rank = 0;
  low_rank_factors(family, n, p_real, q_real, rank);
  const double shift = normal_part_shift(family, opts);

  // Skew part of the normal term. Symmetrize exactly so i*S is Hermitian by
  // construction even under floating-point rounding of the sqrt entries.
  Eigen::MatrixXd normal = a + p_real * q_real.transpose();
  Eigen::MatrixXd skew = 0.5 * (normal - normal.transpose());

  Mat herm = Complex(0.0, 1.0) * skew.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Mat> es(herm);
  if (es.info() != Eigen::Success) {
    const double residual = (herm - herm.adjoint()).norm();
    throw SingularityError("eigensolver failed on the skew part, Hermitian residual " +
                           std::to_string(residual));
  }

  // S = -i * herm, so the eigenvalue of the normal part is shift - i*mu.
  const Eigen::VectorXd mu = es.eigenvalues();
  Vec lambda(n);
  for (int j = 0; j < n; ++j) lambda(j) = Complex(shift, -mu(j));
  Mat v = es.eigenvectors();

  // Deterministic ordering: imaginary part ascending, ties by real part.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    if (lambda(i).imag() != lambda(j).imag()) return lambda(i).imag() < lambda(j).imag();
    return lambda(i).real() < lambda(j).real();
  });
  Vec lambda_sorted(n);
  Mat v_sorted(n, n);
  for (int j = 0; j < n; ++j) {
    lambda_sorted(j) = lambda(order[j]);
    v_sorted.col(j) = v.col(order[j]);
  }

  NplrDecomposition d;
  d.v = std::move(v_sorted);
  d.lambda = std::move(lambda_sorted);
  d.p_real = p_real;
  d.q_real = opts.pp_star ? p_real : q_real;
  d.p = d.v.adjoint() * p_real.cast<Complex>();
  d.q = d.v.adjoint() * d.q_real.cast<Complex>();
  d.rank = rank;
  d.family = family;
  return d;
}

DplrSpec dplr_from_nplr(const NplrDecomposition& d, const Vec& b, const Vec& c) {
  const Eigen::Index n = d.lambda.size();
  if (b.size() != n) throw DimensionError("field 'b': expected length " + std::to_string(n));
  if (c.size() != n) throw DimensionError("field 'c': expected length " + std::to_string(n));
  DplrSpec spec;
  spec.lambda = d.lambda;
  spec.p = d.p;
  spec.q = d.q;
  spec.b = d.v.adjoint() * b;
  spec.c = d.v.adjoint() * c;
  spec.rank = d.rank;
  spec.conjugate_symmetric = b.imag().isZero(0.0) && c.imag().isZero(0.0);
  validate_dplr(spec);
  return spec;
}

DplrSpec hippo_dplr_spec(HippoFamily family, int n, std::uint64_t c_seed,
                         const NplrOptions& opts) {
  const NplrDecomposition d = nplr_decompose(family, n, opts);
  DplrSpec spec;
  spec.lambda = d.lambda;
  spec.p = d.p;
  spec.q = d.q;
  spec.b = d.v.adjoint() * default_b_vector(family, n).cast<Complex>();
  // C is a free parameter of the diagonalized system; draw it there directly.
  spec.c = default_c_vector(n, c_seed);
  spec.rank = d.rank;
  spec.conjugate_symmetric = false;
  validate_dplr(spec);
  return spec;
}

Eigen::VectorXd default_b_vector(HippoFamily family, int n) {
  if (n < 1) throw DimensionError("state size must be at least 1");
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i)
    b(i) = family == HippoFamily::LagT ? 1.0 : std::sqrt(2.0 * i + 1.0);
  return b;
}

Vec default_c_vector(int n, std::uint64_t seed) {
  if (n < 1) throw DimensionError("state size must be at least 1");
  Rng rng(seed);
  Vec c(n);
  for (int i = 0; i < n; ++i) c(i) = rng.complex_gaussian();
  return c;
}

BigMatrix legs_eigenvector_matrix(int n) {
  if (n < 1) throw DimensionError("state size must be at least 1");
  BigMatrix v(n, std::vector<BigInt>(n, BigInt(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      mpz_bin_uiui(v[i][j].get_mpz_t(), static_cast<unsigned long>(i + j),
                   static_cast<unsigned long>(i - j));
    }
  }
  return v;
}

}  // namespace s4
