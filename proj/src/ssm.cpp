#include "s4/ssm.hpp"

#include <Eigen/SVD>
#include <string>

namespace s4 {

namespace {

bool all_finite(const Mat& m) { return m.allFinite(); }
bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace

ContinuousSsm make_continuous_ssm(Mat a, Vec b, Vec c, double d) {
  const Eigen::Index n = a.rows();
  if (n < 1) throw DimensionError("field 'a': state size must be at least 1");
  if (a.cols() != n)
    throw DimensionError("field 'a': expected square matrix, got " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
  if (b.size() != n)
    throw DimensionError("field 'b': expected length " + std::to_string(n) + ", got " +
                         std::to_string(b.size()));
  if (c.size() != n)
    throw DimensionError("field 'c': expected length " + std::to_string(n) + ", got " +
                         std::to_string(c.size()));
  if (!all_finite(a)) throw ValidationError("field 'a' contains non-finite entries");
  if (!all_finite(b)) throw ValidationError("field 'b' contains non-finite entries");
  if (!all_finite(c)) throw ValidationError("field 'c' contains non-finite entries");
  if (!std::isfinite(d)) throw ValidationError("field 'd' is non-finite");
  return ContinuousSsm{std::move(a), std::move(b), std::move(c), d, n};
}

void validate_dplr(const DplrSpec& spec) {
  const Eigen::Index n = spec.lambda.size();
  if (n < 1) throw DimensionError("field 'lambda': state size must be at least 1");
  if (spec.rank < 0 || spec.rank > 2)
    throw ValidationError("field 'rank': expected 0, 1 or 2, got " + std::to_string(spec.rank));
  if (spec.p.rows() != n || spec.p.cols() != spec.rank)
    throw DimensionError("field 'p': expected " + std::to_string(n) + "x" +
                         std::to_string(spec.rank));
  if (spec.q.rows() != n || spec.q.cols() != spec.rank)
    throw DimensionError("field 'q': expected " + std::to_string(n) + "x" +
                         std::to_string(spec.rank));
  if (spec.b.size() != n) throw DimensionError("field 'b': expected length " + std::to_string(n));
  if (spec.c.size() != n) throw DimensionError("field 'c': expected length " + std::to_string(n));
  if (!all_finite(spec.lambda) || !all_finite(spec.p) || !all_finite(spec.q) ||
      !all_finite(spec.b) || !all_finite(spec.c))
    throw ValidationError("DPLR parameters contain non-finite entries");
}

ContinuousSsm conjugate(const ContinuousSsm& ssm, const Mat& v, double cond_limit) {
  if (v.rows() != ssm.n || v.cols() != ssm.n)
    throw DimensionError("field 'v': expected " + std::to_string(ssm.n) + "x" +
                         std::to_string(ssm.n));

  Eigen::JacobiSVD<Mat> svd(v);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const double smax = svd.singularValues()(0);
  if (!(smin > 0.0))
    throw ConditioningError("conjugation basis is singular", std::numeric_limits<double>::infinity());
  const double cond = smax / smin;
  if (cond > cond_limit)
    throw ConditioningError("conjugation basis condition estimate " + std::to_string(cond) +
                                " exceeds limit " + std::to_string(cond_limit),
                            cond);

  Eigen::PartialPivLU<Mat> lu(v);
  Mat a_new = lu.solve(ssm.a * v);
  Vec b_new = lu.solve(ssm.b);
  // y = C* x is preserved under x = V x~ by C -> V* C.
  Vec c_new = v.adjoint() * ssm.c;
  return ContinuousSsm{std::move(a_new), std::move(b_new), std::move(c_new), ssm.d, ssm.n};
}

Mat dplr_to_dense(const DplrSpec& spec) {
  validate_dplr(spec);
  Mat a = spec.lambda.asDiagonal();
  if (spec.rank > 0) a -= spec.p * spec.q.adjoint();
  return a;
}

ContinuousSsm dplr_to_continuous(const DplrSpec& spec) {
  return make_continuous_ssm(dplr_to_dense(spec), spec.b, spec.c, 0.0);
}

}  // namespace s4
