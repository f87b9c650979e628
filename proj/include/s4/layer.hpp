// Deep layer: H independent single-input single-output SSMs sharing the
// HiPPO-derived structure (Lambda, P, Q) with per-feature B, C, delta and
// skip D, followed by an activation and a position-wise linear mix.
// Forward-only; the two forward paths (convolution, recurrence) compute the
// same function.
#pragma once

#include <cstdint>
#include <vector>

#include "s4/discretize.hpp"
#include "s4/hippo.hpp"
#include "s4/ssm.hpp"

namespace s4 {

enum class Activation { Identity, Relu, Gelu };

double apply_activation(Activation act, double x);

// Dense real tensor of shape (batch, length, features), row-major.
struct Tensor3 {
  std::size_t batch = 0, length = 0, features = 0;
  std::vector<double> data;

  Tensor3() = default;
  Tensor3(std::size_t b, std::size_t l, std::size_t h)
      : batch(b), length(l), features(h), data(b * l * h, 0.0) {}

  double& at(std::size_t b, std::size_t t, std::size_t h) {
    return data[(b * length + t) * features + h];
  }
  double at(std::size_t b, std::size_t t, std::size_t h) const {
    return data[(b * length + t) * features + h];
  }
};

struct LayerOptions {
  Activation activation = Activation::Gelu;
  double delta_min = 1e-3;  // per-feature delta drawn log-uniform in this range
  double delta_max = 1e-1;
  bool per_feature_lambda = false;  // experimentation flag; default ties Lambda, P, Q
  NplrOptions nplr;
};

struct S4LayerParams {
  int h = 0;
  int n = 0;
  int rank = 0;
  HippoFamily family = HippoFamily::LegS;
  Activation activation = Activation::Gelu;
  bool per_feature_lambda = false;

  // Shared structure (index 0) or per-feature copies when per_feature_lambda.
  std::vector<Vec> lambda;
  std::vector<Mat> p;
  std::vector<Mat> q;

  std::vector<Vec> b;          // per feature
  std::vector<Vec> c;          // per feature
  std::vector<double> delta;   // per feature
  std::vector<double> d_skip;  // per feature

  Eigen::MatrixXd mix;   // H x H position-wise mixing
  Eigen::VectorXd bias;  // H

  const Vec& lambda_of(int feature) const { return lambda[per_feature_lambda ? feature : 0]; }
  const Mat& p_of(int feature) const { return p[per_feature_lambda ? feature : 0]; }
  const Mat& q_of(int feature) const { return q[per_feature_lambda ? feature : 0]; }

  DplrSpec feature_spec(int feature) const;
};

// All feature SSMs initialized from the family decomposition; B from the
// family default, C standard normal, delta log-uniform, D standard normal,
// mix orthogonal-ish random with zero bias. Deterministic per seed.
S4LayerParams layer_init(int h, int n, HippoFamily family, std::uint64_t seed,
                         const LayerOptions& opts = {});

// Per feature: y_h = conv(K_h, u_h) + D_h u_h, then activation, then mix.
Tensor3 layer_forward_conv(const S4LayerParams& params, const Tensor3& u);

// Identical function computed with per-feature recurrent stepping; memory per
// time step is independent of L.
Tensor3 layer_forward_recurrent(const S4LayerParams& params, const Tensor3& u);

// Adapting to data sampled at `frequency_ratio` times the original rate:
// delta_h <- delta_h / ratio for every feature (0.5x frequency doubles the
// implicit step). All other parameters untouched.
S4LayerParams resample_delta(S4LayerParams params, double frequency_ratio);

// Logical trainable-parameter census (each feature's SSM counted in full,
// whether or not the structure is tied).
struct ParameterCount {
  std::size_t features = 0;
  std::size_t complex_per_feature = 0;  // lambda, p, q, b, c
  std::size_t real_per_feature = 0;     // delta, d
  std::size_t mix_params = 0;           // H^2 + H
  std::size_t total_real_scalars() const;
};
ParameterCount layer_parameter_count(const S4LayerParams& params);

}  // namespace s4
