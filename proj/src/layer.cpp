#include "s4/layer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "s4/kernel.hpp"
#include "s4/rng.hpp"

namespace s4 {

double apply_activation(Activation act, double x) {
  switch (act) {
    case Activation::Identity: return x;
    case Activation::Relu: return x > 0.0 ? x : 0.0;
    case Activation::Gelu: {
      const double c = std::sqrt(2.0 / std::numbers::pi);
      return 0.5 * x * (1.0 + std::tanh(c * (x + 0.044715 * x * x * x)));
    }
  }
  return x;
}

DplrSpec S4LayerParams::feature_spec(int feature) const {
  DplrSpec spec;
  spec.lambda = lambda_of(feature);
  spec.p = p_of(feature);
  spec.q = q_of(feature);
  spec.b = b[feature];
  spec.c = c[feature];
  spec.rank = rank;
  spec.conjugate_symmetric = false;
  return spec;
}

S4LayerParams layer_init(int h, int n, HippoFamily family, std::uint64_t seed,
                         const LayerOptions& opts) {
  if (h < 1) throw DimensionError("feature count must be at least 1");
  if (n < 1) throw DimensionError("state size must be at least 1");

  Rng rng(seed);
  const NplrDecomposition d = nplr_decompose(family, n, opts.nplr);

  S4LayerParams params;
  params.h = h;
  params.n = n;
  params.rank = d.rank;
  params.family = family;
  params.activation = opts.activation;
  params.per_feature_lambda = opts.per_feature_lambda;

  const int structure_copies = opts.per_feature_lambda ? h : 1;
  params.lambda.assign(structure_copies, d.lambda);
  params.p.assign(structure_copies, d.p);
  params.q.assign(structure_copies, d.q);

  const Vec b_basis = d.v.adjoint() * default_b_vector(family, n).cast<Complex>();
  params.b.assign(h, b_basis);
  params.c.resize(h);
  params.delta.resize(h);
  params.d_skip.resize(h);
  for (int f = 0; f < h; ++f) {
    Vec c(n);
    for (int i = 0; i < n; ++i) c(i) = rng.complex_gaussian();
    params.c[f] = std::move(c);
    params.delta[f] = rng.log_uniform(opts.delta_min, opts.delta_max);
    params.d_skip[f] = rng.gaussian();
  }

  params.mix.resize(h, h);
  const double mix_scale = 1.0 / std::sqrt(static_cast<double>(h));
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) params.mix(i, j) = mix_scale * rng.gaussian();
  params.bias = Eigen::VectorXd::Zero(h);
  return params;
}

namespace {

void check_input(const S4LayerParams& params, const Tensor3& u) {
  if (u.features != static_cast<std::size_t>(params.h))
    throw DimensionError("input has " + std::to_string(u.features) + " features, layer has " +
                         std::to_string(params.h));
  if (u.length < 1) throw DimensionError("sequence length must be at least 1");
}

// Activation followed by the position-wise mix, in place over the tensor.
void finish(const S4LayerParams& params, Tensor3& y) {
  const int h = params.h;
  Eigen::VectorXd row(h), mixed(h);
  for (std::size_t bi = 0; bi < y.batch; ++bi) {
    for (std::size_t t = 0; t < y.length; ++t) {
      for (int f = 0; f < h; ++f) row(f) = apply_activation(params.activation, y.at(bi, t, f));
      mixed.noalias() = params.mix * row;
      mixed += params.bias;
      for (int f = 0; f < h; ++f) y.at(bi, t, f) = mixed(f);
    }
  }
}

}  // namespace

Tensor3 layer_forward_conv(const S4LayerParams& params, const Tensor3& u) {
  check_input(params, u);
  const std::size_t l = u.length;
  Tensor3 y(u.batch, l, u.features);

  std::vector<double> uh(l);
  for (int f = 0; f < params.h; ++f) {
    const DplrSpec spec = params.feature_spec(f);
    ConvKernel kernel;
    try {
      const CTilde ct = c_tilde_from_c(spec, params.delta[f], l);
      kernel = s4_kernel(spec, params.delta[f], l, ct);
    } catch (const Error& e) {
      throw Error("feature " + std::to_string(f) + ": " + e.what());
    }
    for (std::size_t bi = 0; bi < u.batch; ++bi) {
      for (std::size_t t = 0; t < l; ++t) uh[t] = u.at(bi, t, f);
      const std::vector<double> yh = convolve(kernel, uh);
      for (std::size_t t = 0; t < l; ++t)
        y.at(bi, t, f) = yh[t] + params.d_skip[f] * uh[t];
    }
  }
  finish(params, y);
  return y;
}

Tensor3 layer_forward_recurrent(const S4LayerParams& params, const Tensor3& u) {
  check_input(params, u);
  const std::size_t l = u.length;
  Tensor3 y(u.batch, l, u.features);

  for (int f = 0; f < params.h; ++f) {
    DiscreteDplr disc;
    try {
      disc = dplr_discretize(params.feature_spec(f), params.delta[f]);
    } catch (const Error& e) {
      throw Error("feature " + std::to_string(f) + ": " + e.what());
    }
    for (std::size_t bi = 0; bi < u.batch; ++bi) {
      SsmState state(params.n);
      for (std::size_t t = 0; t < l; ++t) {
        const double ut = u.at(bi, t, f);
        double yt;
        try {
          yt = recurrent_step(disc, state, ut);
        } catch (const DivergenceError& e) {
          throw DivergenceError("feature " + std::to_string(f) + ": " + e.what(),
                                static_cast<std::ptrdiff_t>(t));
        }
        y.at(bi, t, f) = yt + params.d_skip[f] * ut;
      }
    }
  }
  finish(params, y);
  return y;
}

S4LayerParams resample_delta(S4LayerParams params, double frequency_ratio) {
  if (!(frequency_ratio > 0.0))
    throw ValidationError("frequency ratio must be positive, got " +
                          std::to_string(frequency_ratio));
  for (double& dt : params.delta) dt /= frequency_ratio;
  return params;
}

std::size_t ParameterCount::total_real_scalars() const {
  return features * (2 * complex_per_feature + real_per_feature) + mix_params;
}

ParameterCount layer_parameter_count(const S4LayerParams& params) {
  ParameterCount count;
  const std::size_t n = static_cast<std::size_t>(params.n);
  const std::size_t r = static_cast<std::size_t>(params.rank);
  count.features = static_cast<std::size_t>(params.h);
  // lambda + P + Q + B + C per logical feature SSM: (3 + 2r) N complex.
  count.complex_per_feature = (3 + 2 * r) * n;
  count.real_per_feature = 2;  // delta, D
  count.mix_params = count.features * count.features + count.features;
  return count;
}

}  // namespace s4
