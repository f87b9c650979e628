#include "s4/serialize.hpp"

#include <string>

namespace s4 {

namespace {

constexpr const char* kParamsFormat = "s4-params-v1";
constexpr const char* kLayerFormat = "s4-layer-v1";

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ValidationError("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vec vec_from_json(const Json& j, const char* field) {
  if (!j.is_array()) throw ValidationError(std::string("field '") + field + "' must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

// N x r matrices are stored as r column arrays.
Json mat_to_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(vec_to_json(m.col(c)));
  return out;
}

Mat mat_from_json(const Json& j, Eigen::Index rows, const char* field) {
  if (!j.is_array()) throw ValidationError(std::string("field '") + field + "' must be an array");
  Mat m(rows, static_cast<Eigen::Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    const Vec col = vec_from_json(j[c], field);
    if (col.size() != rows)
      throw ValidationError(std::string("field '") + field + "' column " + std::to_string(c) +
                            " has wrong length");
    m.col(static_cast<Eigen::Index>(c)) = col;
  }
  return m;
}

}  // namespace

Json dplr_to_json(const DplrSpec& spec, std::optional<double> delta,
                  std::optional<HippoFamily> family) {
  validate_dplr(spec);
  Json j;
  j["format"] = kParamsFormat;
  j["lambda"] = vec_to_json(spec.lambda);
  j["p"] = mat_to_json(spec.p);
  j["q"] = mat_to_json(spec.q);
  j["b"] = vec_to_json(spec.b);
  j["c"] = vec_to_json(spec.c);
  j["rank"] = spec.rank;
  j["conjugate_symmetric"] = spec.conjugate_symmetric;
  if (delta) j["delta"] = *delta;
  if (family) j["family"] = family_name(*family);
  return j;
}

DplrSpec dplr_from_json(const Json& j, double* delta_out) {
  if (!j.contains("format") || j["format"] != kParamsFormat)
    throw ValidationError("expected format tag '" + std::string(kParamsFormat) + "'");
  DplrSpec spec;
  spec.lambda = vec_from_json(j.at("lambda"), "lambda");
  const Eigen::Index n = spec.lambda.size();
  spec.p = mat_from_json(j.at("p"), n, "p");
  spec.q = mat_from_json(j.at("q"), n, "q");
  spec.b = vec_from_json(j.at("b"), "b");
  spec.c = vec_from_json(j.at("c"), "c");
  spec.rank = j.at("rank").get<int>();
  spec.conjugate_symmetric = j.value("conjugate_symmetric", false);
  validate_dplr(spec);
  if (delta_out && j.contains("delta")) *delta_out = j["delta"].get<double>();
  return spec;
}

Json layer_to_json(const S4LayerParams& params) {
  Json j;
  j["format"] = kLayerFormat;
  j["h"] = params.h;
  j["n"] = params.n;
  j["family"] = family_name(params.family);
  j["activation"] = static_cast<int>(params.activation);
  j["per_feature_lambda"] = params.per_feature_lambda;

  Json mix = Json::array();
  for (int i = 0; i < params.h; ++i) {
    Json row = Json::array();
    for (int k = 0; k < params.h; ++k) row.push_back(params.mix(i, k));
    mix.push_back(row);
  }
  j["mix"] = mix;
  Json bias = Json::array();
  for (int i = 0; i < params.h; ++i) bias.push_back(params.bias(i));
  j["bias"] = bias;

  Json features = Json::array();
  for (int f = 0; f < params.h; ++f) {
    Json ft = dplr_to_json(params.feature_spec(f), params.delta[f], params.family);
    ft["d"] = params.d_skip[f];
    features.push_back(ft);
  }
  j["features"] = features;
  return j;
}

S4LayerParams layer_from_json(const Json& j) {
  if (!j.contains("format") || j["format"] != kLayerFormat)
    throw ValidationError("expected format tag '" + std::string(kLayerFormat) + "'");
  S4LayerParams params;
  params.h = j.at("h").get<int>();
  params.n = j.at("n").get<int>();
  params.family = family_from_name(j.at("family").get<std::string>());
  params.activation = static_cast<Activation>(j.at("activation").get<int>());
  params.per_feature_lambda = j.value("per_feature_lambda", false);

  const auto& features = j.at("features");
  if (static_cast<int>(features.size()) != params.h)
    throw ValidationError("manifest lists " + std::to_string(features.size()) +
                          " features, header says " + std::to_string(params.h));

  const int copies = params.per_feature_lambda ? params.h : 1;
  params.lambda.resize(copies);
  params.p.resize(copies);
  params.q.resize(copies);
  for (int f = 0; f < params.h; ++f) {
    double delta = 0.0;
    const DplrSpec spec = dplr_from_json(features[f], &delta);
    params.rank = spec.rank;
    if (f < copies) {
      params.lambda[f] = spec.lambda;
      params.p[f] = spec.p;
      params.q[f] = spec.q;
    }
    params.b.push_back(spec.b);
    params.c.push_back(spec.c);
    params.delta.push_back(delta);
    params.d_skip.push_back(features[f].at("d").get<double>());
  }

  params.mix.resize(params.h, params.h);
  for (int i = 0; i < params.h; ++i)
    for (int k = 0; k < params.h; ++k) params.mix(i, k) = j.at("mix")[i][k].get<double>();
  params.bias.resize(params.h);
  for (int i = 0; i < params.h; ++i) params.bias(i) = j.at("bias")[i].get<double>();
  return params;
}

Json growth_report_to_json(const GrowthReport& report) {
  Json j;
  j["n"] = report.n;
  j["max_entry"] = report.max_entry.get_str();
  j["log2_max"] = report.log2_max;
  j["threshold_exceeded"] = report.threshold_exceeded;
  j["context"] =
      report.context == GrowthContext::EigvecMatrix ? "eigvec_matrix" : "charpoly_inverse";
  return j;
}

}  // namespace s4
