// JSON serialization. DPLR parameter sets use the s4-params-v1 layout:
// complex entries encoded as [re, im] pairs, fields lambda/p/q/b/c/rank/delta,
// a "format" version tag, and an optional "family" string. Layer bundles are
// manifests embedding one params block per feature.
#pragma once

#include <json.hpp>
#include <optional>

#include "s4/diagnostics.hpp"
#include "s4/hippo.hpp"
#include "s4/layer.hpp"
#include "s4/ssm.hpp"

namespace s4 {

using Json = nlohmann::json;

Json dplr_to_json(const DplrSpec& spec, std::optional<double> delta = std::nullopt,
                  std::optional<HippoFamily> family = std::nullopt);

// Throws ValidationError on a missing/mismatched format tag or bad shapes.
// If delta_out is non-null and the document carries a delta, it is stored.
DplrSpec dplr_from_json(const Json& j, double* delta_out = nullptr);

Json layer_to_json(const S4LayerParams& params);
S4LayerParams layer_from_json(const Json& j);

Json growth_report_to_json(const GrowthReport& report);

}  // namespace s4
