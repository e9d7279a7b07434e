#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bergman/criteria.hpp"
#include "bergman/functions.hpp"
#include "bergman/measures.hpp"
#include "bergman/weights.hpp"

namespace bergman {

nlohmann::json to_json(const DiscPoint& z);
nlohmann::json to_json(const WeightClassReport& report);
nlohmann::json to_json(const CriterionReport& report);
nlohmann::json to_json(const GammaCheck& check);
nlohmann::json to_json(const GammaChoice& choice);

/// Parsers for the configuration objects. Malformed input raises ConfigError.
RadialWeight weight_from_json(const nlohmann::json& spec);
/// `base_dir` resolves relative CSV paths of atomic measures.
DiscMeasure measure_from_json(const nlohmann::json& spec,
                              std::shared_ptr<const QuadratureGrid> grid,
                              const std::string& base_dir = ".");
AnalyticFunction function_from_json(const nlohmann::json& spec);
SelfMap self_map_from_json(const nlohmann::json& spec);
DiscPoint point_from_json(const nlohmann::json& spec);
CarlesonConvention convention_from_string(const std::string& name);

/// basepoint re, im, value.
void write_samples_csv(std::ostream& out, const std::vector<Sample>& samples);

}  // namespace bergman
