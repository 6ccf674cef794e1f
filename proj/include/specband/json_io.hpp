#pragma once

#include <string>

#include <json.hpp>

#include "specband/bounds.hpp"
#include "specband/clustering.hpp"
#include "specband/discriminant.hpp"
#include "specband/dynamics.hpp"
#include "specband/fibonacci.hpp"

namespace specband {

using ojson = nlohmann::ordered_json;

// Field orders are part of the format: identical inputs must serialize to
// byte-identical documents.
ojson to_json(const DiscriminantData& data);
ojson to_json(const ClusterCover& cover);
ojson to_json(const ConditionReport& report);
ojson to_json(const UniformReport& report);
ojson to_json(const NiceScalingReport& report);
ojson to_json(const BoundReport& report);
ojson to_json(const DynamicsProfile& profile);
ojson to_json(const FibonacciHierarchy& hier);
ojson to_json(const FibConstants& constants);
ojson to_json(const DerivativeBoundReport& report);
ojson to_json(const FibPipelineReport& report);
ojson to_json(const ExponentConclusion& conclusion);
ojson to_json(const MultiscaleHypothesis& hyp);

std::string spectrum_csv(const DiscriminantData& data);
std::string exponent_scan_csv(const ExponentScan& scan);

void save_hierarchy_json(const FibonacciHierarchy& hier, const std::string& path);
FibonacciHierarchy load_hierarchy_json(const std::string& path);

void write_text(const std::string& path, const std::string& text);

} // namespace specband
