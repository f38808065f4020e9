#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mcerr/estimator.hpp"
#include "mcerr/finite_chain.hpp"
#include "mcerr/planner.hpp"

namespace mcerr::config {

using json = nlohmann::json;

/// Parsed, version-checked configuration.  `kind` selects the schema of
/// `body` (the object without the version/kind keys).
struct ParsedConfig {
    int version = 1;
    std::string kind;
    json body;
};

/// Strict parse: unknown keys are fatal, "version" is mandatory.
ParsedConfig parse_config_text(const std::string& text, const std::string& origin);
ParsedConfig parse_config_file(const std::string& path);

/// Serialization used for round-trip fixtures (sorted keys, fixed layout).
std::string canonical_dump(const json& j);

/// "toy" configs: {"family": "circle"|"hypercube"|"star", "T":…, "d":…, "theta":…}.
finite::ToySpec toy_from_json(const json& body);
json toy_to_json(const finite::ToySpec& spec);

/// "estimate" configs: kernel + initial + integrand + run sizes.
struct EstimateSetup {
    estimator::RunConfig run;
    double true_value = 0.0;
    bool has_true_value = false;
    double bound_lower = 0.0;
    double bound_upper = std::numeric_limits<double>::infinity();
    bool has_bounds = false;
};
EstimateSetup estimate_from_json(const json& body);

/// "plan" configs.
struct PlanSetup {
    std::string problem;
    planner::Plan plan;
    json detail;  // solved plan rendered back to JSON
};
PlanSetup plan_from_json(const json& body);

/// Rejects keys outside `allowed`; names the offending key.
void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where);

}  // namespace mcerr::config
