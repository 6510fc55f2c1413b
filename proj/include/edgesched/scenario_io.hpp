#pragma once

#include <string>

#include "edgesched/model.hpp"

namespace edgesched {

// Scenario files are JSON with exactly the top-level keys aps, links,
// profile, theta, pi, placement. Unknown keys anywhere are rejected, AP ids
// must be 1..n in order, and the delay matrix is recomputed from the links
// on load. Serialization is byte-deterministic for a given instance.
ScenarioInstance parse_scenario_text(const std::string& text);
ScenarioInstance load_scenario(const std::string& path);
std::string scenario_to_text(const ScenarioInstance& inst);
void save_scenario(const ScenarioInstance& inst, const std::string& path);

}  // namespace edgesched
