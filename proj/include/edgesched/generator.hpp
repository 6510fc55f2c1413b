#pragma once

#include <cstdint>
#include <random>

#include "edgesched/model.hpp"

namespace edgesched {

// Random but always-valid instances for cross-checking the solver against
// the oracles. Link lengths, local delays and lambda live on a 1e-3 grid so
// the flow oracle's integer cost scaling is exact, and lambda is drawn at or
// above the largest routing delay, the same shape ingested scenarios have
// (there lambda is ten times the largest delay). All draws go through
// mt19937_64 with explicit mappings, so a seed pins the instance on every
// platform.
struct GenLimits {
  int max_aps = 6;
  int max_servers = 3;
  std::int64_t max_theta = 5;
  std::int64_t max_routed = 0;  // cap on total routed demand, 0 = none
};

// Inclusive uniform integer draw.
std::int64_t rand_between(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

ScenarioInstance random_instance(std::mt19937_64& rng, const GenLimits& lim);

// Redraws until the instance classifies as `want`; throws std::runtime_error
// if the limits make the regime unreachable within the attempt budget.
ScenarioInstance random_instance_of_regime(std::mt19937_64& rng,
                                           const GenLimits& lim, Regime want);

}  // namespace edgesched
