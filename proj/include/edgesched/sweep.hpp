#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "edgesched/ingest.hpp"
#include "edgesched/model.hpp"

namespace edgesched {

enum class SweepAxis { GridSize, K, Alpha };

struct SweepGridValue {
  GridSpec spec;
  int servers = 0;
};

struct SweepRequest {
  SweepAxis axis = SweepAxis::K;
  std::vector<double> values;               // K or alpha rungs
  std::vector<SweepGridValue> grid_values;  // grid-size rungs
  int reps = 5;
  int workers = 1;
  std::uint64_t seed = 0;
  ScenarioInstance base;             // K and alpha axes
  std::vector<OrderRecord> records;  // grid axis
  DerivedProfile ingest_profile;
  int ingest_days = 1;
};

struct SweepRow {
  std::string value_label;
  bool valid = false;
  bool solved = false;
  std::string regime;  // empty when admission already fails
  std::int64_t public_capacity_per_server = 0;
  bool private_feasible = false;
  double mean_wall_ms = 0.0;
  double mean_branch_nodes = 0.0;
  double mean_objective = 0.0;
  std::string solver_error;  // non-empty when a valid point failed to solve
  ServiceStats stats;
  std::int64_t k_lower = -1;  // -1 when undefined
  std::int64_t k_upper = -1;
};

// Smallest K whose private share covers every server AP's private demand,
// and smallest K (never below the first) whose public share absorbs the
// whole routed demand without the cloud. Either is -1 when no K can achieve
// it (alpha at 0 or 1, or no servers).
std::pair<std::int64_t, std::int64_t> k_sweep_bounds(const ScenarioInstance& inst);

// Five increasing integer K values spanning the bounds above.
std::vector<double> default_k_ladder(const ScenarioInstance& inst);

// Rows in the order of the requested values. Points run on `workers`
// threads (each point is an independent instance); row assembly stays
// serialized. Invalid points are reported with capacity and service columns
// filled and solver columns empty, so a sweep can chart the transition into
// the feasible region.
std::vector<SweepRow> run_sweep(const SweepRequest& req);

std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const std::string& axis_name,
                      const std::string& input_digest, std::uint64_t seed);

}  // namespace edgesched
