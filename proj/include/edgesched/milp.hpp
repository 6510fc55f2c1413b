#pragma once

#include <cstdint>
#include <vector>

#include "edgesched/lp.hpp"
#include "edgesched/model.hpp"
#include "edgesched/partition.hpp"

namespace edgesched {

// Routing program for one classified instance. Variables are the y columns
// (one per AP/server pair, AP-major) followed, when the cloud is needed, by
// one overflow variable per server. The admitted-delay term sum_i pi_i chi_i
// does not depend on the routing and is kept out of the program.
struct BuiltModel {
  LinearProgram lp;
  double constant_delay = 0.0;
  std::vector<int> servers;  // 0-based AP index per server column
  int zeta_begin = -1;       // first overflow variable, -1 when absent
};

// Throws std::invalid_argument when the descriptor was not derived from this
// instance.
BuiltModel build_model(const ScenarioInstance& inst, const RegimeDescriptor& desc);

enum class BnbStatus { Optimal, Infeasible };

struct BnbResult {
  BnbStatus status = BnbStatus::Infeasible;
  double objective = 0.0;   // of the rounded incumbent
  std::vector<double> x;    // integral on every marked variable
  std::int64_t nodes = 0;   // LP relaxations solved, root included
  std::int64_t pivots = 0;  // simplex iterations across all nodes
};

// Best-first branch and bound over the relaxation. Branches on the variable
// farthest from an integer (lowest index on ties) by splitting its bounds at
// floor/ceil; prunes a node once its bound reaches the incumbent minus 1e-9.
// A relaxation value within 1e-6 of an integer point counts as integral and
// is rounded before acceptance. Deterministic for identical inputs.
BnbResult branch_and_bound(const LinearProgram& lp);

// Validates, classifies, builds and solves an instance end to end, then
// recomputes the objective from the assembled schedule and insists both
// agree to 1e-9. Throws on invalid instances and on internal disagreement.
SolveReport solve(const ScenarioInstance& inst);

}  // namespace edgesched
