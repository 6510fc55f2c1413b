#pragma once

#include <cstdint>
#include <vector>

#include "edgesched/model.hpp"
#include "edgesched/partition.hpp"

namespace edgesched {

struct EnumerationResult {
  double objective = 0.0;
  ScheduleSolution solution;
};

// Exhaustive optimum over every way of spreading each AP's routed demand
// across the server columns. Overflow above a server's public capacity is
// priced at lambda per request, in any regime, so this oracle also
// cross-checks that the regime split never loses the true optimum.
// Guarded to total routed demand <= 12 and at most 3 servers; throws
// std::invalid_argument beyond the guard, std::runtime_error when demand
// exists but no server does.
EnumerationResult enumerate_optimum(const ScenarioInstance& inst);

struct FlowArc {
  int from = 0;
  int to = 0;
  std::int64_t capacity = 0;
  double cost = 0.0;
};

// Request routing as a flow problem: source -> AP (demand), AP -> server
// (routing delay), server -> sink (public capacity), server -> cloud
// (lambda, only when the regime requires offload), cloud -> sink.
struct FlowNetwork {
  int node_count = 0;
  int source = 0;
  int cloud = 0;
  int sink = 0;
  std::vector<int> ap_node;      // flow node per AP
  std::vector<int> server_node;  // flow node per server column
  std::vector<FlowArc> arcs;
  std::int64_t required_flow = 0;
};

FlowNetwork build_flow_network(const ScenarioInstance& inst,
                               const RegimeDescriptor& desc);

// Independent optimum via successive shortest paths. Arc costs are scaled to
// integers by cost_precision and the rounding residual is audited, so the
// integer solve is exact for costs on that grid; the returned objective is
// recomputed from the flow in doubles. A negative-cycle certificate is
// checked on the final residual graph. Throws std::runtime_error when a cost
// fails the audit or the demand cannot be met.
double mincost_flow_optimum(const ScenarioInstance& inst,
                            double cost_precision = 1e6);

}  // namespace edgesched
