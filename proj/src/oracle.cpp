#include "edgesched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace edgesched {

namespace {

constexpr std::int64_t kEnumDemandGuard = 12;
constexpr int kEnumServerGuard = 3;

struct Enumerator {
  const ScenarioInstance& inst;
  const RegimeDescriptor& desc;
  std::vector<int> servers;
  std::vector<int> loaded_aps;  // APs with routed demand, 0-based
  std::int64_t public_cap = 0;

  std::vector<std::int64_t> inflow;
  std::vector<std::int64_t> current;  // current[a * servers + k]
  std::vector<std::int64_t> best;
  double best_cost = std::numeric_limits<double>::infinity();
  bool found = false;

  void spread(std::size_t ap_pos, int slot, std::int64_t remaining,
              double routing_cost) {
    if (ap_pos == loaded_aps.size()) {
      double cost = routing_cost;
      for (std::int64_t f : inflow) {
        if (f > public_cap) {
          cost += inst.profile.lambda * static_cast<double>(f - public_cap);
        }
      }
      if (!found || cost < best_cost) {
        best_cost = cost;
        best = current;
        found = true;
      }
      return;
    }
    const int s = static_cast<int>(servers.size());
    const int i = loaded_aps[ap_pos];
    if (slot == s - 1) {
      current[ap_pos * s + slot] = remaining;
      inflow[slot] += remaining;
      spread(ap_pos + 1, 0, remaining_of(ap_pos + 1),
             routing_cost + inst.topology.delay_matrix[i][servers[slot]] *
                                static_cast<double>(remaining));
      inflow[slot] -= remaining;
      current[ap_pos * s + slot] = 0;
      return;
    }
    for (std::int64_t take = 0; take <= remaining; ++take) {
      current[ap_pos * s + slot] = take;
      inflow[slot] += take;
      spread(ap_pos, slot + 1, remaining - take,
             routing_cost + inst.topology.delay_matrix[i][servers[slot]] *
                                static_cast<double>(take));
      inflow[slot] -= take;
      current[ap_pos * s + slot] = 0;
    }
  }

  std::int64_t remaining_of(std::size_t ap_pos) const {
    return ap_pos < loaded_aps.size() ? desc.routed[loaded_aps[ap_pos]] : 0;
  }
};

}  // namespace

EnumerationResult enumerate_optimum(const ScenarioInstance& inst) {
  RegimeDescriptor desc = classify(inst);
  if (desc.pu > kEnumDemandGuard || inst.server_count > kEnumServerGuard) {
    throw std::invalid_argument(
        "enumeration oracle guard: needs routed demand <= " +
        std::to_string(kEnumDemandGuard) + " and <= " +
        std::to_string(kEnumServerGuard) + " servers");
  }

  const int n = inst.ap_count();
  Enumerator en{inst, desc};
  en.servers = inst.server_indices();
  for (int i = 0; i < n; ++i) {
    if (desc.routed[i] > 0) en.loaded_aps.push_back(i);
  }
  if (!en.loaded_aps.empty() && en.servers.empty()) {
    throw std::runtime_error("requests must be routed but no AP hosts a server");
  }
  en.public_cap = inst.profile.public_compute_capacity();
  en.inflow.assign(en.servers.size(), 0);
  en.current.assign(en.loaded_aps.size() * en.servers.size(), 0);

  if (en.loaded_aps.empty()) {
    en.best = en.current;
    en.found = true;
  } else {
    en.spread(0, 0, en.remaining_of(0), 0.0);
  }

  EnumerationResult out;
  ScheduleSolution& sol = out.solution;
  sol.routing.assign(n, std::vector<std::int64_t>(n, 0));
  sol.cloud_overflow.assign(n, 0);
  sol.admitted = desc.admitted;
  sol.blocked = desc.blocked;
  const int s = static_cast<int>(en.servers.size());
  for (std::size_t p = 0; p < en.loaded_aps.size(); ++p) {
    for (int k = 0; k < s; ++k) {
      sol.routing[en.loaded_aps[p]][en.servers[k]] = en.best[p * s + k];
    }
  }
  for (int k = 0; k < s; ++k) {
    std::int64_t inflow = 0;
    for (int i = 0; i < n; ++i) inflow += sol.routing[i][en.servers[k]];
    sol.cloud_overflow[en.servers[k]] =
        std::max<std::int64_t>(0, inflow - en.public_cap);
  }
  sol.objective = evaluate_objective(inst, sol);
  out.objective = sol.objective;
  return out;
}

FlowNetwork build_flow_network(const ScenarioInstance& inst,
                               const RegimeDescriptor& desc) {
  const int n = inst.ap_count();
  std::vector<int> servers = inst.server_indices();
  FlowNetwork net;
  net.source = 0;
  net.ap_node.resize(n);
  for (int i = 0; i < n; ++i) net.ap_node[i] = 1 + i;
  net.server_node.resize(servers.size());
  for (std::size_t k = 0; k < servers.size(); ++k) {
    net.server_node[k] = 1 + n + static_cast<int>(k);
  }
  net.cloud = 1 + n + static_cast<int>(servers.size());
  net.sink = net.cloud + 1;
  net.node_count = net.sink + 1;
  net.required_flow = desc.pu;

  for (int i = 0; i < n; ++i) {
    if (desc.routed[i] <= 0) continue;
    net.arcs.push_back({net.source, net.ap_node[i], desc.routed[i], 0.0});
    for (std::size_t k = 0; k < servers.size(); ++k) {
      net.arcs.push_back({net.ap_node[i], net.server_node[k], desc.routed[i],
                          inst.topology.delay_matrix[i][servers[k]]});
    }
  }
  const std::int64_t cap = inst.profile.public_compute_capacity();
  std::int64_t overflow = std::max<std::int64_t>(
      0, desc.pu - desc.total_public_capacity);
  for (std::size_t k = 0; k < servers.size(); ++k) {
    net.arcs.push_back({net.server_node[k], net.sink, cap, 0.0});
    if (desc.cloud_required) {
      net.arcs.push_back(
          {net.server_node[k], net.cloud, overflow, inst.profile.lambda});
    }
  }
  if (desc.cloud_required) {
    net.arcs.push_back({net.cloud, net.sink, overflow, 0.0});
  }
  return net;
}

namespace {

// Residual edge pair layout: edge 2e is forward, 2e ^ 1 its reverse.
struct Residual {
  std::vector<int> to;
  std::vector<std::int64_t> cap;
  std::vector<std::int64_t> cost;
  std::vector<std::vector<int>> out;

  void add(int u, int v, std::int64_t c, std::int64_t w) {
    out[u].push_back(static_cast<int>(to.size()));
    to.push_back(v);
    cap.push_back(c);
    cost.push_back(w);
    out[v].push_back(static_cast<int>(to.size()));
    to.push_back(u);
    cap.push_back(0);
    cost.push_back(-w);
  }
};

}  // namespace

double mincost_flow_optimum(const ScenarioInstance& inst,
                            double cost_precision) {
  RegimeDescriptor desc = classify(inst);
  FlowNetwork net = build_flow_network(inst, desc);

  Residual res;
  res.out.resize(net.node_count);
  for (const FlowArc& arc : net.arcs) {
    double scaled = arc.cost * cost_precision;
    double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) >
        std::max(1e-6 * std::abs(scaled), 1e-3)) {
      throw std::runtime_error(
          "arc cost " + std::to_string(arc.cost) +
          " is not representable at the declared cost precision");
    }
    res.add(arc.from, arc.to, arc.capacity,
            static_cast<std::int64_t>(rounded));
  }

  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::int64_t flow = 0;
  while (flow < net.required_flow) {
    // Bellman-Ford shortest path in the residual graph; arc order makes the
    // chosen path deterministic.
    std::vector<std::int64_t> dist(net.node_count, inf);
    std::vector<int> via(net.node_count, -1);
    dist[net.source] = 0;
    for (int round = 0; round < net.node_count; ++round) {
      bool changed = false;
      for (int u = 0; u < net.node_count; ++u) {
        if (dist[u] >= inf) continue;
        for (int e : res.out[u]) {
          if (res.cap[e] <= 0) continue;
          std::int64_t nd = dist[u] + res.cost[e];
          if (nd < dist[res.to[e]]) {
            dist[res.to[e]] = nd;
            via[res.to[e]] = e;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[net.sink] >= inf) {
      throw std::runtime_error(
          "flow network cannot carry the routed demand: moved " +
          std::to_string(flow) + " of " + std::to_string(net.required_flow));
    }
    std::int64_t push = net.required_flow - flow;
    for (int v = net.sink; v != net.source; v = res.to[via[v] ^ 1]) {
      push = std::min(push, res.cap[via[v]]);
    }
    for (int v = net.sink; v != net.source; v = res.to[via[v] ^ 1]) {
      res.cap[via[v]] -= push;
      res.cap[via[v] ^ 1] += push;
    }
    flow += push;
  }

  // Optimality certificate: the final residual graph admits a potential with
  // no negative reduced cost, i.e. no negative cycle.
  {
    std::vector<std::int64_t> pot(net.node_count, 0);
    for (int round = 0; round < net.node_count; ++round) {
      bool changed = false;
      for (int u = 0; u < net.node_count; ++u) {
        for (int e : res.out[u]) {
          if (res.cap[e] <= 0) continue;
          if (pot[u] + res.cost[e] < pot[res.to[e]]) {
            pot[res.to[e]] = pot[u] + res.cost[e];
            changed = true;
          }
        }
      }
      if (!changed) break;
      if (round == net.node_count - 1) {
        throw std::logic_error(
            "min-cost flow left a negative cycle in the residual graph");
      }
    }
  }

  KahanSum total;
  for (std::size_t a = 0; a < net.arcs.size(); ++a) {
    std::int64_t used = res.cap[2 * a + 1];  // reverse capacity = shipped flow
    if (used != 0) total.add(net.arcs[a].cost * static_cast<double>(used));
  }
  for (int i = 0; i < inst.ap_count(); ++i) {
    if (desc.admitted[i] != 0) {
      total.add(inst.local_delay[i] * static_cast<double>(desc.admitted[i]));
    }
  }
  return total.value();
}

}  // namespace edgesched
