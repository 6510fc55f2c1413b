#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace edgesched {

// Access point in the wireless metropolitan area network. Coordinates are in
// abstract distance units (for ingested scenarios: degrees).
struct ApNode {
  int id = 0;  // 1-based
  double x = 0.0;
  double y = 0.0;
};

// Undirected link between two APs, nonnegative length.
struct Link {
  int a = 0;
  int b = 0;
  double length = 0.0;
};

struct NetworkTopology {
  std::vector<ApNode> aps;
  std::vector<Link> links;
  // Pairwise routing delay: shortest-path length over links, zero diagonal.
  std::vector<std::vector<double>> delay_matrix;

  int ap_count() const { return static_cast<int>(aps.size()); }

  // Builds the topology and fills delay_matrix from the link graph.
  // Throws std::runtime_error if the graph is disconnected.
  static NetworkTopology from_links(std::vector<ApNode> aps,
                                    std::vector<Link> links);
};

// All-pairs shortest-path lengths over the link graph. Throws
// std::runtime_error naming an unreachable AP pair if disconnected.
std::vector<std::vector<double>> shortest_path_delays(const NetworkTopology& topo);

// Integer floor with a small tolerance so quantities that are integral up to
// floating-point noise (e.g. 0.3 * 10) are taken at face value.
std::int64_t floor_units(double x);

// Compensated summation, Kahan-Babuska (Neumaier) variant. Unlike textbook
// Kahan it also keeps the correction when a term exceeds the running sum.
// Objective values are compared at 1e-9 absolute tolerance, so plain
// left-to-right accumulation is not good enough on the larger instances.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Per-server and per-AP capacity configuration shared by every AP.
struct ResourceProfile {
  double K = 0.0;       // compute capacity of one hybrid server, requests/window
  double W = 0.0;       // communication capacity of one AP, requests/window
  double alpha = 0.0;   // fraction of K reserved for private requests
  double beta = 0.0;    // fraction of each AP's requests that are private
  double lambda = 0.0;  // extra delay when a request is redirected to the cloud

  std::int64_t private_compute_capacity() const;  // floor(alpha * K)
  std::int64_t public_compute_capacity() const;   // floor((1 - alpha) * K)
  std::int64_t comm_capacity() const;             // W as an integer
};

struct ScenarioInstance {
  NetworkTopology topology;
  ResourceProfile profile;
  std::vector<std::int64_t> requests;  // theta_i: requests arriving at AP i per window
  std::vector<double> local_delay;     // pi_i: mean user-to-AP delay at AP i
  std::vector<int> placement;          // x_i: 1 if AP i hosts a hybrid server
  int server_count = 0;                // m: declared number of servers

  int ap_count() const { return topology.ap_count(); }
  std::vector<int> server_indices() const;  // 0-based indices with placement 1
};

// Routing decision plus the bookkeeping quantities derived from it.
struct ScheduleSolution {
  // y[i][j]: requests arriving at AP i served by the server at AP j.
  std::vector<std::vector<std::int64_t>> routing;
  std::vector<std::int64_t> cloud_overflow;  // zeta_j per AP, 0 where no server
  std::vector<std::int64_t> admitted;        // chi_i = min(theta_i, W)
  std::vector<std::int64_t> blocked;         // theta_i - chi_i
  double objective = 0.0;
};

// Checks every instance invariant and returns one message per violation,
// empty when the instance is well formed. Violations are data, not errors.
std::vector<std::string> validate_instance(const ScenarioInstance& inst);

// Number of requests AP i must route through server columns: for server APs
// the admitted public remainder, for the rest the full admitted load. Clamped
// at zero (private load can saturate the window at a server AP).
std::int64_t routed_demand(const ScenarioInstance& inst, std::int64_t chi, int i);

// Recomputes the total response delay of a solution from scratch:
//   sum_j lambda * zeta_j + sum_i pi_i * chi_i + sum_{i,j} xi[i][j] * y[i][j].
// Throws std::invalid_argument naming the violated invariant if the solution
// is structurally inconsistent with the instance.
double evaluate_objective(const ScenarioInstance& inst, const ScheduleSolution& sol);

enum class Regime { SKSW, IKSW, SKIW, IKIW };

std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

// Aggregate service quality of an instance. Rates are in [0, 1]; requests
// redirected to the cloud still count as served (the cloud always responds,
// only slower), edge_rate counts only requests kept on edge servers.
struct ServiceStats {
  double private_rate = 1.0;
  double public_rate = 1.0;
  double public_edge_rate = 1.0;
  std::int64_t cloud_offload = 0;
  std::int64_t blocked_total = 0;
};

struct SolveReport {
  Regime regime = Regime::SKSW;
  ScheduleSolution solution;
  std::int64_t branch_nodes = 0;
  std::int64_t lp_pivots = 0;
  double wall_seconds = 0.0;
  ServiceStats stats;
};

}  // namespace edgesched
