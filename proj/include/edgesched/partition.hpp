#pragma once

#include <cstdint>
#include <vector>

#include "edgesched/model.hpp"

namespace edgesched {

// Outcome of the communication window: chi_i = min(theta_i, W) requests get
// through at AP i, private ones first, the rest is blocked.
struct Admission {
  std::vector<std::int64_t> admitted;          // chi_i
  std::vector<std::int64_t> blocked;           // theta_i - chi_i
  std::vector<std::int64_t> private_admitted;  // floor(beta * theta_i)
};

// Throws std::runtime_error("private demand exceeds communication capacity...")
// when floor(beta * theta_i) > W for some AP.
Admission admit(const ScenarioInstance& inst);

// Total number of requests that must be routed through server columns.
std::int64_t compute_pu(const ScenarioInstance& inst,
                        const std::vector<std::int64_t>& admitted);

// Which of the four resource regimes an instance falls into, plus the
// quantities every downstream solver needs.
struct RegimeDescriptor {
  Regime regime = Regime::SKSW;
  std::vector<std::int64_t> admitted;
  std::vector<std::int64_t> blocked;
  std::vector<std::int64_t> routed;  // per-AP routed demand d_i
  std::int64_t pu = 0;
  std::int64_t total_public_capacity = 0;  // m * floor((1 - alpha) * K)
  bool cloud_required = false;             // pu exceeds total public capacity
};

RegimeDescriptor classify(const ScenarioInstance& inst);

// Service quality derived from admission and capacity arithmetic alone; does
// not require solving the routing problem. Well defined (with clamping) even
// for instances that fail validation, so capacity sweeps can chart the
// transition into the feasible region.
ServiceStats service_stats(const ScenarioInstance& inst);

}  // namespace edgesched
