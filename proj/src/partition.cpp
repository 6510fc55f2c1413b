#include "edgesched/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace edgesched {

Admission admit(const ScenarioInstance& inst) {
  const int n = inst.ap_count();
  const std::int64_t window = inst.profile.comm_capacity();
  Admission adm;
  adm.admitted.resize(n);
  adm.blocked.resize(n);
  adm.private_admitted.resize(n);
  for (int i = 0; i < n; ++i) {
    std::int64_t private_demand =
        floor_units(inst.profile.beta * static_cast<double>(inst.requests[i]));
    if (private_demand > window) {
      throw std::runtime_error(
          "private demand exceeds communication capacity at AP " +
          std::to_string(i + 1));
    }
    std::int64_t chi = std::min(inst.requests[i], window);
    adm.admitted[i] = chi;
    adm.blocked[i] = inst.requests[i] - chi;
    adm.private_admitted[i] = private_demand;
  }
  return adm;
}

std::int64_t compute_pu(const ScenarioInstance& inst,
                        const std::vector<std::int64_t>& admitted) {
  std::int64_t pu = 0;
  for (int i = 0; i < inst.ap_count(); ++i) {
    pu += routed_demand(inst, admitted[i], i);
  }
  return pu;
}

RegimeDescriptor classify(const ScenarioInstance& inst) {
  const int n = inst.ap_count();
  Admission adm = admit(inst);

  RegimeDescriptor desc;
  desc.admitted = std::move(adm.admitted);
  desc.blocked = std::move(adm.blocked);
  desc.routed.resize(n);
  for (int i = 0; i < n; ++i) {
    desc.routed[i] = routed_demand(inst, desc.admitted[i], i);
    desc.pu += desc.routed[i];
  }
  desc.total_public_capacity =
      static_cast<std::int64_t>(inst.server_count) *
      inst.profile.public_compute_capacity();
  desc.cloud_required = desc.pu > desc.total_public_capacity;

  const std::int64_t window = inst.profile.comm_capacity();
  bool window_suffices = true;
  for (int i = 0; i < n; ++i) {
    if (inst.requests[i] > window) {
      window_suffices = false;
      break;
    }
  }

  if (window_suffices) {
    desc.regime = desc.cloud_required ? Regime::IKSW : Regime::SKSW;
  } else {
    desc.regime = desc.cloud_required ? Regime::IKIW : Regime::SKIW;
  }
  return desc;
}

ServiceStats service_stats(const ScenarioInstance& inst) {
  const int n = inst.ap_count();
  const std::int64_t window = inst.profile.comm_capacity();
  const std::int64_t private_cap = inst.profile.private_compute_capacity();

  std::int64_t private_total = 0;
  std::int64_t private_served = 0;
  std::int64_t public_total = 0;
  std::int64_t public_admitted = 0;
  std::int64_t blocked_total = 0;
  std::int64_t pu = 0;

  for (int i = 0; i < n; ++i) {
    std::int64_t theta = inst.requests[i];
    std::int64_t chi = std::min(theta, window);
    std::int64_t private_demand =
        floor_units(inst.profile.beta * static_cast<double>(theta));
    std::int64_t private_adm = std::min(private_demand, chi);

    private_total += private_demand;
    if (inst.placement[i] == 1) {
      private_served += std::min(private_adm, private_cap);
    } else {
      private_served += private_adm;  // rides the public routing path
    }
    public_total += theta - private_demand;
    public_admitted += chi - private_adm;
    blocked_total += theta - chi;
    pu += routed_demand(inst, chi, i);
  }

  std::int64_t capacity = static_cast<std::int64_t>(inst.server_count) *
                          inst.profile.public_compute_capacity();
  std::int64_t offload = std::max<std::int64_t>(0, pu - capacity);

  ServiceStats stats;
  stats.private_rate =
      private_total > 0
          ? static_cast<double>(private_served) / static_cast<double>(private_total)
          : 1.0;
  stats.public_rate =
      public_total > 0
          ? static_cast<double>(public_admitted) / static_cast<double>(public_total)
          : 1.0;
  stats.public_edge_rate =
      pu > 0 ? static_cast<double>(pu - offload) / static_cast<double>(pu) : 1.0;
  stats.cloud_offload = offload;
  stats.blocked_total = blocked_total;
  return stats;
}

}  // namespace edgesched
