#include "edgesched/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "edgesched/partition.hpp"

namespace edgesched {

std::int64_t rand_between(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<std::int64_t>(
                  rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

namespace {

double grid_milli(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return static_cast<double>(rand_between(rng, lo, hi)) / 1000.0;
}

ScenarioInstance draw_once(std::mt19937_64& rng, const GenLimits& lim) {
  const int n = static_cast<int>(rand_between(rng, 1, lim.max_aps));
  const int m = static_cast<int>(
      rand_between(rng, 1, std::min<std::int64_t>(n, lim.max_servers)));

  ScenarioInstance inst;
  std::vector<ApNode> aps(n);
  for (int i = 0; i < n; ++i) {
    aps[i] = {i + 1, static_cast<double>(rand_between(rng, 0, 1000)) / 100.0,
              static_cast<double>(rand_between(rng, 0, 1000)) / 100.0};
  }
  std::vector<Link> links;
  std::set<std::pair<int, int>> used;
  for (int i = 1; i < n; ++i) {
    int p = static_cast<int>(rand_between(rng, 0, i - 1));
    links.push_back({p + 1, i + 1, grid_milli(rng, 1, 3000)});
    used.insert({p + 1, i + 1});
  }
  std::int64_t extra = rand_between(rng, 0, n);
  for (std::int64_t e = 0; e < extra; ++e) {
    int a = static_cast<int>(rand_between(rng, 1, n));
    int b = static_cast<int>(rand_between(rng, 1, n));
    if (a == b) continue;
    auto key = std::minmax(a, b);
    if (!used.insert(key).second) continue;
    links.push_back({key.first, key.second, grid_milli(rng, 1, 3000)});
  }
  inst.topology = NetworkTopology::from_links(std::move(aps), std::move(links));

  inst.placement.assign(n, 0);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 0; i < m; ++i) {
    int j = static_cast<int>(rand_between(rng, i, n - 1));
    std::swap(order[i], order[j]);
    inst.placement[order[i]] = 1;
  }
  inst.server_count = m;

  inst.requests.resize(n);
  inst.local_delay.resize(n);
  for (int i = 0; i < n; ++i) {
    inst.requests[i] = rand_between(rng, 0, lim.max_theta);
    inst.local_delay[i] = grid_milli(rng, 0, 2000);
  }

  ResourceProfile& p = inst.profile;
  p.beta = static_cast<double>(rand_between(rng, 0, 10)) / 10.0;

  std::int64_t private_max_all = 0;
  std::int64_t private_max_servers = 0;
  for (int i = 0; i < n; ++i) {
    std::int64_t d = floor_units(p.beta * static_cast<double>(inst.requests[i]));
    private_max_all = std::max(private_max_all, d);
    if (inst.placement[i] == 1) private_max_servers = std::max(private_max_servers, d);
  }
  p.W = static_cast<double>(
      rand_between(rng, std::max<std::int64_t>(1, private_max_all),
                   lim.max_theta + 2));

  p.alpha = static_cast<double>(
                rand_between(rng, private_max_servers > 0 ? 1 : 0, 10)) /
            10.0;
  std::int64_t k_min = 1;
  if (private_max_servers > 0) {
    while (floor_units(p.alpha * static_cast<double>(k_min)) < private_max_servers) {
      ++k_min;
    }
  }
  p.K = static_cast<double>(k_min + rand_between(rng, 0, 15));

  double max_delay = 0.0;
  for (const auto& row : inst.topology.delay_matrix) {
    for (double d : row) max_delay = std::max(max_delay, d);
  }
  if (max_delay > 0.0) {
    double factor =
        1.0 + static_cast<double>(rand_between(rng, 0, 90)) / 10.0;
    p.lambda = std::ceil(max_delay * factor * 1000.0) / 1000.0;
  } else {
    p.lambda = grid_milli(rng, 0, 5000);
  }
  return inst;
}

}  // namespace

ScenarioInstance random_instance(std::mt19937_64& rng, const GenLimits& lim) {
  for (int attempt = 0; attempt < 5000; ++attempt) {
    ScenarioInstance inst = draw_once(rng, lim);
    if (!validate_instance(inst).empty()) continue;
    if (lim.max_routed > 0) {
      RegimeDescriptor desc = classify(inst);
      if (desc.pu > lim.max_routed) continue;
    }
    return inst;
  }
  throw std::runtime_error("instance generator exhausted its attempt budget");
}

ScenarioInstance random_instance_of_regime(std::mt19937_64& rng,
                                           const GenLimits& lim, Regime want) {
  for (int attempt = 0; attempt < 20000; ++attempt) {
    ScenarioInstance inst = random_instance(rng, lim);
    if (classify(inst).regime == want) return inst;
  }
  throw std::runtime_error("regime " + to_string(want) +
                           " not reachable within the attempt budget");
}

}  // namespace edgesched
