#include "edgesched/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>

namespace edgesched {

namespace {

constexpr double kIntegralTol = 1e-9;

bool integer_valued(double v) {
  return std::isfinite(v) && std::abs(v - std::round(v)) <= kIntegralTol;
}

}  // namespace

std::int64_t floor_units(double x) {
  return static_cast<std::int64_t>(std::floor(x + kIntegralTol));
}

std::int64_t ResourceProfile::private_compute_capacity() const {
  return floor_units(alpha * K);
}

std::int64_t ResourceProfile::public_compute_capacity() const {
  return floor_units((1.0 - alpha) * K);
}

std::int64_t ResourceProfile::comm_capacity() const {
  return static_cast<std::int64_t>(std::llround(W));
}

std::vector<int> ScenarioInstance::server_indices() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(placement.size()); ++i) {
    if (placement[i] == 1) out.push_back(i);
  }
  return out;
}

std::vector<std::vector<double>> shortest_path_delays(const NetworkTopology& topo) {
  const int n = topo.ap_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const Link& l : topo.links) {
    int a = l.a - 1;
    int b = l.b - 1;
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw std::runtime_error("link references unknown AP " +
                               std::to_string(a < 0 || a >= n ? l.a : l.b));
    }
    adj[a].emplace_back(b, l.length);
    adj[b].emplace_back(a, l.length);
  }

  std::vector<std::vector<double>> dist(n, std::vector<double>(n, inf));
  for (int s = 0; s < n; ++s) {
    auto& d = dist[s];
    d[s] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > d[u]) continue;
      for (auto [v, w] : adj[u]) {
        double nd = du + w;
        if (nd < d[v]) {
          d[v] = nd;
          heap.emplace(nd, v);
        }
      }
    }
    for (int t = 0; t < n; ++t) {
      if (!std::isfinite(d[t])) {
        throw std::runtime_error("no path between AP " + std::to_string(s + 1) +
                                 " and AP " + std::to_string(t + 1));
      }
    }
  }
  return dist;
}

NetworkTopology NetworkTopology::from_links(std::vector<ApNode> aps,
                                            std::vector<Link> links) {
  NetworkTopology topo;
  topo.aps = std::move(aps);
  topo.links = std::move(links);
  topo.delay_matrix = shortest_path_delays(topo);
  return topo;
}

std::int64_t routed_demand(const ScenarioInstance& inst, std::int64_t chi, int i) {
  if (inst.placement[i] == 1) {
    double remainder = static_cast<double>(chi) -
                       inst.profile.beta * static_cast<double>(inst.requests[i]);
    return std::max<std::int64_t>(0, floor_units(remainder));
  }
  return chi;
}

std::vector<std::string> validate_instance(const ScenarioInstance& inst) {
  std::vector<std::string> out;
  const int n = inst.ap_count();

  std::vector<char> seen(n + 1, 0);
  for (const ApNode& ap : inst.topology.aps) {
    if (ap.id < 1 || ap.id > n) {
      out.push_back("AP id " + std::to_string(ap.id) + " out of range 1.." +
                    std::to_string(n));
    } else if (seen[ap.id]++) {
      out.push_back("duplicate AP id " + std::to_string(ap.id));
    }
  }

  std::set<std::pair<int, int>> pairs;
  for (const Link& l : inst.topology.links) {
    if (l.a < 1 || l.a > n || l.b < 1 || l.b > n) {
      out.push_back("link (" + std::to_string(l.a) + ", " + std::to_string(l.b) +
                    ") references an unknown AP");
      continue;
    }
    if (l.a == l.b) {
      out.push_back("self link at AP " + std::to_string(l.a));
      continue;
    }
    if (!(l.length >= 0.0) || !std::isfinite(l.length)) {
      out.push_back("negative or non-finite length on link (" +
                    std::to_string(l.a) + ", " + std::to_string(l.b) + ")");
    }
    auto key = std::minmax(l.a, l.b);
    if (!pairs.insert(key).second) {
      out.push_back("duplicate link (" + std::to_string(key.first) + ", " +
                    std::to_string(key.second) + ")");
    }
  }

  const auto& mat = inst.topology.delay_matrix;
  bool shape_ok = static_cast<int>(mat.size()) == n;
  for (const auto& row : mat) {
    if (static_cast<int>(row.size()) != n) shape_ok = false;
  }
  if (!shape_ok) {
    out.push_back("delay matrix is not " + std::to_string(n) + "x" +
                  std::to_string(n));
  } else if (out.empty()) {
    try {
      auto fresh = shortest_path_delays(inst.topology);
      for (int i = 0; i < n && shape_ok; ++i) {
        for (int j = 0; j < n; ++j) {
          if (std::abs(mat[i][j] - fresh[i][j]) > 1e-9) {
            out.push_back("delay matrix entry (" + std::to_string(i + 1) + ", " +
                          std::to_string(j + 1) +
                          ") differs from the shortest path over links");
            shape_ok = false;
            break;
          }
        }
      }
    } catch (const std::exception& e) {
      out.push_back(e.what());
    }
  }

  const ResourceProfile& p = inst.profile;
  if (!(p.K > 0.0) || !std::isfinite(p.K)) out.push_back("K must be positive");
  if (!(p.W > 0.0) || !integer_valued(p.W)) {
    out.push_back("W must be a positive integer number of requests");
  }
  if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) out.push_back("alpha outside [0, 1]");
  if (!(p.beta >= 0.0 && p.beta <= 1.0)) out.push_back("beta outside [0, 1]");
  if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda)) {
    out.push_back("lambda must be nonnegative");
  }

  if (static_cast<int>(inst.requests.size()) != n) {
    out.push_back("theta list length differs from AP count");
  }
  if (static_cast<int>(inst.local_delay.size()) != n) {
    out.push_back("pi list length differs from AP count");
  }
  if (static_cast<int>(inst.placement.size()) != n) {
    out.push_back("placement list length differs from AP count");
  }
  if (!out.empty()) return out;

  for (int i = 0; i < n; ++i) {
    if (inst.requests[i] < 0) {
      out.push_back("negative theta at AP " + std::to_string(i + 1));
    }
    if (!(inst.local_delay[i] >= 0.0) || !std::isfinite(inst.local_delay[i])) {
      out.push_back("negative or non-finite pi at AP " + std::to_string(i + 1));
    }
    if (inst.placement[i] != 0 && inst.placement[i] != 1) {
      out.push_back("placement flag at AP " + std::to_string(i + 1) +
                    " is not 0 or 1");
    }
  }
  if (!out.empty()) return out;

  std::int64_t placed = 0;
  for (int f : inst.placement) placed += f;
  if (placed != inst.server_count) {
    out.push_back("placement sum " + std::to_string(placed) +
                  " differs from declared server count " +
                  std::to_string(inst.server_count));
  }

  const std::int64_t private_cap = p.private_compute_capacity();
  const std::int64_t window = p.comm_capacity();
  for (int i = 0; i < n; ++i) {
    std::int64_t private_demand =
        floor_units(p.beta * static_cast<double>(inst.requests[i]));
    if (inst.placement[i] == 1 && private_demand > private_cap) {
      out.push_back("private demand " + std::to_string(private_demand) +
                    " exceeds private compute capacity " +
                    std::to_string(private_cap) + " at AP " +
                    std::to_string(i + 1));
    }
    if (private_demand > window) {
      out.push_back("private demand exceeds communication capacity at AP " +
                    std::to_string(i + 1));
    }
  }
  return out;
}

double evaluate_objective(const ScenarioInstance& inst,
                          const ScheduleSolution& sol) {
  const int n = inst.ap_count();
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("schedule rejected: " + what);
  };

  if (static_cast<int>(sol.routing.size()) != n) fail("routing matrix row count");
  for (const auto& row : sol.routing) {
    if (static_cast<int>(row.size()) != n) fail("routing matrix column count");
  }
  if (static_cast<int>(sol.cloud_overflow.size()) != n) fail("zeta list length");
  if (static_cast<int>(sol.admitted.size()) != n) fail("chi list length");
  if (static_cast<int>(sol.blocked.size()) != n) fail("blocked list length");

  const std::int64_t window = inst.profile.comm_capacity();
  for (int i = 0; i < n; ++i) {
    std::int64_t chi = std::min(inst.requests[i], window);
    if (sol.admitted[i] != chi) {
      fail("admitted count differs from min(theta, W) at AP " +
           std::to_string(i + 1));
    }
    if (sol.blocked[i] != inst.requests[i] - chi) {
      fail("blocked count differs from theta - chi at AP " +
           std::to_string(i + 1));
    }
  }

  for (int i = 0; i < n; ++i) {
    std::int64_t rowsum = 0;
    for (int j = 0; j < n; ++j) {
      std::int64_t y = sol.routing[i][j];
      if (y < 0) fail("negative flow at y[" + std::to_string(i + 1) + "][" +
                      std::to_string(j + 1) + "]");
      if (y > 0 && inst.placement[j] != 1) {
        fail("flow into AP " + std::to_string(j + 1) + " which hosts no server");
      }
      rowsum += y;
    }
    if (rowsum != routed_demand(inst, sol.admitted[i], i)) {
      fail("routed flow from AP " + std::to_string(i + 1) +
           " differs from its demand");
    }
  }

  const std::int64_t public_cap = inst.profile.public_compute_capacity();
  for (int j = 0; j < n; ++j) {
    if (inst.placement[j] != 1) {
      if (sol.cloud_overflow[j] != 0) {
        fail("cloud overflow at AP " + std::to_string(j + 1) +
             " which hosts no server");
      }
      continue;
    }
    std::int64_t inflow = 0;
    for (int i = 0; i < n; ++i) inflow += sol.routing[i][j];
    std::int64_t expected = std::max<std::int64_t>(0, inflow - public_cap);
    if (sol.cloud_overflow[j] != expected) {
      fail("cloud overflow at AP " + std::to_string(j + 1) +
           " differs from the capacity excess");
    }
  }

  KahanSum total;
  for (int j = 0; j < n; ++j) {
    if (sol.cloud_overflow[j] != 0) {
      total.add(inst.profile.lambda * static_cast<double>(sol.cloud_overflow[j]));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (sol.admitted[i] != 0) {
      total.add(inst.local_delay[i] * static_cast<double>(sol.admitted[i]));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (sol.routing[i][j] != 0) {
        total.add(inst.topology.delay_matrix[i][j] *
                  static_cast<double>(sol.routing[i][j]));
      }
    }
  }
  return total.value();
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::SKSW: return "SKSW";
    case Regime::IKSW: return "IKSW";
    case Regime::SKIW: return "SKIW";
    case Regime::IKIW: return "IKIW";
  }
  return "SKSW";
}

Regime regime_from_string(const std::string& s) {
  if (s == "SKSW") return Regime::SKSW;
  if (s == "IKSW") return Regime::IKSW;
  if (s == "SKIW") return Regime::SKIW;
  if (s == "IKIW") return Regime::IKIW;
  throw std::invalid_argument("unknown regime label: " + s);
}

}  // namespace edgesched
