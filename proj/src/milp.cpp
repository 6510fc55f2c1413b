#include "edgesched/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace edgesched {

namespace {

constexpr double kIntegralityTol = 1e-6;
constexpr double kPruneTol = 1e-9;
constexpr double kObjectiveAgreeTol = 1e-9;

struct Branch {
  int var = 0;
  bool tightens_upper = false;
  double value = 0.0;
};

struct Node {
  double bound = 0.0;
  std::int64_t seq = 0;
  std::vector<Branch> path;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

LpResult solve_node(LinearProgram lp, const std::vector<Branch>& path) {
  for (const Branch& br : path) {
    if (br.tightens_upper) {
      lp.upper[br.var] = std::min(lp.upper[br.var], br.value);
    } else {
      lp.lower[br.var] = std::max(lp.lower[br.var], br.value);
    }
  }
  return solve_lp(lp);
}

int most_fractional(const LinearProgram& lp, const std::vector<double>& x) {
  int pick = -1;
  double worst = kIntegralityTol;
  for (int j = 0; j < lp.var_count; ++j) {
    if (!lp.integral[j]) continue;
    double frac = std::abs(x[j] - std::round(x[j]));
    if (frac > worst) {
      worst = frac;
      pick = j;
    }
  }
  return pick;
}

// Rounds the integral variables of a vertex that is already integral within
// tolerance and confirms the rounded point still satisfies the program.
std::vector<double> snap_integral(const LinearProgram& lp,
                                  const std::vector<double>& x) {
  std::vector<double> snapped = x;
  for (int j = 0; j < lp.var_count; ++j) {
    if (lp.integral[j]) snapped[j] = std::round(x[j]);
    if (snapped[j] < lp.lower[j] - 1e-9 || snapped[j] > lp.upper[j] + 1e-9) {
      throw std::logic_error("rounded solution escapes its variable bounds");
    }
  }
  for (const LinearRow& lr : lp.rows) {
    KahanSum lhs;
    for (auto [j, c] : lr.coeffs) {
      if (snapped[j] != 0.0) lhs.add(c * snapped[j]);
    }
    double v = lhs.value();
    double tol = 1e-5 * std::max(1.0, std::abs(lr.rhs));
    bool ok = true;
    if (lr.sense == RowSense::LE) ok = v <= lr.rhs + tol;
    if (lr.sense == RowSense::GE) ok = v >= lr.rhs - tol;
    if (lr.sense == RowSense::EQ) ok = std::abs(v - lr.rhs) <= tol;
    if (!ok) throw std::logic_error("rounded solution violates a row");
  }
  return snapped;
}

double snapped_cost(const LinearProgram& lp, const std::vector<double>& x) {
  KahanSum obj;
  for (int j = 0; j < lp.var_count; ++j) {
    if (x[j] != 0.0) obj.add(lp.objective[j] * x[j]);
  }
  return obj.value();
}

}  // namespace

BuiltModel build_model(const ScenarioInstance& inst,
                       const RegimeDescriptor& desc) {
  const int n = inst.ap_count();
  if (static_cast<int>(desc.admitted.size()) != n ||
      static_cast<int>(desc.routed.size()) != n) {
    throw std::invalid_argument("descriptor does not match the instance");
  }
  const std::int64_t window = inst.profile.comm_capacity();
  std::int64_t pu = 0;
  for (int i = 0; i < n; ++i) {
    std::int64_t chi = std::min(inst.requests[i], window);
    if (desc.admitted[i] != chi ||
        desc.routed[i] != routed_demand(inst, chi, i)) {
      throw std::invalid_argument("descriptor does not match the instance");
    }
    pu += desc.routed[i];
  }
  std::int64_t capacity = static_cast<std::int64_t>(inst.server_count) *
                          inst.profile.public_compute_capacity();
  if (pu != desc.pu || capacity != desc.total_public_capacity ||
      desc.cloud_required != (pu > capacity)) {
    throw std::invalid_argument("descriptor does not match the instance");
  }

  BuiltModel model;
  model.servers = inst.server_indices();
  const int s = static_cast<int>(model.servers.size());
  LinearProgram& lp = model.lp;

  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < s; ++k) {
      lp.add_variable(inst.topology.delay_matrix[i][model.servers[k]], 0.0,
                      static_cast<double>(desc.routed[i]), true);
    }
  }
  std::int64_t overflow = desc.pu - desc.total_public_capacity;
  if (desc.cloud_required) {
    model.zeta_begin = lp.var_count;
    for (int k = 0; k < s; ++k) {
      lp.add_variable(inst.profile.lambda, 0.0, static_cast<double>(overflow),
                      true);
    }
  }

  for (int i = 0; i < n; ++i) {
    LinearRow demand;
    demand.sense = RowSense::EQ;
    demand.rhs = static_cast<double>(desc.routed[i]);
    for (int k = 0; k < s; ++k) demand.coeffs.emplace_back(i * s + k, 1.0);
    lp.rows.push_back(std::move(demand));
  }
  const double per_server_cap =
      static_cast<double>(inst.profile.public_compute_capacity());
  for (int k = 0; k < s; ++k) {
    LinearRow inflow;
    inflow.sense = RowSense::LE;
    inflow.rhs = per_server_cap;
    for (int i = 0; i < n; ++i) inflow.coeffs.emplace_back(i * s + k, 1.0);
    if (model.zeta_begin >= 0) {
      inflow.coeffs.emplace_back(model.zeta_begin + k, -1.0);
    }
    lp.rows.push_back(std::move(inflow));
  }
  if (desc.cloud_required) {
    LinearRow total;
    total.sense = RowSense::EQ;
    total.rhs = static_cast<double>(overflow);
    for (int k = 0; k < s; ++k) total.coeffs.emplace_back(model.zeta_begin + k, 1.0);
    lp.rows.push_back(std::move(total));
  }

  KahanSum constant;
  for (int i = 0; i < n; ++i) {
    if (desc.admitted[i] != 0) {
      constant.add(inst.local_delay[i] * static_cast<double>(desc.admitted[i]));
    }
  }
  model.constant_delay = constant.value();
  return model;
}

BnbResult branch_and_bound(const LinearProgram& lp) {
  BnbResult res;
  double incumbent = std::numeric_limits<double>::infinity();
  std::vector<double> incumbent_x;
  bool have_incumbent = false;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::int64_t seq = 0;

  Node root;
  root.bound = -std::numeric_limits<double>::infinity();
  root.seq = seq++;
  open.push(std::move(root));

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent - kPruneTol) continue;

    LpResult relax = solve_node(lp, node.path);
    ++res.nodes;
    res.pivots += relax.pivots;
    if (relax.status != LpStatus::Optimal) continue;
    if (relax.objective >= incumbent - kPruneTol) continue;

    int frac = most_fractional(lp, relax.x);
    if (frac < 0) {
      std::vector<double> snapped = snap_integral(lp, relax.x);
      double cost = snapped_cost(lp, snapped);
      if (!have_incumbent || cost < incumbent) {
        incumbent = cost;
        incumbent_x = std::move(snapped);
        have_incumbent = true;
      }
      continue;
    }

    double v = relax.x[frac];
    Node down;
    down.bound = relax.objective;
    down.seq = seq++;
    down.path = node.path;
    down.path.push_back({frac, true, std::floor(v)});
    Node up;
    up.bound = relax.objective;
    up.seq = seq++;
    up.path = std::move(node.path);
    up.path.push_back({frac, false, std::ceil(v)});
    open.push(std::move(down));
    open.push(std::move(up));
  }

  if (!have_incumbent) {
    return res;  // no integral point was ever reached
  }
  res.status = BnbStatus::Optimal;
  res.objective = incumbent;
  res.x = std::move(incumbent_x);
  return res;
}

SolveReport solve(const ScenarioInstance& inst) {
  std::vector<std::string> violations = validate_instance(inst);
  if (!violations.empty()) {
    std::string msg = "instance failed validation";
    for (const std::string& v : violations) msg += "; " + v;
    throw std::invalid_argument(msg);
  }

  auto t0 = std::chrono::steady_clock::now();
  RegimeDescriptor desc = classify(inst);
  BuiltModel model = build_model(inst, desc);
  BnbResult bnb = branch_and_bound(model.lp);
  if (bnb.status != BnbStatus::Optimal) {
    throw std::runtime_error(
        "routing model is infeasible: requests must be routed but no server "
        "column can take them");
  }

  const int n = inst.ap_count();
  const int s = static_cast<int>(model.servers.size());
  SolveReport report;
  report.regime = desc.regime;
  ScheduleSolution& sol = report.solution;
  sol.routing.assign(n, std::vector<std::int64_t>(n, 0));
  sol.cloud_overflow.assign(n, 0);
  sol.admitted = desc.admitted;
  sol.blocked = desc.blocked;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < s; ++k) {
      sol.routing[i][model.servers[k]] =
          static_cast<std::int64_t>(std::llround(bnb.x[i * s + k]));
    }
  }
  if (model.zeta_begin >= 0) {
    for (int k = 0; k < s; ++k) {
      sol.cloud_overflow[model.servers[k]] =
          static_cast<std::int64_t>(std::llround(bnb.x[model.zeta_begin + k]));
    }
  }

  sol.objective = evaluate_objective(inst, sol);
  double solver_total = bnb.objective + model.constant_delay;
  if (std::abs(solver_total - sol.objective) > kObjectiveAgreeTol) {
    throw std::logic_error(
        "solver objective disagrees with the recomputed schedule delay by " +
        std::to_string(std::abs(solver_total - sol.objective)));
  }

  report.branch_nodes = bnb.nodes;
  report.lp_pivots = bnb.pivots;
  report.stats = service_stats(inst);
  std::int64_t offload = 0;
  for (std::int64_t z : sol.cloud_overflow) offload += z;
  if (offload != report.stats.cloud_offload) {
    throw std::logic_error("cloud offload differs from the capacity excess");
  }
  auto t1 = std::chrono::steady_clock::now();
  report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return report;
}

}  // namespace edgesched
