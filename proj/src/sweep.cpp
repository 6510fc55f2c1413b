#include "edgesched/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "edgesched/milp.hpp"
#include "edgesched/partition.hpp"
#include "edgesched/report.hpp"

namespace edgesched {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return std::string(buf);
}

std::int64_t max_private_demand_at_servers(const ScenarioInstance& inst) {
  std::int64_t worst = 0;
  for (int i = 0; i < inst.ap_count(); ++i) {
    if (inst.placement[i] != 1) continue;
    worst = std::max(worst, floor_units(inst.profile.beta *
                                        static_cast<double>(inst.requests[i])));
  }
  return worst;
}

bool private_demand_feasible(const ScenarioInstance& inst) {
  return max_private_demand_at_servers(inst) <=
         inst.profile.private_compute_capacity();
}

SweepRow evaluate_point(const std::vector<ScenarioInstance>& rep_instances,
                        const std::string& label) {
  SweepRow row;
  row.value_label = label;
  const ScenarioInstance& first = rep_instances.front();
  row.public_capacity_per_server = first.profile.public_compute_capacity();
  row.private_feasible = private_demand_feasible(first);
  row.stats = service_stats(first);
  auto bounds = k_sweep_bounds(first);
  row.k_lower = bounds.first;
  row.k_upper = bounds.second;
  try {
    row.regime = to_string(classify(first).regime);
  } catch (const std::exception&) {
    row.regime.clear();
  }
  row.valid = validate_instance(first).empty();
  if (!row.valid) return row;

  double wall = 0.0, nodes = 0.0, objective = 0.0;
  try {
    for (const ScenarioInstance& inst : rep_instances) {
      SolveReport report = solve(inst);
      wall += report.wall_seconds * 1000.0;
      nodes += static_cast<double>(report.branch_nodes);
      objective += report.solution.objective;
    }
  } catch (const std::exception& ex) {
    row.solver_error = ex.what();  // solver columns stay empty
    return row;
  }
  const double reps = static_cast<double>(rep_instances.size());
  row.solved = true;
  row.mean_wall_ms = wall / reps;
  row.mean_branch_nodes = nodes / reps;
  row.mean_objective = objective / reps;
  return row;
}

}  // namespace

std::pair<std::int64_t, std::int64_t> k_sweep_bounds(
    const ScenarioInstance& inst) {
  const double alpha = inst.profile.alpha;
  const std::int64_t worst_private = max_private_demand_at_servers(inst);

  std::int64_t k_lower;
  if (worst_private == 0) {
    k_lower = 1;
  } else if (alpha <= 0.0) {
    k_lower = -1;
  } else {
    k_lower = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(
               std::ceil(static_cast<double>(worst_private) / alpha - 1e-9)));
    ScenarioInstance probe = inst;
    probe.profile.K = static_cast<double>(k_lower);
    while (probe.profile.private_compute_capacity() < worst_private) {
      probe.profile.K = static_cast<double>(++k_lower);
    }
  }

  std::int64_t pu = 0;
  try {
    pu = classify(inst).pu;
  } catch (const std::exception&) {
    return {k_lower, -1};  // admission fails regardless of K
  }
  std::int64_t k_upper;
  if (pu == 0) {
    k_upper = std::max<std::int64_t>(1, k_lower);
  } else if (inst.server_count == 0 || alpha >= 1.0) {
    k_upper = -1;
  } else {
    std::int64_t need =
        (pu + inst.server_count - 1) / inst.server_count;  // ceil(pu / m)
    k_upper = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(
               std::ceil(static_cast<double>(need) / (1.0 - alpha) - 1e-9)));
    ScenarioInstance probe = inst;
    probe.profile.K = static_cast<double>(k_upper);
    while (probe.profile.public_compute_capacity() < need) {
      probe.profile.K = static_cast<double>(++k_upper);
    }
    k_upper = std::max(k_upper, std::max<std::int64_t>(1, k_lower));
  }
  return {k_lower, k_upper};
}

std::vector<double> default_k_ladder(const ScenarioInstance& inst) {
  auto [lo, hi] = k_sweep_bounds(inst);
  if (lo < 0) lo = 1;
  if (hi < 0) hi = lo + 8;
  std::int64_t step = std::max<std::int64_t>(1, (hi - lo + 3) / 4);
  std::vector<double> rungs;
  for (int i = 0; i < 5; ++i) {
    rungs.push_back(static_cast<double>(lo + step * i));
  }
  return rungs;
}

std::vector<SweepRow> run_sweep(const SweepRequest& req) {
  if (req.reps < 1) throw std::invalid_argument("reps must be at least 1");
  const bool grid_axis = req.axis == SweepAxis::GridSize;
  const std::size_t points =
      grid_axis ? req.grid_values.size() : req.values.size();

  // Materialize every instance up front; workers then only solve.
  std::vector<std::vector<ScenarioInstance>> work(points);
  std::vector<std::string> labels(points);
  for (std::size_t p = 0; p < points; ++p) {
    if (grid_axis) {
      const SweepGridValue& gv = req.grid_values[p];
      labels[p] = std::to_string(gv.spec.rows) + "x" +
                  std::to_string(gv.spec.cols);
      GridAggregate agg = gridify(req.records, gv.spec);
      int days = agg.distinct_days > 0 ? agg.distinct_days : req.ingest_days;
      std::vector<int> placement = place_servers(agg.counts, gv.servers);
      for (int rep = 0; rep < req.reps; ++rep) {
        work[p].push_back(derive_instance(agg, placement, req.ingest_profile,
                                          days, req.seed + rep));
      }
    } else {
      ScenarioInstance inst = req.base;
      if (req.axis == SweepAxis::K) {
        inst.profile.K = req.values[p];
      } else {
        inst.profile.alpha = req.values[p];
      }
      labels[p] = format_double(req.values[p]);
      work[p].assign(req.reps, inst);
    }
  }

  std::vector<SweepRow> rows(points);
  const int workers =
      std::max(1, std::min(req.workers, static_cast<int>(points)));
  if (workers == 1) {
    for (std::size_t p = 0; p < points; ++p) {
      rows[p] = evaluate_point(work[p], labels[p]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        while (true) {
          std::size_t p = next.fetch_add(1);
          if (p >= points) return;
          rows[p] = evaluate_point(work[p], labels[p]);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const std::string& axis_name,
                      const std::string& input_digest, std::uint64_t seed) {
  std::ostringstream out;
  out << "# version," << kToolVersion << "\n";
  out << "# input_digest," << input_digest << "\n";
  out << "# seed," << seed << "\n";
  out << "axis,value,valid,regime,public_capacity_per_server,private_feasible,"
         "mean_wall_ms,mean_branch_nodes,mean_objective,private_service_rate,"
         "public_service_rate,public_edge_service_rate,cloud_offload,blocked,"
         "k_lower,k_upper\n";
  for (const SweepRow& row : rows) {
    out << axis_name << "," << row.value_label << "," << (row.valid ? 1 : 0)
        << "," << row.regime << "," << row.public_capacity_per_server << ","
        << (row.private_feasible ? 1 : 0) << ",";
    if (row.solved) {
      out << format_double(row.mean_wall_ms) << ","
          << format_double(row.mean_branch_nodes) << ","
          << format_double(row.mean_objective);
    } else {
      out << ",,";
    }
    out << "," << format_double(row.stats.private_rate) << ","
        << format_double(row.stats.public_rate) << ","
        << format_double(row.stats.public_edge_rate) << ","
        << row.stats.cloud_offload << "," << row.stats.blocked_total << ",";
    if (row.k_lower >= 0) out << row.k_lower;
    out << ",";
    if (row.k_upper >= 0) out << row.k_upper;
    out << "\n";
  }
  return out.str();
}

}  // namespace edgesched
