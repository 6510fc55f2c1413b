#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgesched/generator.hpp"
#include "edgesched/ingest.hpp"
#include "edgesched/milp.hpp"
#include "edgesched/model.hpp"
#include "edgesched/oracle.hpp"
#include "edgesched/partition.hpp"
#include "edgesched/report.hpp"
#include "edgesched/scenario_io.hpp"
#include "edgesched/sweep.hpp"
#include "json.hpp"

namespace {

using namespace edgesched;

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

std::string combined_digest(const std::vector<std::string>& paths) {
  if (paths.size() == 1) return file_digest(paths.front());
  std::string all;
  for (const std::string& p : paths) all += file_digest(p);
  return fnv1a_hex(all);
}

std::vector<OrderRecord> read_inputs(const std::vector<std::string>& paths,
                                     std::int64_t* malformed_total) {
  std::vector<OrderRecord> records;
  for (const std::string& path : paths) {
    ParseStats stats;
    std::vector<OrderRecord> part = parse_order_file(path, &stats);
    if (stats.malformed > 0) {
      std::cerr << "warning: " << stats.malformed << " malformed line(s) in "
                << path << "\n";
    }
    if (malformed_total) *malformed_total += stats.malformed;
    records.insert(records.end(), part.begin(), part.end());
  }
  return records;
}

struct GridValueSpec {
  int rows = 0;
  int cols = 0;
  int servers = 0;
};

// "12x10:40" -> 12 rows, 10 columns, 40 servers
GridValueSpec parse_grid_value(const std::string& text) {
  GridValueSpec v;
  char x = 0, colon = 0;
  std::istringstream in(text);
  if (!(in >> v.rows >> x >> v.cols >> colon >> v.servers) || x != 'x' ||
      colon != ':' || !(in >> std::ws).eof() || v.rows < 1 || v.cols < 1 ||
      v.servers < 1) {
    throw std::runtime_error("bad grid value '" + text +
                             "', expected ROWSxCOLS:SERVERS");
  }
  return v;
}

int cmd_validate(const std::string& scenario_path) {
  ScenarioInstance inst = load_scenario(scenario_path);
  std::vector<std::string> violations = validate_instance(inst);
  for (const std::string& v : violations) std::cout << v << "\n";
  if (violations.empty()) {
    std::cout << "ok: " << inst.ap_count() << " APs, " << inst.server_count
              << " servers\n";
    return 0;
  }
  return 1;
}

int cmd_classify(const std::string& scenario_path) {
  ScenarioInstance inst = load_scenario(scenario_path);
  std::vector<std::string> violations = validate_instance(inst);
  if (!violations.empty()) {
    for (const std::string& v : violations) std::cerr << v << "\n";
    return 1;
  }
  RegimeDescriptor desc = classify(inst);
  nlohmann::ordered_json doc;
  doc["regime"] = to_string(desc.regime);
  doc["pu"] = desc.pu;
  doc["total_public_capacity"] = desc.total_public_capacity;
  doc["cloud_required"] = desc.cloud_required;
  doc["admitted"] = desc.admitted;
  doc["blocked"] = desc.blocked;
  doc["routed"] = desc.routed;
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_solve(const std::string& scenario_path, const std::string& out_path,
              std::uint64_t seed) {
  ScenarioInstance inst = load_scenario(scenario_path);
  SolveReport report = solve(inst);
  write_text(out_path,
             solve_report_text(report, file_digest(scenario_path), seed));
  return 0;
}

int cmd_ingest(const std::vector<std::string>& inputs,
               const std::vector<int>& grid, int servers,
               const std::vector<double>& lat_range,
               const std::vector<double>& lon_range,
               const DerivedProfile& profile, std::uint64_t seed,
               const std::string& out_path) {
  std::int64_t malformed = 0;
  std::vector<OrderRecord> records = read_inputs(inputs, &malformed);

  GridSpec spec;
  spec.rows = grid[0];
  spec.cols = grid[1];
  spec.lat_min = lat_range[0];
  spec.lat_max = lat_range[1];
  spec.lon_min = lon_range[0];
  spec.lon_max = lon_range[1];

  GridAggregate agg = gridify(records, spec);
  if (agg.dropped > 0) {
    std::cerr << "warning: " << agg.dropped
              << " record(s) outside the bounding box\n";
  }
  int days = agg.distinct_days > 0 ? agg.distinct_days
                                   : static_cast<int>(inputs.size());
  std::vector<int> placement = place_servers(agg.counts, servers);
  ScenarioInstance inst = derive_instance(agg, placement, profile, days, seed);

  for (const std::string& v : validate_instance(inst)) {
    std::cerr << "warning: derived scenario invalid: " << v << "\n";
  }
  if (out_path.empty()) {
    std::cout << scenario_to_text(inst);
  } else {
    save_scenario(inst, out_path);
  }
  std::cerr << "ingested " << agg.in_bounds << " record(s) over " << days
            << " day(s) into " << spec.rows << "x" << spec.cols
            << " grids, " << servers << " server(s)\n";
  return 0;
}

int cmd_sweep(const std::string& axis, const std::string& scenario_path,
              const std::vector<std::string>& values,
              const std::vector<std::string>& inputs,
              const std::vector<double>& lat_range,
              const std::vector<double>& lon_range,
              const DerivedProfile& profile, int reps, int workers,
              std::uint64_t seed, const std::string& out_path) {
  SweepRequest req;
  req.reps = reps;
  req.workers = workers;
  req.seed = seed;
  std::string digest;

  if (axis == "grid_size") {
    if (inputs.empty()) {
      throw std::runtime_error("grid_size sweep needs --input order logs");
    }
    if (values.empty()) {
      throw std::runtime_error(
          "grid_size sweep needs --values like 12x10:40,24x20:40");
    }
    if (lat_range.size() != 2 || lon_range.size() != 2) {
      throw std::runtime_error(
          "grid_size sweep needs --lat-range and --lon-range");
    }
    req.axis = SweepAxis::GridSize;
    req.records = read_inputs(inputs, nullptr);
    req.ingest_profile = profile;
    req.ingest_days = static_cast<int>(inputs.size());
    for (const std::string& v : values) {
      GridValueSpec gv = parse_grid_value(v);
      SweepGridValue point;
      point.spec.rows = gv.rows;
      point.spec.cols = gv.cols;
      point.spec.lat_min = lat_range[0];
      point.spec.lat_max = lat_range[1];
      point.spec.lon_min = lon_range[0];
      point.spec.lon_max = lon_range[1];
      point.servers = gv.servers;
      req.grid_values.push_back(point);
    }
    digest = combined_digest(inputs);
  } else {
    if (scenario_path.empty()) {
      throw std::runtime_error(axis + " sweep needs --scenario");
    }
    req.axis = axis == "K" ? SweepAxis::K : SweepAxis::Alpha;
    req.base = load_scenario(scenario_path);
    digest = file_digest(scenario_path);
    if (!values.empty()) {
      for (const std::string& v : values) req.values.push_back(std::stod(v));
    } else if (req.axis == SweepAxis::K) {
      req.values = default_k_ladder(req.base);
    } else {
      for (int i = 0; i <= 10; ++i) req.values.push_back(i / 10.0);
    }
  }

  std::vector<SweepRow> rows = run_sweep(req);
  for (const SweepRow& row : rows) {
    if (!row.solver_error.empty()) {
      throw std::runtime_error("solve failed at " + axis + "=" +
                               row.value_label + ": " + row.solver_error);
    }
  }
  write_text(out_path, sweep_csv(rows, axis, digest, seed));
  return 0;
}

int cmd_oracle_check(int count, std::uint64_t seed, const std::string& mode,
                     int max_aps, int max_servers, std::int64_t max_theta,
                     std::int64_t max_routed) {
  const bool run_enum = mode == "enum" || mode == "both";
  const bool run_flow = mode == "flow" || mode == "both";
  GenLimits lim;
  lim.max_aps = max_aps;
  lim.max_servers = max_servers;
  lim.max_theta = max_theta;
  lim.max_routed = max_routed;
  if (run_enum && lim.max_routed <= 0) {
    // Keep the default instance family inside the enumeration guard.
    lim.max_routed = 12;
    lim.max_servers = std::min(lim.max_servers, 3);
  }
  std::mt19937_64 rng(seed);
  int mismatches = 0;
  for (int i = 0; i < count; ++i) {
    ScenarioInstance inst = random_instance(rng, lim);
    SolveReport report = solve(inst);
    if (run_enum) {
      double expect = enumerate_optimum(inst).objective;
      if (std::fabs(report.solution.objective - expect) > 1e-9) {
        ++mismatches;
        std::cerr << "mismatch on instance " << i << " (enumeration): solver "
                  << report.solution.objective << " vs oracle " << expect
                  << "\n";
      }
    }
    if (run_flow) {
      double expect = mincost_flow_optimum(inst);
      if (std::fabs(report.solution.objective - expect) > 1e-9) {
        ++mismatches;
        std::cerr << "mismatch on instance " << i << " (flow): solver "
                  << report.solution.objective << " vs oracle " << expect
                  << "\n";
      }
    }
  }
  std::cout << count << " instance(s) checked, " << mismatches
            << " mismatch(es)\n";
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"request scheduling over hybrid edge servers"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, axis = "K", mode = "enum";
  std::vector<std::string> inputs, values;
  std::vector<int> grid;
  std::vector<double> lat_range, lon_range;
  int servers = 1, reps = 5, workers = 1, count = 200;
  int max_aps = 6, max_servers = 3;
  std::int64_t max_theta = 5, max_routed = 0;
  std::uint64_t seed = 0;
  DerivedProfile profile;

  CLI::App* ingest = app.add_subcommand(
      "ingest", "derive a scenario from geo-tagged order logs");
  ingest->add_option("--input", inputs, "order log file, one per sampled day")
      ->required();
  ingest->add_option("--grid", grid, "rows and columns")
      ->expected(2)
      ->required();
  ingest->add_option("--servers", servers, "number of hybrid edge servers")
      ->required();
  ingest->add_option("--lat-range", lat_range, "latitude bounds")
      ->expected(2)
      ->required();
  ingest->add_option("--lon-range", lon_range, "longitude bounds")
      ->expected(2)
      ->required();
  ingest->add_option("--K", profile.K, "server compute capacity")->required();
  ingest->add_option("--W", profile.W, "AP communication capacity")
      ->required();
  ingest->add_option("--alpha", profile.alpha, "private capacity fraction")
      ->required();
  ingest->add_option("--beta", profile.beta, "private request fraction")
      ->required();
  ingest->add_option("--seed", seed, "link jitter seed");
  ingest->add_option("--out", out_path, "scenario output path");

  CLI::App* validate =
      app.add_subcommand("validate", "check a scenario file's invariants");
  validate->add_option("--scenario", scenario_path)->required();

  CLI::App* classify =
      app.add_subcommand("classify", "print a scenario's resource regime");
  classify->add_option("--scenario", scenario_path)->required();

  CLI::App* solve =
      app.add_subcommand("solve", "solve a scenario to optimality");
  solve->add_option("--scenario", scenario_path)->required();
  solve->add_option("--out", out_path, "report output path");
  solve->add_option("--seed", seed, "recorded in the report");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "solve across a ladder of grid sizes, K, or alpha");
  sweep->add_option("--axis", axis)
      ->check(CLI::IsMember({"grid_size", "K", "alpha"}));
  sweep->add_option("--scenario", scenario_path, "base scenario (K, alpha)");
  sweep->add_option("--values", values,
                    "axis values; grid_size takes ROWSxCOLS:SERVERS")
      ->delimiter(',');
  sweep->add_option("--input", inputs, "order logs (grid_size)");
  sweep->add_option("--lat-range", lat_range)->expected(2);
  sweep->add_option("--lon-range", lon_range)->expected(2);
  sweep->add_option("--K", profile.K, "profile for grid_size points");
  sweep->add_option("--W", profile.W);
  sweep->add_option("--alpha", profile.alpha);
  sweep->add_option("--beta", profile.beta);
  sweep->add_option("--reps", reps, "solves per point");
  sweep->add_option("--workers", workers, "worker threads");
  sweep->add_option("--seed", seed);
  sweep->add_option("--out", out_path, "CSV output path");

  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "cross-check the solver against the oracles");
  oracle->add_option("--count", count, "random instances to check");
  oracle->add_option("--seed", seed);
  oracle->add_option("--mode", mode)
      ->check(CLI::IsMember({"enum", "flow", "both"}));
  oracle->add_option("--max-aps", max_aps);
  oracle->add_option("--max-servers", max_servers);
  oracle->add_option("--max-theta", max_theta);
  oracle->add_option("--max-routed", max_routed,
                     "cap on total routed demand, 0 = automatic");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) {
      return cmd_ingest(inputs, grid, servers, lat_range, lon_range, profile,
                        seed, out_path);
    }
    if (validate->parsed()) return cmd_validate(scenario_path);
    if (classify->parsed()) return cmd_classify(scenario_path);
    if (solve->parsed()) return cmd_solve(scenario_path, out_path, seed);
    if (sweep->parsed()) {
      return cmd_sweep(axis, scenario_path, values, inputs, lat_range,
                       lon_range, profile, reps, workers, seed, out_path);
    }
    if (oracle->parsed()) {
      return cmd_oracle_check(count, seed, mode, max_aps, max_servers,
                              max_theta, max_routed);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
