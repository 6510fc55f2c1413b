// Acceptance gate: one line per criterion, PASS or FAIL, nonzero exit when
// anything fails. Tolerances and budgets are pinned here on purpose.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "edgesched/generator.hpp"
#include "edgesched/ingest.hpp"
#include "edgesched/milp.hpp"
#include "edgesched/oracle.hpp"
#include "edgesched/partition.hpp"
#include "edgesched/scenario_io.hpp"
#include "edgesched/sweep.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace edgesched;

namespace {

constexpr double kAgreeTol = 1e-9;        // solver vs oracle objectives
constexpr double kMonotoneTol = 1e-9;     // K ladder objective slack
constexpr double kTinySuiteBudget = 30.0;  // seconds, criterion 1
constexpr double kFlowSuiteBudget = 60.0;  // seconds, criterion 2
constexpr double kBigSolveBudget = 60.0;   // seconds, criterion 4
constexpr std::int64_t kBigNodeBudget = 100;
constexpr double kRootIntegralShare = 0.99;

int failures = 0;

void report(int idx, const std::string& name, bool ok,
            const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return std::string(buf);
}

// ---- criterion 1: enumeration equivalence on tiny instances ----

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  GenLimits lim;
  lim.max_aps = 6;
  lim.max_servers = 3;
  lim.max_theta = 5;
  lim.max_routed = 12;

  int checked = 0, mismatches = 0;
  for (Regime want :
       {Regime::SKSW, Regime::IKSW, Regime::SKIW, Regime::IKIW}) {
    for (int i = 0; i < 50; ++i) {
      ScenarioInstance inst = random_instance_of_regime(rng, lim, want);
      double got = solve(inst).solution.objective;
      double expect = enumerate_optimum(inst).objective;
      ++checked;
      if (std::fabs(got - expect) > kAgreeTol) ++mismatches;
    }
  }
  double secs = seconds_since(t0);
  bool ok = checked >= 200 && mismatches == 0 && secs < kTinySuiteBudget;
  report(1, "enumeration equivalence", ok,
         std::to_string(checked - mismatches) + "/" + std::to_string(checked) +
             " within 1e-9 across all regimes in " + fmt(secs) + "s");
}

// ---- criterion 2: flow oracle agreement on medium instances ----

void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1002);
  GenLimits lim;
  lim.max_aps = 30;
  lim.max_servers = 8;
  lim.max_theta = 6;

  int checked = 0, mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    ScenarioInstance inst = random_instance(rng, lim);
    double got = solve(inst).solution.objective;
    double expect = mincost_flow_optimum(inst);
    ++checked;
    if (std::fabs(got - expect) > kAgreeTol) ++mismatches;
  }
  double secs = seconds_since(t0);
  bool ok = mismatches == 0 && secs < kFlowSuiteBudget;
  report(2, "flow oracle agreement", ok,
         std::to_string(checked - mismatches) + "/" + std::to_string(checked) +
             " within 1e-9, n up to 30, m up to 8, in " + fmt(secs) + "s");
}

// ---- criterion 3: regime classification ----

std::int64_t accept_floor(double x) { return std::llround(std::floor(x + 1e-9)); }

void criterion_3() {
  bool canonical = classify(fixtures::line3()).regime == Regime::IKSW &&
                   classify(fixtures::line3_sksw()).regime == Regime::SKSW &&
                   classify(fixtures::line3_skiw()).regime == Regime::SKIW &&
                   classify(fixtures::line3_ikiw()).regime == Regime::IKIW;

  std::mt19937_64 rng(1003);
  GenLimits lim;
  int bad = 0;
  int seen[4] = {0, 0, 0, 0};
  for (int i = 0; i < 1000; ++i) {
    ScenarioInstance inst = random_instance(rng, lim);
    Regime got = classify(inst).regime;
    ++seen[static_cast<int>(got)];

    // recompute the quadrant from scratch
    std::int64_t window = std::llround(inst.profile.W);
    bool window_ok = true;
    std::int64_t pu = 0;
    for (int j = 0; j < inst.ap_count(); ++j) {
      std::int64_t theta = inst.requests[j];
      if (theta > window) window_ok = false;
      std::int64_t chi = std::min(theta, window);
      std::int64_t d;
      if (inst.placement[j] == 1) {
        d = std::max<std::int64_t>(
            0, accept_floor(static_cast<double>(chi) -
                            inst.profile.beta * static_cast<double>(theta)));
      } else {
        d = chi;
      }
      pu += d;
    }
    std::int64_t capacity =
        inst.server_count * accept_floor((1.0 - inst.profile.alpha) *
                                         inst.profile.K);
    Regime expect = window_ok ? (pu > capacity ? Regime::IKSW : Regime::SKSW)
                              : (pu > capacity ? Regime::IKIW : Regime::SKIW);
    if (got != expect) ++bad;
  }
  bool spanned = seen[0] > 0 && seen[1] > 0 && seen[2] > 0 && seen[3] > 0;
  bool ok = canonical && bad == 0 && spanned;
  std::ostringstream detail;
  detail << "4 canonical regimes, " << (1000 - bad)
         << "/1000 random instances match the recomputed quadrant (SKSW "
         << seen[0] << ", IKSW " << seen[1] << ", SKIW " << seen[2] << ", IKIW "
         << seen[3] << ")";
  report(3, "regime classification", ok, detail.str());
}

// ---- criterion 4: search effort on the ingested 12x10 scenario ----

ScenarioInstance derive_12x10(std::uint64_t seed, int servers) {
  fixtures::SyntheticLogSpec log_spec;
  log_spec.seed = seed;
  std::istringstream in(fixtures::synthetic_orders_csv(log_spec));
  auto records = parse_orders(in, nullptr);

  GridSpec grid;
  grid.rows = 12;
  grid.cols = 10;
  grid.lat_min = log_spec.lat_min;
  grid.lat_max = log_spec.lat_max;
  grid.lon_min = log_spec.lon_min;
  grid.lon_max = log_spec.lon_max;
  GridAggregate agg = gridify(records, grid);
  std::vector<int> placement = place_servers(agg.counts, servers);

  // theta does not depend on K or W, so draft the instance once and pick
  // capacities from its totals: a window admitting everything and a K that
  // covers the private load but only ~90% of the public demand
  DerivedProfile probe{1.0, 1.0, 0.3, 0.1};
  ScenarioInstance draft = derive_instance(agg, placement, probe,
                                           agg.distinct_days, seed);
  std::int64_t max_theta =
      *std::max_element(draft.requests.begin(), draft.requests.end());
  double W = static_cast<double>(std::max<std::int64_t>(1, max_theta));

  std::int64_t worst_private = 0;
  std::int64_t pu = 0;
  for (int i = 0; i < draft.ap_count(); ++i) {
    std::int64_t theta = draft.requests[i];
    std::int64_t priv = accept_floor(0.1 * static_cast<double>(theta));
    if (draft.placement[i] == 1) {
      worst_private = std::max(worst_private, priv);
      pu += std::max<std::int64_t>(
          0, accept_floor(static_cast<double>(theta) -
                          0.1 * static_cast<double>(theta)));
    } else {
      pu += theta;
    }
  }
  std::int64_t K = std::max<std::int64_t>(1, worst_private * 4);
  while (accept_floor(0.3 * static_cast<double>(K)) < worst_private) ++K;
  std::int64_t per_server =
      std::max<std::int64_t>(1, (9 * pu) / (10 * servers));
  while (accept_floor(0.7 * static_cast<double>(K)) < per_server) ++K;

  DerivedProfile profile{static_cast<double>(K), W, 0.3, 0.1};
  return derive_instance(agg, placement, profile, agg.distinct_days, seed);
}

void criterion_4() {
  ScenarioInstance inst = derive_12x10(1004, 40);
  auto violations = validate_instance(inst);
  if (!violations.empty()) {
    report(4, "search effort on the ingested 12x10 scenario", false,
           "derived scenario invalid: " + violations.front());
    return;
  }
  SolveReport rep = solve(inst);
  bool ok = inst.ap_count() == 120 && inst.server_count == 40 &&
            rep.branch_nodes <= kBigNodeBudget &&
            rep.wall_seconds <= kBigSolveBudget;
  std::ostringstream detail;
  detail << "120 APs, 40 servers, regime " << to_string(rep.regime) << ", "
         << rep.branch_nodes << " node(s), " << rep.lp_pivots << " pivots, "
         << fmt(rep.wall_seconds) << "s (budget " << kBigNodeBudget
         << " nodes, " << fmt(kBigSolveBudget) << "s)";
  report(4, "search effort on the ingested 12x10 scenario", ok, detail.str());
}

// ---- criterion 5: root integrality in sufficient-capacity regimes ----

void criterion_5() {
  std::mt19937_64 rng(1005);
  GenLimits lim;
  int total = 0, at_root = 0;
  for (Regime want : {Regime::SKSW, Regime::SKIW}) {
    for (int i = 0; i < 200; ++i) {
      ScenarioInstance inst = random_instance_of_regime(rng, lim, want);
      SolveReport rep = solve(inst);
      ++total;
      if (rep.branch_nodes == 1) ++at_root;
    }
  }
  double share = static_cast<double>(at_root) / static_cast<double>(total);
  bool ok = share >= kRootIntegralShare;
  report(5, "root integrality in sufficient-capacity regimes", ok,
         std::to_string(at_root) + "/" + std::to_string(total) +
             " solved at the root (" + fmt(100.0 * share) + "%, need >= 99%)");
}

// ---- criterion 6: K monotonicity ----

void criterion_6() {
  std::mt19937_64 rng(1006);
  GenLimits lim;
  int violations = 0;
  int ladders = 0;
  for (int i = 0; i < 50; ++i) {
    ScenarioInstance inst = random_instance(rng, lim);
    std::vector<double> rungs = default_k_ladder(inst);
    double previous = std::numeric_limits<double>::infinity();
    bool usable = true;
    for (double K : rungs) {
      inst.profile.K = K;
      if (!validate_instance(inst).empty()) {
        usable = false;
        break;
      }
      double objective = solve(inst).solution.objective;
      if (objective > previous + kMonotoneTol) ++violations;
      previous = objective;
    }
    if (usable) ++ladders;
  }
  bool ok = violations == 0 && ladders == 50;
  report(6, "K monotonicity", ok,
         std::to_string(ladders) + "/50 ladders of 5 rungs, " +
             std::to_string(violations) + " violation(s)");
}

// ---- criterion 7: alpha sweep structure ----

void criterion_7() {
  SweepRequest req;
  req.axis = SweepAxis::Alpha;
  req.base = fixtures::line3();
  req.base.profile.W = 3.0;  // keep some blocking in play
  for (int i = 0; i <= 10; ++i) req.values.push_back(i / 10.0);
  req.reps = 1;
  std::vector<SweepRow> rows = run_sweep(req);

  bool capacity_monotone = true;
  bool feasibility_monotone = true;
  bool edge_rate_monotone = true;
  bool seen_feasible = false;
  bool seen_infeasible = false;
  double breakpoint_alpha = -1.0;
  std::int64_t last_capacity = rows.front().public_capacity_per_server;
  double last_edge = rows.front().stats.public_edge_rate;

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& row = rows[i];
    if (row.public_capacity_per_server > last_capacity) {
      capacity_monotone = false;
    }
    last_capacity = row.public_capacity_per_server;
    if (row.stats.public_edge_rate > last_edge + 1e-12) {
      edge_rate_monotone = false;
    }
    last_edge = row.stats.public_edge_rate;
    if (row.private_feasible) {
      if (breakpoint_alpha < 0.0) breakpoint_alpha = req.values[i];
      seen_feasible = true;
    } else {
      if (seen_feasible) feasibility_monotone = false;
      seen_infeasible = true;
    }
  }
  bool ok = capacity_monotone && feasibility_monotone && edge_rate_monotone &&
            seen_feasible && seen_infeasible && rows.size() == 11;
  std::ostringstream detail;
  detail << "capacity and public edge rate non-increasing, private "
            "feasibility flips once, breakpoint alpha* = "
         << fmt(breakpoint_alpha) << " (reported, not asserted)";
  report(7, "alpha sweep structure", ok, detail.str());
}

// ---- criterion 8: ingest determinism and conservation ----

void criterion_8() {
  fixtures::SyntheticLogSpec log_spec;
  log_spec.seed = 1008;
  std::istringstream in_a(fixtures::synthetic_orders_csv(log_spec));
  std::istringstream in_b(fixtures::synthetic_orders_csv(log_spec));
  auto records_a = parse_orders(in_a, nullptr);
  auto records_b = parse_orders(in_b, nullptr);

  GridSpec grid;
  grid.rows = 12;
  grid.cols = 10;
  grid.lat_min = log_spec.lat_min;
  grid.lat_max = log_spec.lat_max;
  grid.lon_min = log_spec.lon_min;
  grid.lon_max = log_spec.lon_max;
  GridAggregate agg_a = gridify(records_a, grid);
  GridAggregate agg_b = gridify(records_b, grid);

  std::int64_t total = 0;
  for (auto c : agg_a.counts) total += c;
  bool conserved = total == agg_a.in_bounds &&
                   agg_a.in_bounds + agg_a.dropped ==
                       static_cast<std::int64_t>(records_a.size());

  std::vector<int> placement = place_servers(agg_a.counts, 40);
  int servers_placed = 0;
  for (int f : placement) servers_placed += f;

  DerivedProfile profile{200.0, 400.0, 0.3, 0.1};
  ScenarioInstance a = derive_instance(agg_a, placement, profile,
                                       agg_a.distinct_days, 77);
  ScenarioInstance b = derive_instance(agg_b, place_servers(agg_b.counts, 40),
                                       profile, agg_b.distinct_days, 77);
  bool deterministic = scenario_to_text(a) == scenario_to_text(b);

  bool ok = conserved && deterministic && a.ap_count() == 120 &&
            servers_placed == 40 && a.server_count == 40;
  std::ostringstream detail;
  detail << total << " in-bounds records conserved across " << grid.rows << "x"
         << grid.cols << " grids, 120 APs, 40 servers, reruns byte-identical: "
         << (deterministic ? "yes" : "no");
  report(8, "ingest determinism and conservation", ok, detail.str());
}

// ---- criterion 9: end-to-end determinism through the CLI ----

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  CliRun res;
  std::string cmd = std::string(EDGESCHED_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
  int rc = pclose(pipe);
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

void criterion_9() {
  const std::string path = "acceptance_line3.json";
  save_scenario(fixtures::line3(), path);
  CliRun first = run_cli("solve --seed 9 --scenario " + path);
  CliRun second = run_cli("solve --seed 9 --scenario " + path);
  std::remove(path.c_str());

  bool ok = false;
  std::string detail = "CLI solve failed";
  if (first.exit_code == 0 && second.exit_code == 0) {
    auto a = nlohmann::json::parse(first.out, nullptr, false);
    auto b = nlohmann::json::parse(second.out, nullptr, false);
    if (!a.is_discarded() && !b.is_discarded()) {
      bool differs_somewhere = first.out != second.out;
      a.erase("wall_ms");
      b.erase("wall_ms");
      ok = a == b;
      detail = std::string("two runs ") +
               (ok ? "identical" : "DIFFER") + " after dropping wall_ms" +
               (differs_somewhere ? "" : " (raw bytes already identical)");
    }
  }
  report(9, "end-to-end determinism", ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
