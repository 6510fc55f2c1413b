#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "edgesched/generator.hpp"
#include "edgesched/milp.hpp"
#include "edgesched/oracle.hpp"
#include "support.hpp"

using namespace edgesched;

TEST_CASE("exhaustive enumeration confirms the canonical optimum") {
  EnumerationResult res = enumerate_optimum(fixtures::line3());
  CHECK(res.objective == doctest::Approx(69.2).epsilon(1e-12));
  CHECK(res.solution.cloud_overflow == std::vector<std::int64_t>{0, 3, 0});
}

TEST_CASE("enumeration covers all four canonical variants") {
  CHECK(enumerate_optimum(fixtures::line3_sksw()).objective ==
        doctest::Approx(9.2).epsilon(1e-12));
  CHECK(enumerate_optimum(fixtures::line3_skiw()).objective ==
        doctest::Approx(6.9).epsilon(1e-12));
  CHECK(enumerate_optimum(fixtures::line3_ikiw()).objective ==
        doctest::Approx(46.9).epsilon(1e-12));
}

TEST_CASE("the enumeration guard refuses big instances") {
  ScenarioInstance inst = fixtures::line3();
  inst.profile.beta = 0.0;  // nothing private: routed [5, 5, 5] = 15 > 12
  inst.requests = {5, 5, 5};
  CHECK_THROWS_AS(enumerate_optimum(inst), std::invalid_argument);
}

TEST_CASE("the flow oracle reproduces the canonical optima") {
  CHECK(mincost_flow_optimum(fixtures::line3()) ==
        doctest::Approx(69.2).epsilon(1e-12));
  CHECK(mincost_flow_optimum(fixtures::line3_sksw()) ==
        doctest::Approx(9.2).epsilon(1e-12));
  CHECK(mincost_flow_optimum(fixtures::line3_ikiw()) ==
        doctest::Approx(46.9).epsilon(1e-12));
}

TEST_CASE("the flow network mirrors the regime descriptor") {
  ScenarioInstance inst = fixtures::line3();
  FlowNetwork net = build_flow_network(inst, classify(inst));
  CHECK(net.required_flow == 10);
  CHECK(net.ap_node.size() == 3);
  CHECK(net.server_node.size() == 1);
  bool has_cloud_arc = false;
  for (const FlowArc& arc : net.arcs) {
    if (arc.to == net.cloud) {
      has_cloud_arc = true;
      CHECK(arc.cost == doctest::Approx(20.0));
      CHECK(arc.capacity == 3);
    }
  }
  CHECK(has_cloud_arc);

  FlowNetwork edge_only =
      build_flow_network(fixtures::line3_sksw(), classify(fixtures::line3_sksw()));
  for (const FlowArc& arc : edge_only.arcs) CHECK(arc.to != edge_only.cloud);
}

TEST_CASE("off-grid arc costs fail the scaling audit") {
  std::vector<ApNode> aps = {{1, 0.0, 0.0}, {2, 1.0, 0.0}};
  std::vector<Link> links = {{1, 2, 0.0001234567}};
  ScenarioInstance inst;
  inst.topology = NetworkTopology::from_links(aps, links);
  inst.profile = {10.0, 5.0, 0.0, 0.0, 1.0};
  inst.requests = {2, 0};
  inst.local_delay = {0.0, 0.0};
  inst.placement = {0, 1};
  inst.server_count = 1;
  CHECK_THROWS_WITH_AS(mincost_flow_optimum(inst),
                       doctest::Contains("not representable"),
                       std::runtime_error);
}

TEST_CASE("solver and enumeration agree on seeded tiny instances") {
  std::mt19937_64 rng(7);
  GenLimits lim;
  lim.max_routed = 12;
  for (int i = 0; i < 60; ++i) {
    ScenarioInstance inst = random_instance(rng, lim);
    double expect = enumerate_optimum(inst).objective;
    double got = solve(inst).solution.objective;
    CAPTURE(i);
    CHECK(std::fabs(got - expect) <= 1e-9);
  }
}

TEST_CASE("solver and flow oracle agree on seeded medium instances") {
  std::mt19937_64 rng(13);
  GenLimits lim;
  lim.max_aps = 12;
  lim.max_servers = 4;
  lim.max_theta = 9;
  for (int i = 0; i < 30; ++i) {
    ScenarioInstance inst = random_instance(rng, lim);
    double expect = mincost_flow_optimum(inst);
    double got = solve(inst).solution.objective;
    CAPTURE(i);
    CHECK(std::fabs(got - expect) <= 1e-9);
  }
}

TEST_CASE("the two oracles agree with each other") {
  std::mt19937_64 rng(21);
  GenLimits lim;
  lim.max_routed = 12;
  for (int i = 0; i < 25; ++i) {
    ScenarioInstance inst = random_instance(rng, lim);
    CAPTURE(i);
    CHECK(std::fabs(enumerate_optimum(inst).objective -
                    mincost_flow_optimum(inst)) <= 1e-9);
  }
}
