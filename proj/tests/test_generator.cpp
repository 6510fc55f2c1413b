#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "edgesched/generator.hpp"
#include "edgesched/partition.hpp"
#include "edgesched/scenario_io.hpp"

using namespace edgesched;

TEST_CASE("generated instances always validate") {
  std::mt19937_64 rng(3);
  GenLimits lim;
  for (int i = 0; i < 100; ++i) {
    ScenarioInstance inst = random_instance(rng, lim);
    CAPTURE(i);
    CHECK(validate_instance(inst).empty());
    CHECK(inst.ap_count() <= lim.max_aps);
    CHECK(inst.server_count <= lim.max_servers);
    CHECK(inst.server_count >= 1);
  }
}

TEST_CASE("generated delays live on the milli grid and lambda dominates") {
  std::mt19937_64 rng(17);
  GenLimits lim;
  for (int i = 0; i < 40; ++i) {
    ScenarioInstance inst = random_instance(rng, lim);
    CAPTURE(i);
    for (const Link& l : inst.topology.links) {
      double scaled = l.length * 1000.0;
      CHECK(std::fabs(scaled - std::round(scaled)) < 1e-6);
    }
    double max_delay = 0.0;
    for (const auto& row : inst.topology.delay_matrix) {
      for (double d : row) max_delay = std::max(max_delay, d);
    }
    CHECK(inst.profile.lambda >= max_delay - 1e-12);
  }
}

TEST_CASE("a fixed seed pins the generated stream") {
  GenLimits lim;
  std::mt19937_64 a(123), b(123);
  for (int i = 0; i < 10; ++i) {
    CHECK(scenario_to_text(random_instance(a, lim)) ==
          scenario_to_text(random_instance(b, lim)));
  }
}

TEST_CASE("the max_routed cap holds") {
  std::mt19937_64 rng(29);
  GenLimits lim;
  lim.max_routed = 12;
  for (int i = 0; i < 60; ++i) {
    ScenarioInstance inst = random_instance(rng, lim);
    CHECK(classify(inst).pu <= 12);
  }
}

TEST_CASE("regime targeting reaches all four quadrants") {
  std::mt19937_64 rng(5);
  GenLimits lim;
  for (Regime want : {Regime::SKSW, Regime::IKSW, Regime::SKIW, Regime::IKIW}) {
    ScenarioInstance inst = random_instance_of_regime(rng, lim, want);
    CHECK(classify(inst).regime == want);
    CHECK(validate_instance(inst).empty());
  }
}
