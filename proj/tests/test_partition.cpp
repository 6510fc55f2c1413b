#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "edgesched/generator.hpp"
#include "edgesched/partition.hpp"
#include "support.hpp"

using namespace edgesched;

TEST_CASE("admission clips at the window, private requests first") {
  ScenarioInstance inst = fixtures::line3();
  inst.requests = {9, 4, 4};
  Admission adm = admit(inst);
  CHECK(adm.admitted[0] == 5);
  CHECK(adm.blocked[0] == 4);
  CHECK(adm.private_admitted[0] == 4);  // floor(0.5 * 9)
  CHECK(adm.admitted[1] == 4);
  CHECK(adm.blocked[1] == 0);
}

TEST_CASE("admission refuses windows too small for the private load") {
  ScenarioInstance inst = fixtures::line3();
  inst.requests = {12, 4, 4};  // floor(0.5 * 12) = 6 > W = 5
  CHECK_THROWS_WITH_AS(admit(inst),
                       "private demand exceeds communication capacity at AP 1",
                       std::runtime_error);
}

TEST_CASE("the canonical instances land in all four regimes") {
  RegimeDescriptor base = classify(fixtures::line3());
  CHECK(base.regime == Regime::IKSW);
  CHECK(base.routed == std::vector<std::int64_t>{4, 2, 4});
  CHECK(base.pu == 10);
  CHECK(base.total_public_capacity == 7);
  CHECK(base.cloud_required);

  CHECK(classify(fixtures::line3_sksw()).regime == Regime::SKSW);
  CHECK(classify(fixtures::line3_skiw()).regime == Regime::SKIW);
  CHECK(classify(fixtures::line3_ikiw()).regime == Regime::IKIW);
}

TEST_CASE("classification quadrant details") {
  SUBCASE("window 3 blocks one request per AP") {
    RegimeDescriptor desc = classify(fixtures::line3_skiw());
    CHECK(desc.admitted == std::vector<std::int64_t>{3, 3, 3});
    CHECK(desc.blocked == std::vector<std::int64_t>{1, 1, 1});
    CHECK(desc.routed == std::vector<std::int64_t>{3, 1, 3});
    CHECK(desc.pu == 7);
    CHECK_FALSE(desc.cloud_required);
  }
  SUBCASE("K 8 leaves capacity 5 against demand 7") {
    RegimeDescriptor desc = classify(fixtures::line3_ikiw());
    CHECK(desc.total_public_capacity == 5);
    CHECK(desc.pu == 7);
    CHECK(desc.cloud_required);
  }
  SUBCASE("zero load is SKSW") {
    ScenarioInstance inst = fixtures::line3();
    inst.requests = {0, 0, 0};
    CHECK(classify(inst).regime == Regime::SKSW);
  }
}

TEST_CASE("classification is exhaustive and exclusive") {
  std::mt19937_64 rng(99);
  GenLimits lim;
  for (int i = 0; i < 250; ++i) {
    ScenarioInstance inst = random_instance(rng, lim);
    RegimeDescriptor desc = classify(inst);

    bool window_ok = true;
    for (int j = 0; j < inst.ap_count(); ++j) {
      window_ok = window_ok &&
                  inst.requests[j] <= inst.profile.comm_capacity();
    }
    Regime expect;
    if (window_ok) {
      expect = desc.cloud_required ? Regime::IKSW : Regime::SKSW;
    } else {
      expect = desc.cloud_required ? Regime::IKIW : Regime::SKIW;
    }
    CHECK(desc.regime == expect);
    CHECK(desc.cloud_required == (desc.pu > desc.total_public_capacity));
  }
}

TEST_CASE("service stats on the canonical instance") {
  ServiceStats stats = service_stats(fixtures::line3());
  CHECK(stats.private_rate == 1.0);       // 6 of 6 private served
  CHECK(stats.public_rate == 1.0);        // all 6 public admitted
  CHECK(stats.public_edge_rate == doctest::Approx(0.7));  // 3 of 10 offloaded
  CHECK(stats.cloud_offload == 3);
  CHECK(stats.blocked_total == 0);
}

TEST_CASE("service stats degrade gracefully on starved private capacity") {
  ScenarioInstance inst = fixtures::line3();
  inst.profile.alpha = 0.0;  // invalid instance, stats still defined
  ServiceStats stats = service_stats(inst);
  CHECK(stats.private_rate == doctest::Approx(4.0 / 6.0));
  CHECK(stats.blocked_total == 0);
}

TEST_CASE("blocking shows up in the public rate") {
  ServiceStats stats = service_stats(fixtures::line3_skiw());
  // one blocked per AP; private floor(0.5*4)=2 admitted first, one public left
  CHECK(stats.blocked_total == 3);
  CHECK(stats.public_rate == doctest::Approx(3.0 / 6.0));
  CHECK(stats.cloud_offload == 0);
  CHECK(stats.public_edge_rate == 1.0);
}
