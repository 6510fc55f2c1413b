#pragma once

#include <cstdint>
#include <string>

#include "edgesched/model.hpp"

namespace fixtures {

// Three APs in a line with the server in the middle. Window 5 admits all
// twelve requests, routed demands come out [4, 2, 4] against a public
// capacity of 7, so three requests overflow to the cloud: regime IKSW,
// optimum 69.2.
edgesched::ScenarioInstance line3();

// Same topology with the knobs turned: K 40 keeps everything on the edge
// (SKSW, optimum 9.2); window 3 blocks one request per AP (SKIW, 6.9);
// window 3 with K 8 does both (IKIW, 46.9).
edgesched::ScenarioInstance line3_sksw();
edgesched::ScenarioInstance line3_skiw();
edgesched::ScenarioInstance line3_ikiw();

struct SyntheticLogSpec {
  double lat_min = 30.57, lat_max = 30.78;
  double lon_min = 103.96, lon_max = 104.17;
  int clusters = 12;
  int per_day = 4000;
  int days = 3;
  int out_of_bounds = 25;  // records pushed outside the box on purpose
  std::uint64_t seed = 1;
};

// Order log shaped like a city: a seeded mixture of Gaussians over the box,
// clamped inside, plus a few deliberate out-of-bounds records. Timestamps
// spread the records over `days` distinct days. Starts with a header line.
std::string synthetic_orders_csv(const SyntheticLogSpec& spec);

void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace fixtures
