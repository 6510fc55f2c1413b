#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "edgesched/model.hpp"

namespace edgesched {

struct OrderRecord {
  std::string id;
  std::int64_t timestamp = 0;  // seconds since epoch
  bool has_timestamp = false;
  double lat = 0.0;
  double lon = 0.0;
};

struct ParseStats {
  std::int64_t parsed = 0;
  std::int64_t malformed = 0;
  bool header_skipped = false;
};

// Comma-separated lines: order_id, timestamp, latitude, longitude. The
// timestamp field may be empty. A non-parsing first line is treated as a
// header; any other malformed line is counted and skipped.
std::vector<OrderRecord> parse_orders(std::istream& in, ParseStats* stats);
std::vector<OrderRecord> parse_order_file(const std::string& path,
                                          ParseStats* stats);

// rows segments of latitude times cols segments of longitude, indexed
// row-major (grid r*cols + c). Binning is half-open per cell; records on the
// top boundary fall into the last cell.
struct GridSpec {
  int rows = 0;
  int cols = 0;
  double lat_min = 0.0, lat_max = 0.0;
  double lon_min = 0.0, lon_max = 0.0;
};

struct GridAggregate {
  GridSpec spec;
  std::vector<std::int64_t> counts;           // in-bounds orders per grid
  std::vector<double> mean_center_distance;   // degree units, 0 when empty
  std::int64_t in_bounds = 0;
  std::int64_t dropped = 0;                   // outside the bounding box
  int distinct_days = 0;                      // from timestamps, 0 if none
};

GridAggregate gridify(const std::vector<OrderRecord>& records,
                      const GridSpec& spec);

// Top-m grids by order count host a server; ties go to the lower row-major
// index. Throws when m exceeds the grid count.
std::vector<int> place_servers(const std::vector<std::int64_t>& counts, int m);

struct DerivedProfile {
  double K = 0.0;
  double W = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

// One AP per grid center. theta is the per-day order count rounded half up,
// pi the mean user distance, links join 4-neighborhood centers with length
// jittered uniformly in [0.8, 1.2] by the seeded generator, and lambda is
// ten times the largest inter-AP delay. Identical inputs and seed give an
// identical instance. Throws when the aggregate holds no records or days < 1.
ScenarioInstance derive_instance(const GridAggregate& agg,
                                 const std::vector<int>& placement,
                                 const DerivedProfile& profile, int days,
                                 std::uint64_t seed);

}  // namespace edgesched
