#include "edgesched/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace edgesched {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return false;
  *out = v;
  return true;
}

bool parse_line(const std::string& line, OrderRecord* rec) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  if (fields.size() != 4) return false;
  if (!parse_double(fields[2], &rec->lat)) return false;
  if (!parse_double(fields[3], &rec->lon)) return false;
  rec->id = fields[0];
  double ts;
  if (parse_double(fields[1], &ts)) {
    rec->timestamp = static_cast<std::int64_t>(std::floor(ts));
    rec->has_timestamp = true;
  } else {
    rec->timestamp = 0;
    rec->has_timestamp = false;
  }
  return true;
}

// 53-bit mantissa draw in [0, 1); fully pinned by the mt19937_64 stream.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<OrderRecord> parse_orders(std::istream& in, ParseStats* stats) {
  std::vector<OrderRecord> out;
  ParseStats local;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::string body = trim(line);
    bool is_first = first;
    first = false;
    if (body.empty()) continue;
    OrderRecord rec;
    if (parse_line(body, &rec)) {
      out.push_back(std::move(rec));
      ++local.parsed;
    } else if (is_first) {
      local.header_skipped = true;
    } else {
      ++local.malformed;
    }
  }
  if (stats) *stats = local;
  return out;
}

std::vector<OrderRecord> parse_order_file(const std::string& path,
                                          ParseStats* stats) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open order file " + path);
  return parse_orders(in, stats);
}

GridAggregate gridify(const std::vector<OrderRecord>& records,
                      const GridSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1) {
    throw std::invalid_argument("grid must have at least one row and column");
  }
  if (!(spec.lat_max > spec.lat_min) || !(spec.lon_max > spec.lon_min)) {
    throw std::invalid_argument("grid bounding box is empty");
  }
  GridAggregate agg;
  agg.spec = spec;
  const int cells = spec.rows * spec.cols;
  agg.counts.assign(cells, 0);
  // accumulated in sorted order below, so the result is bit-identical under
  // any permutation of the record list
  std::vector<std::pair<int, double>> dists;
  const double lat_step = (spec.lat_max - spec.lat_min) / spec.rows;
  const double lon_step = (spec.lon_max - spec.lon_min) / spec.cols;
  std::set<std::int64_t> days;

  for (const OrderRecord& rec : records) {
    if (rec.lat < spec.lat_min || rec.lat > spec.lat_max ||
        rec.lon < spec.lon_min || rec.lon > spec.lon_max) {
      ++agg.dropped;
      continue;
    }
    int r = static_cast<int>((rec.lat - spec.lat_min) / lat_step);
    int c = static_cast<int>((rec.lon - spec.lon_min) / lon_step);
    r = std::min(std::max(r, 0), spec.rows - 1);
    c = std::min(std::max(c, 0), spec.cols - 1);
    int cell = r * spec.cols + c;
    double clat = spec.lat_min + (r + 0.5) * lat_step;
    double clon = spec.lon_min + (c + 0.5) * lon_step;
    double dlat = rec.lat - clat;
    double dlon = rec.lon - clon;
    ++agg.counts[cell];
    dists.emplace_back(cell, std::sqrt(dlat * dlat + dlon * dlon));
    ++agg.in_bounds;
    if (rec.has_timestamp) {
      std::int64_t day = rec.timestamp / 86400;
      if (rec.timestamp < 0 && rec.timestamp % 86400 != 0) --day;
      days.insert(day);
    }
  }
  if (agg.in_bounds == 0) {
    throw std::runtime_error(
        "no order records fell inside the bounding box; nothing to derive");
  }
  std::sort(dists.begin(), dists.end());
  std::vector<KahanSum> dist_sum(cells);
  for (const auto& [cell, d] : dists) dist_sum[cell].add(d);
  agg.mean_center_distance.assign(cells, 0.0);
  for (int g = 0; g < cells; ++g) {
    if (agg.counts[g] > 0) {
      agg.mean_center_distance[g] =
          dist_sum[g].value() / static_cast<double>(agg.counts[g]);
    }
  }
  agg.distinct_days = static_cast<int>(days.size());
  return agg;
}

std::vector<int> place_servers(const std::vector<std::int64_t>& counts, int m) {
  const int cells = static_cast<int>(counts.size());
  if (m < 0 || m > cells) {
    throw std::invalid_argument("cannot place " + std::to_string(m) +
                                " servers on " + std::to_string(cells) +
                                " grids");
  }
  std::vector<int> order(cells);
  for (int g = 0; g < cells; ++g) order[g] = g;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (counts[a] != counts[b]) return counts[a] > counts[b];
    return a < b;
  });
  std::vector<int> placement(cells, 0);
  for (int k = 0; k < m; ++k) placement[order[k]] = 1;
  return placement;
}

ScenarioInstance derive_instance(const GridAggregate& agg,
                                 const std::vector<int>& placement,
                                 const DerivedProfile& profile, int days,
                                 std::uint64_t seed) {
  if (agg.in_bounds <= 0) {
    throw std::runtime_error(
        "no order records fell inside the bounding box; nothing to derive");
  }
  if (days < 1) throw std::invalid_argument("day count must be at least 1");
  const GridSpec& spec = agg.spec;
  const int cells = spec.rows * spec.cols;
  if (static_cast<int>(placement.size()) != cells) {
    throw std::invalid_argument("placement length differs from the grid count");
  }

  const double lat_step = (spec.lat_max - spec.lat_min) / spec.rows;
  const double lon_step = (spec.lon_max - spec.lon_min) / spec.cols;

  ScenarioInstance inst;
  std::vector<ApNode> aps(cells);
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      int g = r * spec.cols + c;
      aps[g] = {g + 1, spec.lon_min + (c + 0.5) * lon_step,
                spec.lat_min + (r + 0.5) * lat_step};
    }
  }

  std::mt19937_64 rng(seed);
  auto jitter = [&rng]() { return 0.8 + 0.4 * unit_draw(rng); };
  std::vector<Link> links;
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      int g = r * spec.cols + c;
      if (c + 1 < spec.cols) {
        links.push_back({g + 1, g + 2, lon_step * jitter()});
      }
      if (r + 1 < spec.rows) {
        links.push_back({g + 1, g + 1 + spec.cols, lat_step * jitter()});
      }
    }
  }
  inst.topology = NetworkTopology::from_links(std::move(aps), std::move(links));

  inst.requests.resize(cells);
  inst.local_delay = agg.mean_center_distance;
  for (int g = 0; g < cells; ++g) {
    // round half up of counts/days in exact integer arithmetic
    inst.requests[g] = (2 * agg.counts[g] + days) / (2 * days);
  }
  inst.placement = placement;
  for (int f : placement) inst.server_count += f;

  double max_delay = 0.0;
  for (const auto& row : inst.topology.delay_matrix) {
    for (double d : row) max_delay = std::max(max_delay, d);
  }
  inst.profile.K = profile.K;
  inst.profile.W = profile.W;
  inst.profile.alpha = profile.alpha;
  inst.profile.beta = profile.beta;
  inst.profile.lambda = 10.0 * max_delay;
  return inst;
}

}  // namespace edgesched
