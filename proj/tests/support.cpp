#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fixtures {

using namespace edgesched;

namespace {

ScenarioInstance line3_base() {
  std::vector<ApNode> aps = {{1, 0.0, 0.0}, {2, 1.0, 0.0}, {3, 2.0, 0.0}};
  std::vector<Link> links = {{1, 2, 1.0}, {2, 3, 1.0}};
  ScenarioInstance inst;
  inst.topology = NetworkTopology::from_links(std::move(aps), std::move(links));
  inst.profile.K = 10.0;
  inst.profile.W = 5.0;
  inst.profile.alpha = 0.3;
  inst.profile.beta = 0.5;
  inst.profile.lambda = 20.0;
  inst.requests = {4, 4, 4};
  inst.local_delay = {0.1, 0.1, 0.1};
  inst.placement = {0, 1, 0};
  inst.server_count = 1;
  return inst;
}

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian_draw(std::mt19937_64& rng) {
  double u = std::max(unit_draw(rng), 1e-300);
  double v = unit_draw(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
}

}  // namespace

ScenarioInstance line3() { return line3_base(); }

ScenarioInstance line3_sksw() {
  ScenarioInstance inst = line3_base();
  inst.profile.K = 40.0;
  return inst;
}

ScenarioInstance line3_skiw() {
  ScenarioInstance inst = line3_base();
  inst.profile.K = 40.0;
  inst.profile.W = 3.0;
  return inst;
}

ScenarioInstance line3_ikiw() {
  ScenarioInstance inst = line3_base();
  inst.profile.K = 8.0;
  inst.profile.W = 3.0;
  return inst;
}

std::string synthetic_orders_csv(const SyntheticLogSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const double lat_span = spec.lat_max - spec.lat_min;
  const double lon_span = spec.lon_max - spec.lon_min;

  std::vector<std::pair<double, double>> centers;
  for (int c = 0; c < spec.clusters; ++c) {
    centers.emplace_back(
        spec.lat_min + lat_span * (0.2 + 0.6 * unit_draw(rng)),
        spec.lon_min + lon_span * (0.2 + 0.6 * unit_draw(rng)));
  }
  const double sigma_lat = 0.08 * lat_span;
  const double sigma_lon = 0.08 * lon_span;

  std::ostringstream out;
  out << "order_id,timestamp,lat,lon\n";
  char line[160];
  long long order = 0;
  for (int d = 0; d < spec.days; ++d) {
    for (int k = 0; k < spec.per_day; ++k) {
      const auto& center = centers[static_cast<std::size_t>(
          rng() % static_cast<std::uint64_t>(spec.clusters))];
      double lat = center.first + sigma_lat * gaussian_draw(rng);
      double lon = center.second + sigma_lon * gaussian_draw(rng);
      lat = std::clamp(lat, spec.lat_min, spec.lat_max);
      lon = std::clamp(lon, spec.lon_min, spec.lon_max);
      long long ts = (17400ll + d) * 86400ll +
                     static_cast<long long>(rng() % 86400ull);
      std::snprintf(line, sizeof(line), "o%lld,%lld,%.6f,%.6f\n", order++, ts,
                    lat, lon);
      out << line;
    }
  }
  for (int k = 0; k < spec.out_of_bounds; ++k) {
    double lat = spec.lat_max + 0.01 + 0.05 * unit_draw(rng);
    double lon = spec.lon_min + lon_span * unit_draw(rng);
    long long ts = 17400ll * 86400ll + static_cast<long long>(rng() % 86400ull);
    std::snprintf(line, sizeof(line), "o%lld,%lld,%.6f,%.6f\n", order++, ts,
                  lat, lon);
    out << line;
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fixtures
