#include "edgesched/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace edgesched {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + " for digesting");
  std::ostringstream buf;
  buf << in.rdbuf();
  return fnv1a_hex(buf.str());
}

std::string solve_report_text(const SolveReport& report,
                              const std::string& input_digest,
                              std::uint64_t seed) {
  nlohmann::ordered_json root;
  root["version"] = kToolVersion;
  root["input_digest"] = input_digest;
  root["seed"] = seed;
  root["regime"] = to_string(report.regime);
  root["objective"] = report.solution.objective;
  root["branch_nodes"] = report.branch_nodes;
  root["lp_pivots"] = report.lp_pivots;
  root["wall_ms"] = report.wall_seconds * 1000.0;
  root["private_service_rate"] = report.stats.private_rate;
  root["public_service_rate"] = report.stats.public_rate;
  root["public_edge_service_rate"] = report.stats.public_edge_rate;
  root["cloud_offload"] = report.stats.cloud_offload;
  root["blocked"] = report.stats.blocked_total;
  root["admitted"] = report.solution.admitted;

  auto overflow = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < report.solution.cloud_overflow.size(); ++j) {
    if (report.solution.cloud_overflow[j] != 0) {
      overflow.push_back({{"ap", j + 1}, {"count", report.solution.cloud_overflow[j]}});
    }
  }
  root["cloud_overflow"] = std::move(overflow);

  auto routing = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.solution.routing.size(); ++i) {
    for (std::size_t j = 0; j < report.solution.routing[i].size(); ++j) {
      if (report.solution.routing[i][j] != 0) {
        routing.push_back({{"from", i + 1},
                           {"to", j + 1},
                           {"count", report.solution.routing[i][j]}});
      }
    }
  }
  root["routing"] = std::move(routing);
  return root.dump(2) + "\n";
}

}  // namespace edgesched
