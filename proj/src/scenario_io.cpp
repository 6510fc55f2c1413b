#include "edgesched/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace edgesched {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
  if (!obj.is_object()) {
    throw std::runtime_error("scenario: " + where + " must be an object");
  }
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw std::runtime_error("scenario: unknown key \"" + item.key() +
                               "\" in " + where);
    }
  }
  for (const std::string& key : allowed) {
    if (!obj.contains(key)) {
      throw std::runtime_error("scenario: " + where + " is missing key \"" +
                               key + "\"");
    }
  }
}

double number_field(const json& obj, const std::string& key,
                    const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw std::runtime_error("scenario: " + where + "." + key +
                             " must be a number");
  }
  return v.get<double>();
}

}  // namespace

ScenarioInstance parse_scenario_text(const std::string& text) {
  json root = json::parse(text);
  require_keys(root, {"aps", "links", "profile", "theta", "pi", "placement"},
               "top level");

  ScenarioInstance inst;
  const json& aps = root.at("aps");
  if (!aps.is_array()) throw std::runtime_error("scenario: aps must be a list");
  std::vector<ApNode> nodes;
  int expect = 1;
  for (const json& ap : aps) {
    require_keys(ap, {"id", "x", "y"}, "aps entry");
    if (!ap.at("id").is_number_integer()) {
      throw std::runtime_error("scenario: AP id must be an integer");
    }
    int id = ap.at("id").get<int>();
    if (id != expect) {
      throw std::runtime_error("scenario: AP ids must be 1..n in order, got " +
                               std::to_string(id) + " at position " +
                               std::to_string(expect));
    }
    ++expect;
    nodes.push_back({id, number_field(ap, "x", "aps entry"),
                     number_field(ap, "y", "aps entry")});
  }

  const json& links = root.at("links");
  if (!links.is_array()) throw std::runtime_error("scenario: links must be a list");
  std::vector<Link> edges;
  for (const json& l : links) {
    require_keys(l, {"a", "b", "length"}, "links entry");
    if (!l.at("a").is_number_integer() || !l.at("b").is_number_integer()) {
      throw std::runtime_error("scenario: link endpoints must be integers");
    }
    edges.push_back({l.at("a").get<int>(), l.at("b").get<int>(),
                     number_field(l, "length", "links entry")});
  }

  const json& profile = root.at("profile");
  require_keys(profile, {"K", "W", "alpha", "beta", "lambda"}, "profile");
  inst.profile.K = number_field(profile, "K", "profile");
  inst.profile.W = number_field(profile, "W", "profile");
  inst.profile.alpha = number_field(profile, "alpha", "profile");
  inst.profile.beta = number_field(profile, "beta", "profile");
  inst.profile.lambda = number_field(profile, "lambda", "profile");

  const int n = static_cast<int>(nodes.size());
  auto read_list = [&](const char* key, auto&& convert) {
    const json& arr = root.at(key);
    if (!arr.is_array() || static_cast<int>(arr.size()) != n) {
      throw std::runtime_error("scenario: " + std::string(key) +
                               " must be a list with one entry per AP");
    }
    for (const json& v : arr) convert(v);
  };
  read_list("theta", [&](const json& v) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw std::runtime_error(
          "scenario: theta entries must be nonnegative integers");
    }
    inst.requests.push_back(v.get<std::int64_t>());
  });
  read_list("pi", [&](const json& v) {
    if (!v.is_number()) {
      throw std::runtime_error("scenario: pi entries must be numbers");
    }
    inst.local_delay.push_back(v.get<double>());
  });
  read_list("placement", [&](const json& v) {
    if (!v.is_number_integer() ||
        (v.get<int>() != 0 && v.get<int>() != 1)) {
      throw std::runtime_error("scenario: placement entries must be 0 or 1");
    }
    inst.placement.push_back(v.get<int>());
  });

  inst.topology = NetworkTopology::from_links(std::move(nodes), std::move(edges));
  for (int f : inst.placement) inst.server_count += f;
  return inst;
}

ScenarioInstance load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string scenario_to_text(const ScenarioInstance& inst) {
  ordered_json root;
  root["aps"] = ordered_json::array();
  for (const ApNode& ap : inst.topology.aps) {
    root["aps"].push_back({{"id", ap.id}, {"x", ap.x}, {"y", ap.y}});
  }
  root["links"] = ordered_json::array();
  for (const Link& l : inst.topology.links) {
    root["links"].push_back({{"a", l.a}, {"b", l.b}, {"length", l.length}});
  }
  root["profile"] = {{"K", inst.profile.K},
                     {"W", inst.profile.W},
                     {"alpha", inst.profile.alpha},
                     {"beta", inst.profile.beta},
                     {"lambda", inst.profile.lambda}};
  root["theta"] = inst.requests;
  root["pi"] = inst.local_delay;
  root["placement"] = inst.placement;
  return root.dump(2) + "\n";
}

void save_scenario(const ScenarioInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write scenario file " + path);
  out << scenario_to_text(inst);
}

}  // namespace edgesched
