#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tutteparity/cyclotomic.hpp"
#include "tutteparity/rational.hpp"

namespace tutteparity {

// Outcome of one mechanically verified identity. Both sides are rendered
// exactly; a skipped check records why it could not be evaluated.
struct CheckResult {
  std::string identity;
  std::string graph;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string lhs;
  std::string rhs;
  bool pass = false;
  bool skipped = false;
  std::string note;

  CheckResult& param(const std::string& key, const std::string& value) {
    parameters.emplace_back(key, value);
    return *this;
  }
};

template <class T>
CheckResult compare(const std::string& identity, const T& lhs, const T& rhs) {
  CheckResult c;
  c.identity = identity;
  if constexpr (std::is_same_v<T, Cyc12>) {
    c.lhs = lhs.to_string();
    c.rhs = rhs.to_string();
  } else {
    c.lhs = to_string(lhs);
    c.rhs = to_string(rhs);
  }
  c.pass = lhs == rhs;
  return c;
}

inline CheckResult skipped_check(const std::string& identity, const std::string& why) {
  CheckResult c;
  c.identity = identity;
  c.skipped = true;
  c.pass = true;
  c.note = why;
  return c;
}

inline std::vector<CheckResult>& label(std::vector<CheckResult>& checks, const std::string& graph) {
  for (auto& c : checks) c.graph = graph;
  return checks;
}

inline nlohmann::json to_json(const CheckResult& c) {
  nlohmann::json params = nlohmann::json::object();
  for (auto& [k, v] : c.parameters) params[k] = v;
  nlohmann::json j = {{"identity", c.identity}, {"graph", c.graph}, {"parameters", params},
                      {"lhs", c.lhs},           {"rhs", c.rhs},     {"pass", c.pass}};
  if (c.skipped) j["skipped"] = true;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline bool all_pass(const std::vector<CheckResult>& checks) {
  for (auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace tutteparity
