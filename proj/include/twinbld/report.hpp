#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "twinbld/paths.hpp"
#include "twinbld/twin.hpp"

namespace twinbld {

const char* tool_version();

struct CheckResult {
  std::string name;
  bool pass = false;
  nlohmann::ordered_json details;
};

/// Machine-readable run report. Deterministic for a fixed (command, config,
/// fixtures): wall-clock timing is only included on request since byte-stable
/// output is part of the contract.
struct RunReport {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<CheckResult> checks;
  std::optional<double> seconds;

  bool pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  nlohmann::ordered_json to_json() const;
  void print_human(std::ostream& out) const;
};

void write_opposition_dot(const OppositionGraph& g, std::ostream& out);
void write_wall_dot(const WallGraph& g, std::ostream& out);

}  // namespace twinbld
