#include "twinbld/report.hpp"

#include <ostream>

namespace twinbld {

const char* tool_version() { return "0.1.0"; }

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["tool"] = "twinbld";
  j["version"] = tool_version();
  j["command"] = command;
  j["params"] = params;
  j["pass"] = pass();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    if (!c.details.is_null()) jc["details"] = c.details;
    j["checks"].push_back(jc);
  }
  if (seconds) j["seconds"] = *seconds;
  return j;
}

void RunReport::print_human(std::ostream& out) const {
  out << "== " << command << "\n";
  for (const auto& [k, v] : params.items()) out << "   " << k << " = " << v.dump() << "\n";
  for (const auto& c : checks) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.details.is_null()) out << "  " << c.details.dump();
    out << "\n";
  }
  if (seconds) out << "   elapsed " << *seconds << " s\n";
  out << (pass() ? "OK" : "FAILED") << "\n";
}

void write_opposition_dot(const OppositionGraph& g, std::ostream& out) {
  out << "graph opp_k" << g.k << "_c" << g.center << " {\n";
  for (int v : g.vertices) out << "  " << v << ";\n";
  for (auto [a, b] : g.edges) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
}

void write_wall_dot(const WallGraph& g, std::ostream& out) {
  out << "graph walls_c" << g.center << "_s" << g.gen + 1 << " {\n";
  for (int v : g.vertices) out << "  " << v << ";\n";
  for (auto [a, b] : g.edges) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
}

}  // namespace twinbld
