#include "aztec/config.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace aztec {

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()) && !required.count(it.key()))
      throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
  for (const auto& k : required)
    if (!j.contains(k)) throw std::invalid_argument(where + ": missing key '" + k + "'");
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  json j;
  f >> j;
  return from_json(j);
}

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object() || !j.contains("command"))
    throw std::invalid_argument("config: missing 'command'");
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.body = j;
  c.body.erase("command");
  return c;
}

json RunConfig::to_json() const {
  json j = body;
  j["command"] = command;
  return j;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace aztec
