#ifndef AZTEC_CONFIG_HPP
#define AZTEC_CONFIG_HPP

#include <json.hpp>
#include <set>
#include <string>

namespace aztec {

using json = nlohmann::json;

inline constexpr const char* kArtifactVersion = "1.0.0";

// Reject configs containing keys outside the schema; a typo must not be
// silently ignored on a reproducibility-critical path.
void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& where);

// Single JSON document descriptor of a run: {"command": ..., <flags>}.
struct RunConfig {
  std::string command;
  json body;

  static RunConfig from_file(const std::string& path);
  static RunConfig from_json(const json& j);
  json to_json() const;
};

// Full-precision number formatting for CSV artifacts.
std::string format_full(double v);

}  // namespace aztec

#endif
