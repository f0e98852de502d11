#ifndef SUBWAVE_CONFIG_HPP
#define SUBWAVE_CONFIG_HPP

#include <stdexcept>
#include <string>

#include "subwave/geometry.hpp"

namespace subwave {

enum class ConfigErrorCode {
  malformed_file = 1,
  unknown_scenario = 2,
  missing_key = 3,
  out_of_range = 4,
  unknown_key = 5,
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorCode code, std::string key, const std::string& message)
      : std::runtime_error(message), code_(code), key_(std::move(key)) {}
  ConfigErrorCode code() const { return code_; }
  const std::string& key() const { return key_; }

 private:
  ConfigErrorCode code_;
  std::string key_;
};

/// Parse a JSON scenario configuration; unknown keys, malformed values and
/// out-of-range values are rejected with the offending key named.
ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text);

/// Serialization such that parse(emit(c)) == c.
std::string emit_config(const ScenarioConfig& config);

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

}  // namespace subwave

#endif
