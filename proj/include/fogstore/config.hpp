#ifndef FOGSTORE_CONFIG_HPP
#define FOGSTORE_CONFIG_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include "fogstore/scenario.hpp"

namespace fogstore {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses a JSON scenario description. Keys are the ScenarioConfig field
// names in snake_case; missing keys keep their reference-scenario
// defaults, unknown keys are rejected so a misspelled parameter cannot
// silently fall back to a default.
ScenarioConfig parse_scenario_config(const std::string& text);

// Same, reading from a file; a missing or unreadable file raises a
// ConfigError naming the path.
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

}  // namespace fogstore

#endif
