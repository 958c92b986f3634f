#include "fogstore/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fogstore {

namespace {

using nlohmann::json;

double number_field(const json& value, const char* name) {
  if (!value.is_number()) throw ConfigError(std::string(name) + ": expected a number");
  return value.get<double>();
}

std::size_t count_field(const json& value, const char* name) {
  if (!value.is_number_unsigned())
    throw ConfigError(std::string(name) + ": expected a non-negative integer");
  return value.get<std::size_t>();
}

std::array<double, 2> range_field(const json& value, const char* name) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number())
    throw ConfigError(std::string(name) + ": expected [lo, hi]");
  return {value[0].get<double>(), value[1].get<double>()};
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  ScenarioConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "n_cloud") config.n_cloud = count_field(value, "n_cloud");
    else if (key == "n_fog") config.n_fog = count_field(value, "n_fog");
    else if (key == "n_plain_bs") config.n_plain_bs = count_field(value, "n_plain_bs");
    else if (key == "data_mb") config.data_mb = number_field(value, "data_mb");
    else if (key == "cloud_ts_ms") config.cloud_ts_ms = number_field(value, "cloud_ts_ms");
    else if (key == "fog_ts_ms") config.fog_ts_ms = number_field(value, "fog_ts_ms");
    else if (key == "cloud_load_range") config.cloud_load_range = range_field(value, "cloud_load_range");
    else if (key == "fog_load_range") config.fog_load_range = range_field(value, "fog_load_range");
    else if (key == "access_link_ms_range")
      config.access_link_ms_range = range_field(value, "access_link_ms_range");
    else if (key == "cloud_link_multiplier")
      config.cloud_link_multiplier = number_field(value, "cloud_link_multiplier");
    else if (key == "rate_mbps_range") config.rate_mbps_range = range_field(value, "rate_mbps_range");
    else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
      config.seed = value.get<std::uint64_t>();
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }

  try {
    validate_config(config);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  return config;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_config(buffer.str());
}

}  // namespace fogstore
