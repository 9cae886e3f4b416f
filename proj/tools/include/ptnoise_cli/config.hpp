#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ptnoise/models.hpp"

namespace ptnoise::cli {

// Raised for malformed or invalid configuration; the message names the
// offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PartnerSpec {
  enum class Kind { pt, detuned };
  Kind kind = Kind::pt;
  double epsilon = 0.0;

  bool operator==(const PartnerSpec&) const = default;
};

struct GridSpec {
  double e_min = 1.0;
  double e_max = 2.2;
  std::size_t n_points = 600;

  bool operator==(const GridSpec&) const = default;
};

struct OutputSpec {
  std::string csv;
  std::string json;

  bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
  RegionModel model = RegionModel::ballistic(1.0, 0.05, 1.0);
  PartnerSpec partner;
  double gamma = 0.1;
  GridSpec grid;
  OutputSpec outputs;

  void validate() const;
  RegionModel partner_model() const;

  bool operator==(const RunConfig&) const = default;
};

// Accepts either a config object or a spectrum sidecar ({"config", "results"}).
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const RunConfig& config);

}  // namespace ptnoise::cli
