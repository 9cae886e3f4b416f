#include "ptnoise_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "ptnoise/errors.hpp"

namespace ptnoise::cli {

using nlohmann::json;

namespace {

std::string join(std::string_view prefix, std::string_view key) {
  return prefix.empty() ? std::string(key) : std::string(prefix) + "." + std::string(key);
}

void expect_object(const json& j, std::string_view where) {
  if (!j.is_object())
    throw ConfigError((where.empty() ? std::string("config") : std::string(where)) +
                      ": expected an object");
}

void reject_unknown(const json& j, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (auto a : allowed) known = known || it.key() == a;
    if (!known) throw ConfigError(join(where, it.key()) + ": unknown key");
  }
}

double get_number(const json& j, std::string_view where, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(join(where, key) + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(join(where, key) + ": must be finite");
  return x;
}

std::uint64_t get_unsigned(const json& j, std::string_view where, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw ConfigError(join(where, key) + ": expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<double> get_vector(const json& j, std::string_view where, const char* key) {
  const auto& v = j.at(key);
  if (v.is_number()) return {get_number(j, where, key)};
  if (!v.is_array() || v.empty())
    throw ConfigError(join(where, key) + ": expected a number or a non-empty array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(join(where, key) + ": array entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

RegionModel parse_model(const json& j) {
  constexpr std::string_view where = "model";
  expect_object(j, where);
  reject_unknown(j, where,
                 {"kind", "n_modes", "n_re", "kappa", "length", "rho", "mixing_seed", "gamma_sign"});
  RegionModel m;
  if (!j.contains("kind")) throw ConfigError("model.kind: missing");
  if (!j["kind"].is_string()) throw ConfigError("model.kind: expected a string");
  try {
    m.kind = region_kind_from_string(j["kind"].get<std::string>());
  } catch (const InvalidParam& e) {
    throw ConfigError(std::string("model.kind: ") + e.what());
  }
  if (j.contains("n_re")) m.n_re = get_vector(j, where, "n_re");
  if (j.contains("kappa")) m.kappa = get_vector(j, where, "kappa");
  if (j.contains("n_modes")) {
    const auto n = get_unsigned(j, where, "n_modes");
    if (n < 1 || n > 4096) throw ConfigError("model.n_modes: must be in [1, 4096]");
    m.n_modes = static_cast<int>(n);
  } else if (m.kind == RegionKind::multimode) {
    m.n_modes = static_cast<int>(std::max(m.n_re.size(), m.kappa.size()));
  }
  if (j.contains("length")) m.length = get_number(j, where, "length");
  if (j.contains("rho")) m.rho = get_number(j, where, "rho");
  if (j.contains("mixing_seed")) m.mixing_seed = get_unsigned(j, where, "mixing_seed");
  if (j.contains("gamma_sign")) {
    const auto& s = j["gamma_sign"];
    if (s == 1 || s == "absorbing")
      m.gamma_sign = GainSign::absorbing;
    else if (s == -1 || s == "amplifying")
      m.gamma_sign = GainSign::amplifying;
    else
      throw ConfigError("model.gamma_sign: expected 1, -1, \"absorbing\" or \"amplifying\"");
  }
  return m;
}

PartnerSpec parse_partner(const json& j) {
  if (j.is_string()) {
    if (j == "pt") return {};
    throw ConfigError("partner: expected \"pt\" or {\"detuned\": {\"epsilon\": x}}");
  }
  expect_object(j, "partner");
  reject_unknown(j, "partner", {"detuned"});
  if (!j.contains("detuned")) throw ConfigError("partner.detuned: missing");
  const auto& d = j["detuned"];
  expect_object(d, "partner.detuned");
  reject_unknown(d, "partner.detuned", {"epsilon"});
  if (!d.contains("epsilon")) throw ConfigError("partner.detuned.epsilon: missing");
  return {PartnerSpec::Kind::detuned, get_number(d, "partner.detuned", "epsilon")};
}

GridSpec parse_grid(const json& j) {
  constexpr std::string_view where = "grid";
  expect_object(j, where);
  reject_unknown(j, where, {"e_min", "e_max", "n_points"});
  GridSpec g;
  if (j.contains("e_min")) g.e_min = get_number(j, where, "e_min");
  if (j.contains("e_max")) g.e_max = get_number(j, where, "e_max");
  if (j.contains("n_points")) g.n_points = get_unsigned(j, where, "n_points");
  return g;
}

OutputSpec parse_outputs(const json& j) {
  expect_object(j, "outputs");
  reject_unknown(j, "outputs", {"csv", "json"});
  OutputSpec o;
  for (const char* key : {"csv", "json"}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_string()) throw ConfigError(join("outputs", key) + ": expected a string");
    (std::string_view(key) == "csv" ? o.csv : o.json) = j[key].get<std::string>();
  }
  return o;
}

}  // namespace

void RunConfig::validate() const {
  try {
    model.validate();
  } catch (const InvalidParam& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma: must lie in (0, 1]");
  if (partner.kind == PartnerSpec::Kind::detuned && !(partner.epsilon > -1.0))
    throw ConfigError("partner.detuned.epsilon: must exceed -1");
  if (!(grid.e_min < grid.e_max)) throw ConfigError("grid.e_min: must be below grid.e_max");
  if (grid.n_points < 2) throw ConfigError("grid.n_points: must be at least 2");
}

RegionModel RunConfig::partner_model() const {
  return partner.kind == PartnerSpec::Kind::pt ? pt_partner(model)
                                               : detuned_partner(model, partner.epsilon);
}

RunConfig parse_config(const json& j) {
  expect_object(j, "");
  if (j.contains("config") && j.contains("results")) return parse_config(j["config"]);
  reject_unknown(j, "", {"model", "partner", "gamma", "grid", "outputs"});
  RunConfig c;
  try {
    if (j.contains("model")) c.model = parse_model(j["model"]);
    if (j.contains("partner")) c.partner = parse_partner(j["partner"]);
    if (j.contains("gamma")) c.gamma = get_number(j, "", "gamma");
    if (j.contains("grid")) c.grid = parse_grid(j["grid"]);
    if (j.contains("outputs")) c.outputs = parse_outputs(j["outputs"]);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse_config(j);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

json to_json(const RunConfig& c) {
  json model = {{"kind", std::string(to_string(c.model.kind))},
                {"n_modes", c.model.n_modes},
                {"n_re", c.model.n_re},
                {"kappa", c.model.kappa},
                {"length", c.model.length},
                {"rho", c.model.rho},
                {"mixing_seed", c.model.mixing_seed},
                {"gamma_sign", static_cast<int>(c.model.gamma_sign)}};
  json partner = c.partner.kind == PartnerSpec::Kind::pt
                     ? json("pt")
                     : json{{"detuned", {{"epsilon", c.partner.epsilon}}}};
  return {{"model", model},
          {"partner", partner},
          {"gamma", c.gamma},
          {"grid", {{"e_min", c.grid.e_min}, {"e_max", c.grid.e_max}, {"n_points", c.grid.n_points}}},
          {"outputs", {{"csv", c.outputs.csv}, {"json", c.outputs.json}}}};
}

}  // namespace ptnoise::cli
