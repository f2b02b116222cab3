#include "hetnet/config_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hetnet {

namespace {

using nlohmann::json;

double required_number(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::kConfigParseError, where + ": missing key '" + key + "'");
  }
  if (!it->is_number()) {
    throw Error(ErrorCode::kConfigParseError, where + ": '" + key + "' must be a number");
  }
  return it->get<double>();
}

double optional_number(const json& obj, const char* key, double fallback,
                       const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) {
    throw Error(ErrorCode::kConfigParseError, where + ": '" + key + "' must be a number");
  }
  return it->get<double>();
}

}  // namespace

NetworkConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigParseError, e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kConfigParseError, "top level must be an object");
  }

  NetworkConfig cfg;
  auto noise = doc.find("noise_dbm");
  if (noise == doc.end()) {
    throw Error(ErrorCode::kConfigParseError, "missing key 'noise_dbm' (use null for W=0)");
  }
  if (noise->is_null()) {
    cfg.noise_power = 0.0;
  } else if (noise->is_number()) {
    cfg.noise_power = dbm_to_watts(noise->get<double>());
  } else {
    throw Error(ErrorCode::kConfigParseError, "'noise_dbm' must be a number or null");
  }
  cfg.ref_pathloss = db_to_linear(required_number(doc, "l0_db", "config"));
  cfg.ref_distance = optional_number(doc, "r0_m", 1.0, "config");
  cfg.user_density =
      per_km2_to_per_m2(optional_number(doc, "user_density_per_km2", 0.0, "config"));

  auto tiers = doc.find("tiers");
  if (tiers == doc.end() || !tiers->is_array()) {
    throw Error(ErrorCode::kConfigParseError, "'tiers' must be an array");
  }
  if (tiers->empty()) {
    throw Error(ErrorCode::kConfigParseError, "'tiers' is empty");
  }
  for (std::size_t j = 0; j < tiers->size(); ++j) {
    const json& t = (*tiers)[j];
    const std::string where = "tier " + std::to_string(j + 1);
    if (!t.is_object()) {
      throw Error(ErrorCode::kConfigParseError, where + " must be an object", j + 1);
    }
    TierParams p;
    p.power = dbm_to_watts(required_number(t, "power_dbm", where));
    p.density = per_km2_to_per_m2(required_number(t, "density_per_km2", where));
    p.pathloss_exp = required_number(t, "alpha", where);
    p.bias = db_to_linear(optional_number(t, "bias_db", 0.0, where));
    cfg.tiers.push_back(p);
  }
  validate(cfg);
  return cfg;
}

NetworkConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kConfigParseError, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const NetworkConfig& config) {
  json doc;
  doc["noise_dbm"] = config.noise_power > 0.0 ? json(watts_to_dbm(config.noise_power))
                                               : json(nullptr);
  doc["l0_db"] = linear_to_db(config.ref_pathloss);
  doc["r0_m"] = config.ref_distance;
  doc["user_density_per_km2"] = per_m2_to_per_km2(config.user_density);
  json tiers = json::array();
  for (const auto& t : config.tiers) {
    tiers.push_back({{"power_dbm", watts_to_dbm(t.power)},
                     {"density_per_km2", per_m2_to_per_km2(t.density)},
                     {"alpha", t.pathloss_exp},
                     {"bias_db", linear_to_db(t.bias)}});
  }
  doc["tiers"] = std::move(tiers);
  return doc.dump(2);
}

}  // namespace hetnet
