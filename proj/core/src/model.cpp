#include "hetnet/model.hpp"

#include <cmath>
#include <sstream>

namespace hetnet {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidExponent: return "InvalidExponent";
    case ErrorCode::kNonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::kEmptyTierList: return "EmptyTierList";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kAlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::kQuadratureFailure: return "QuadratureFailure";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kZeroUserDensity: return "ZeroUserDensity";
    case ErrorCode::kEmptyDeployment: return "EmptyDeployment";
    case ErrorCode::kEmptySampleSet: return "EmptySampleSet";
    case ErrorCode::kInvalidSettings: return "InvalidSettings";
    case ErrorCode::kConfigParseError: return "ConfigParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> tier)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      tier_(tier) {}

namespace {

void require_positive(double value, const char* what, std::size_t tier) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << "tier " << tier + 1 << ": " << what << " must be positive and finite (got "
       << value << ")";
    throw Error(ErrorCode::kNonPositiveParameter, os.str(), tier + 1);
  }
}

}  // namespace

const NetworkConfig& validate(const NetworkConfig& config) {
  if (config.tiers.empty()) {
    throw Error(ErrorCode::kEmptyTierList, "network has no tiers");
  }
  for (std::size_t j = 0; j < config.tiers.size(); ++j) {
    const auto& t = config.tiers[j];
    require_positive(t.power, "power", j);
    require_positive(t.density, "density", j);
    require_positive(t.bias, "bias", j);
    if (!(t.pathloss_exp > 2.0) || !std::isfinite(t.pathloss_exp)) {
      std::ostringstream os;
      os << "tier " << j + 1 << ": path-loss exponent must exceed 2 (got "
         << t.pathloss_exp << ")";
      throw Error(ErrorCode::kInvalidExponent, os.str(), j + 1);
    }
  }
  if (!(config.noise_power >= 0.0) || !std::isfinite(config.noise_power)) {
    throw Error(ErrorCode::kNonPositiveParameter, "noise power must be >= 0");
  }
  if (!(config.ref_pathloss > 0.0) || !std::isfinite(config.ref_pathloss)) {
    throw Error(ErrorCode::kNonPositiveParameter, "reference path loss must be > 0");
  }
  if (!(config.ref_distance > 0.0) || !std::isfinite(config.ref_distance)) {
    throw Error(ErrorCode::kNonPositiveParameter, "reference distance must be > 0");
  }
  if (!(config.user_density >= 0.0) || !std::isfinite(config.user_density)) {
    throw Error(ErrorCode::kNonPositiveParameter, "user density must be >= 0");
  }
  return config;
}

std::vector<TierRatios> ratios(const NetworkConfig& config,
                               std::size_t serving_tier) {
  if (serving_tier >= config.tiers.size()) {
    std::ostringstream os;
    os << "serving tier " << serving_tier + 1 << " outside 1.." << config.tiers.size();
    throw Error(ErrorCode::kIndexOutOfRange, os.str(), serving_tier + 1);
  }
  const auto& k = config.tiers[serving_tier];
  std::vector<TierRatios> out;
  out.reserve(config.tiers.size());
  for (std::size_t j = 0; j < config.tiers.size(); ++j) {
    if (j == serving_tier) {
      out.push_back({1.0, 1.0, 1.0});
      continue;
    }
    const auto& t = config.tiers[j];
    out.push_back({t.power / k.power, t.bias / k.bias,
                   t.pathloss_exp / k.pathloss_exp});
  }
  return out;
}

bool equal_exponents(const NetworkConfig& config) noexcept {
  for (const auto& t : config.tiers) {
    if (t.pathloss_exp != config.tiers.front().pathloss_exp) return false;
  }
  return true;
}

bool equal_biases(const NetworkConfig& config) noexcept {
  for (const auto& t : config.tiers) {
    if (t.bias != config.tiers.front().bias) return false;
  }
  return true;
}

double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) noexcept { return 10.0 * std::log10(watts) + 30.0; }
double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) noexcept { return 10.0 * std::log10(linear); }

}  // namespace hetnet
