#pragma once

// Network description shared by every other module. All quantities are
// stored in linear SI units; dB/dBm only appear in the conversion helpers
// and in config_io.

#include <cstddef>
#include <span>
#include <vector>

#include "hetnet/error.hpp"

namespace hetnet {

/// One class of base stations. Tier indices are 0-based in the C++ API and
/// 1-based in everything printed (errors, CSV, CLI).
struct TierParams {
  double power = 1.0;         ///< transmit power, W
  double density = 1e-6;      ///< BS per m^2
  double pathloss_exp = 4.0;  ///< alpha, strictly > 2
  double bias = 1.0;          ///< linear association bias
};

struct NetworkConfig {
  std::vector<TierParams> tiers;
  double noise_power = 0.0;   ///< W (0 = interference limited)
  double ref_pathloss = 1.0;  ///< L0, linear gain at ref_distance
  double ref_distance = 1.0;  ///< r0, m
  double user_density = 0.0;  ///< users per m^2

  std::size_t num_tiers() const noexcept { return tiers.size(); }
};

/// Ratios of tier j to a fixed serving tier k.
struct TierRatios {
  double p_hat = 1.0;
  double b_hat = 1.0;
  double a_hat = 1.0;
};

/// Returns `config` unchanged if every invariant holds, otherwise throws
/// Error with kInvalidExponent, kNonPositiveParameter or kEmptyTierList.
const NetworkConfig& validate(const NetworkConfig& config);

std::vector<TierRatios> ratios(const NetworkConfig& config,
                               std::size_t serving_tier);

/// True when every tier has the bitwise-same path-loss exponent.
bool equal_exponents(const NetworkConfig& config) noexcept;
/// True when every tier has the bitwise-same bias.
bool equal_biases(const NetworkConfig& config) noexcept;

double dbm_to_watts(double dbm) noexcept;
double watts_to_dbm(double watts) noexcept;
double db_to_linear(double db) noexcept;
double linear_to_db(double linear) noexcept;

constexpr double per_km2_to_per_m2(double v) noexcept { return v / 1e6; }
constexpr double per_m2_to_per_km2(double v) noexcept { return v * 1e6; }

}  // namespace hetnet
