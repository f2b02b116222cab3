#pragma once

// JSON network description. Boundary units:
//
//   {
//     "noise_dbm": -104,              // null => interference limited (W = 0)
//     "l0_db": -38.5,
//     "r0_m": 1,                      // optional, default 1
//     "user_density_per_km2": 100,    // optional, default 0
//     "tiers": [
//       {"power_dbm": 53, "density_per_km2": 1.2732, "alpha": 3.5, "bias_db": 0}
//     ]
//   }

#include <filesystem>
#include <string>
#include <string_view>

#include "hetnet/model.hpp"

namespace hetnet {

/// Throws Error(kConfigParseError) on malformed input, and the usual
/// validation errors for out-of-range values.
NetworkConfig parse_config(std::string_view json_text);
NetworkConfig load_config(const std::filesystem::path& path);

std::string dump_config(const NetworkConfig& config);

}  // namespace hetnet
