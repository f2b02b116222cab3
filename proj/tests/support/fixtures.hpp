#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "hetnet/model.hpp"

namespace fixture {

inline const double kMacroDensity = 1.0 / (std::numbers::pi * 500.0 * 500.0);

// Macro + pico deployment used for the outage and throughput experiments.
inline hetnet::NetworkConfig macro_pico(double density_ratio, double pico_bias_db,
                                        double alpha = 3.5) {
  hetnet::NetworkConfig c;
  c.noise_power = hetnet::dbm_to_watts(-104.0);
  c.ref_pathloss = hetnet::db_to_linear(-38.5);
  c.tiers = {
      {hetnet::dbm_to_watts(53.0), kMacroDensity, alpha, 1.0},
      {hetnet::dbm_to_watts(33.0), density_ratio * kMacroDensity, alpha,
       hetnet::db_to_linear(pico_bias_db)},
  };
  return c;
}

// Interference limited, one exponent everywhere.
inline hetnet::NetworkConfig equal_alpha(double alpha, const std::vector<double>& biases) {
  hetnet::NetworkConfig c;
  const double powers[] = {40.0, 2.0, 0.2, 0.05};
  const double densities[] = {1e-6, 4e-6, 1.5e-5, 3e-5};
  for (std::size_t i = 0; i < biases.size(); ++i) {
    c.tiers.push_back({powers[i % 4], densities[i % 4], alpha, biases[i]});
  }
  return c;
}

inline hetnet::NetworkConfig three_tier_mixed() {
  hetnet::NetworkConfig c;
  c.noise_power = hetnet::dbm_to_watts(-104.0);
  c.ref_pathloss = hetnet::db_to_linear(-38.5);
  c.user_density = 2e-5;
  c.tiers = {
      {hetnet::dbm_to_watts(53.0), kMacroDensity, 3.5, 1.0},
      {hetnet::dbm_to_watts(33.0), 5.0 * kMacroDensity, 3.8, hetnet::db_to_linear(6.0)},
      {hetnet::dbm_to_watts(23.0), 20.0 * kMacroDensity, 4.0, hetnet::db_to_linear(10.0)},
  };
  return c;
}

}  // namespace fixture
