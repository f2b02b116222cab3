#pragma once

// Analytic downlink metrics for a K-tier network with biased max-BRP
// association, Rayleigh fading and PPP base stations: association
// probability, load, serving-distance law, outage (SINR CDF), ergodic rate
// and per-user throughput.
//
// Tier arguments are 0-based. Rates are in nats/s/Hz.

#include <cstddef>
#include <limits>
#include <vector>

#include "hetnet/model.hpp"
#include "hetnet/quadrature.hpp"

namespace hetnet {

struct PerTierMetric {
  std::vector<double> per_tier;
  double network = std::numeric_limits<double>::quiet_NaN();
};

double association_probability(const NetworkConfig& config, std::size_t k,
                               const QuadratureSettings& q = {});
/// network = sum over tiers (1 up to quadrature error).
PerTierMetric association_probabilities(const NetworkConfig& config,
                                        const QuadratureSettings& q = {});

/// Mean users per tier-k BS, A_k * user_density / density_k.
double cell_load(const NetworkConfig& config, std::size_t k,
                 const QuadratureSettings& q = {});
/// network = user_density / total BS density.
PerTierMetric cell_loads(const NetworkConfig& config, const QuadratureSettings& q = {});

/// Density (per metre) of the distance to the serving BS given tier k serves.
double serving_distance_pdf(const NetworkConfig& config, std::size_t k, double x,
                            const QuadratureSettings& q = {});
double serving_distance_cdf(const NetworkConfig& config, std::size_t k, double x,
                            const QuadratureSettings& q = {});

/// P[SINR <= tau | served by tier k].
double outage_tier(const NetworkConfig& config, std::size_t k, double tau,
                   const QuadratureSettings& q = {});
/// sum_k O_k A_k.
double outage_network(const NetworkConfig& config, double tau,
                      const QuadratureSettings& q = {});
/// 1 - sum_k 2 pi lambda_k Int(...), without dividing through by A_k.
double outage_network_direct(const NetworkConfig& config, double tau,
                             const QuadratureSettings& q = {});
PerTierMetric outage(const NetworkConfig& config, double tau,
                     const QuadratureSettings& q = {});

/// Closed forms available in the interference-limited, equal-exponent regime.
enum class Corollary {
  kNone,
  kEqualExponent,    ///< W = 0, equal alpha, arbitrary bias
  kUnbiased,         ///< ... and all biases equal
  kAlpha4,           ///< ... equal alpha = 4, arbitrary bias (arctan form)
  kAlpha4Unbiased,   ///< ... alpha = 4 and all biases equal
};

/// Most specific corollary whose preconditions hold exactly (W == 0,
/// bitwise-equal exponents and biases).
Corollary applicable_corollary(const NetworkConfig& config) noexcept;

struct ClosedFormOutage {
  Corollary corollary = Corollary::kNone;
  PerTierMetric outage;
};

/// Throws Error(kNotApplicable) when applicable_corollary() is kNone.
ClosedFormOutage outage_closed_form(const NetworkConfig& config, double tau,
                                    const QuadratureSettings& q = {});

enum class RateMethod {
  kAuto,    ///< collapse the inner integral analytically when W = 0 and alphas are equal
  kNested,  ///< always evaluate the full double integral
};

double ergodic_rate_tier(const NetworkConfig& config, std::size_t k,
                         const QuadratureSettings& q = {},
                         RateMethod method = RateMethod::kAuto);
/// sum_k R_k A_k.
double ergodic_rate_network(const NetworkConfig& config, const QuadratureSettings& q = {},
                            RateMethod method = RateMethod::kAuto);
/// sum_k 2 pi lambda_k Int Int (...), the un-normalised form.
double ergodic_rate_network_direct(const NetworkConfig& config,
                                   const QuadratureSettings& q = {});
PerTierMetric ergodic_rates(const NetworkConfig& config, const QuadratureSettings& q = {},
                            RateMethod method = RateMethod::kAuto);

/// Int_0^inf dt / (1 + Z(e^t - 1, alpha, 1)): the rate of every tier when
/// W = 0, exponents are equal and association is unbiased.
double ergodic_rate_unbiased(double alpha, const QuadratureSettings& q = {});

/// R_k / N_k. Throws Error(kZeroUserDensity) if user_density == 0.
double avg_user_throughput(const NetworkConfig& config, std::size_t k,
                           const QuadratureSettings& q = {});

struct MinThroughput {
  double value = 0.0;
  std::size_t tier = 0;             ///< lowest index attaining the minimum
  std::vector<std::size_t> ties;    ///< every index attaining it
  std::vector<double> per_tier;     ///< all R_k / N_k
};

MinThroughput min_avg_user_throughput(const NetworkConfig& config,
                                      const QuadratureSettings& q = {});

}  // namespace hetnet
