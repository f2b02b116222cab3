#pragma once

// Poisson-point-process simulator used as an independent oracle for the
// analytic module. The typical user sits at the centre of a disc of radius
// window_radius; every tier is an independent PPP on that disc.
//
// Base-station radii are generated as arrival "times" of a unit-rate Poisson
// process in area, r_i = sqrt(Gamma_i / (pi lambda)), so each tier's list is
// sorted by distance and the deployment in a larger window extends the one in
// a smaller window with the same seed.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hetnet/model.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

struct SimSettings {
  NetworkConfig config;
  double window_radius = 0.0;  ///< m; 0 selects default_window_radius()
  std::uint64_t replications = 100000;
  std::uint32_t fading_draws_per_realization = 1;
  std::uint64_t master_seed = 1;
  unsigned threads = 1;                ///< 0 = hardware concurrency
  std::uint64_t load_replications = 0; ///< realizations that also drop a user PPP
  double min_mean_points = 500.0;      ///< lower bound on lambda_min * pi * R^2
  double max_tail_ratio = 1e-2;        ///< bound on out-of-window / in-window mean interference
};

/// Mean interference from beyond `radius` divided by mean interference from
/// the annulus [rho, radius], rho = 1 / sqrt(pi * total density).
double tail_interference_ratio(const NetworkConfig& config, double radius);

/// Smallest radius meeting both window rules.
double default_window_radius(const NetworkConfig& config, double min_mean_points = 500.0,
                             double max_tail_ratio = 1e-2);

/// Fills in a default window radius if none was given.
SimSettings resolve(SimSettings settings);

/// Throws Error(kInvalidSettings) on any broken invariant, including a window
/// that violates either sizing rule.
void validate(const SimSettings& settings);

struct BaseStation {
  double distance = 0.0;  ///< m from the typical user
  double angle = 0.0;     ///< rad
};

struct Deployment {
  double window_radius = 0.0;
  /// tiers[j] sorted by ascending distance.
  std::vector<std::vector<BaseStation>> tiers;
};

/// Sorts each tier so the result satisfies the Deployment invariant.
Deployment make_deployment(double window_radius,
                           std::vector<std::vector<BaseStation>> tiers);

Deployment sample_deployment(const SimSettings& settings, std::uint64_t replication);

struct Association {
  std::size_t tier = 0;
  std::size_t index = 0;  ///< position within deployment.tiers[tier]
  double distance = 0.0;
};

/// Max biased received power P_j L0 (d/r0)^-alpha_j B_j over all BSs; ties go
/// to the lower tier, then the nearer BS. Throws Error(kEmptyDeployment).
Association associate(const Deployment& deployment, const NetworkConfig& config);

/// True if, for every tier j, no BS lies strictly inside the exclusion
/// radius (P_hat_j B_hat_j)^(1/alpha_j) x^(alpha_hat_j) implied by the association.
bool respects_exclusion_discs(const Deployment& deployment, const Association& association,
                              const NetworkConfig& config);

/// One fading stream per tier for (replication, draw).
std::vector<RandomStream> fading_streams(std::uint64_t seed, std::uint64_t replication,
                                         std::uint32_t draw, std::size_t num_tiers);

/// SINR with unit-mean exponential fading on every link; the i-th BS of tier j
/// uses the i-th draw of tier_streams[j]. The serving BS is excluded from the
/// interference sum.
double draw_sinr(const Deployment& deployment, const Association& association,
                 const NetworkConfig& config, std::span<RandomStream> tier_streams);

struct SinrSample {
  std::uint32_t tier = 0;  ///< 0-based
  double sinr = 0.0;
  double distance = 0.0;
  double rate = 0.0;       ///< ln(1 + sinr), nats
};

struct EmpiricalSinr {
  std::vector<SinrSample> samples;
  std::uint64_t seed = 0;
  std::uint64_t replications = 0;
  std::uint32_t draws_per_realization = 1;
};

struct LoadEstimate {
  std::uint64_t replications = 0;
  std::vector<double> users;      ///< users attached to interior BSs, per tier
  std::vector<double> stations;   ///< interior BSs, per tier
  std::vector<double> mean_load;  ///< users / stations
};

struct CampaignResult {
  EmpiricalSinr sinr;
  double window_radius = 0.0;
  std::vector<std::uint64_t> association_count;  ///< per tier, one per realization
  std::vector<double> association_fraction;
  LoadEstimate load;
};

/// replications x draws samples in (replication, draw) order. Identical for
/// any thread count.
CampaignResult run_campaign(const SimSettings& settings);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t count = 0;  ///< samples behind the estimate
};

struct EmpiricalCdf {
  std::vector<double> tau;
  std::vector<std::vector<Estimate>> per_tier;  ///< [tier][grid point]
  std::vector<Estimate> network;
};

/// Fraction of samples with SINR <= tau, overall and per serving tier, with
/// binomial standard errors. Throws Error(kEmptySampleSet).
EmpiricalCdf empirical_cdf(const EmpiricalSinr& sinr, std::span<const double> tau_grid,
                           std::size_t num_tiers);

struct EmpiricalRate {
  std::vector<Estimate> per_tier;
  Estimate network;
};

EmpiricalRate empirical_rate(const EmpiricalSinr& sinr, std::size_t num_tiers);

/// Columnar dump: tier (1-based), sinr, distance (m), rate (nats).
void write_samples_csv(std::ostream& out, const EmpiricalSinr& sinr);

}  // namespace hetnet
