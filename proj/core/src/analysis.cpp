#include "hetnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hetnet/error.hpp"
#include "hetnet/specfun.hpp"

namespace hetnet {

namespace {

constexpr double kPi = std::numbers::pi;

// Everything about the network as seen from serving tier k, with lengths
// measured in units of r0 (so densities are per r0^2).
struct ServingView {
  std::size_t k = 0;
  double lambda_k = 0.0;
  double alpha_k = 0.0;
  double noise_coef = 0.0;             // W / (P_k L0); SNR^-1 = noise_coef * x^alpha_k
  std::vector<double> lambda;          // lambda_j r0^2
  std::vector<double> alpha;
  std::vector<double> b_hat;
  std::vector<double> p_hat_pow;       // P_hat_j^(2/alpha_j)
  std::vector<double> assoc_coef;      // lambda_j (P_hat_j B_hat_j)^(2/alpha_j)
  std::vector<double> expo;            // 2 / alpha_hat_j = 2 alpha_k / alpha_j
};

ServingView make_view(const NetworkConfig& config, std::size_t k) {
  validate(config);
  const auto r = ratios(config, k);
  const double r0sq = config.ref_distance * config.ref_distance;
  const auto& serving = config.tiers[k];
  ServingView v;
  v.k = k;
  v.lambda_k = serving.density * r0sq;
  v.alpha_k = serving.pathloss_exp;
  v.noise_coef = config.noise_power / (serving.power * config.ref_pathloss);
  for (std::size_t j = 0; j < config.tiers.size(); ++j) {
    const auto& t = config.tiers[j];
    const double two_over = 2.0 / t.pathloss_exp;
    v.lambda.push_back(t.density * r0sq);
    v.alpha.push_back(t.pathloss_exp);
    v.b_hat.push_back(r[j].b_hat);
    v.p_hat_pow.push_back(j == k ? 1.0 : std::pow(r[j].p_hat, two_over));
    v.assoc_coef.push_back(j == k ? v.lambda.back()
                                  : v.lambda.back() *
                                        std::pow(r[j].p_hat * r[j].b_hat, two_over));
    v.expo.push_back(j == k ? 2.0 : 2.0 / r[j].a_hat);
  }
  return v;
}

// pi * sum_j c_j x^e_j + noise * x^alpha_k
double exponent(const std::vector<double>& coef, const std::vector<double>& expo,
                double noise, double alpha_k, double x) {
  double s = 0.0;
  for (std::size_t j = 0; j < coef.size(); ++j) s += coef[j] * std::pow(x, expo[j]);
  s *= kPi;
  if (noise > 0.0) s += noise * std::pow(x, alpha_k);
  return s;
}

// Length at which exponent() reaches 1; first panel width for x-integrals.
double length_scale(const std::vector<double>& coef, const std::vector<double>& expo,
                    double noise, double alpha_k) {
  auto g = [&](double s) { return exponent(coef, expo, noise, alpha_k, s); };
  double lo = 1.0;
  double hi = 1.0;
  if (g(1.0) < 1.0) {
    while (g(hi) < 1.0 && hi < 1e300) hi *= 2.0;
    lo = hi * 0.5;
  } else {
    while (g(lo) > 1.0 && lo > 1e-300) lo *= 0.5;
    hi = lo * 2.0;
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = std::sqrt(lo * hi);
    (g(mid) < 1.0 ? lo : hi) = mid;
  }
  return hi;
}

// Int_0^inf x exp(-exponent(x)) dx
double gaussian_type_integral(const std::vector<double>& coef,
                              const std::vector<double>& expo, double noise,
                              double alpha_k, const QuadratureSettings& q,
                              double lower = 0.0) {
  const double scale = length_scale(coef, expo, noise, alpha_k);
  return integrate_semi_infinite(
             [&](double x) {
               return x * std::exp(-exponent(coef, expo, noise, alpha_k, x));
             },
             q, scale, lower)
      .value;
}

double assoc_from_view(const ServingView& v, bool equal_alpha,
                       const QuadratureSettings& q) {
  if (equal_alpha) {
    double denom = 0.0;
    for (double c : v.assoc_coef) denom += c;
    return v.lambda_k / denom;
  }
  return 2.0 * kPi * v.lambda_k *
         gaussian_type_integral(v.assoc_coef, v.expo, 0.0, v.alpha_k, q);
}

// C_j(tau) = lambda_j P_hat_j^(2/alpha_j) (B_hat_j^(2/alpha_j) + Z(tau, alpha_j, B_hat_j))
std::vector<double> interference_coef(const ServingView& v, double tau,
                                      const QuadratureSettings& q) {
  std::vector<double> c(v.lambda.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    c[j] = v.lambda[j] * v.p_hat_pow[j] *
           (std::pow(v.b_hat[j], 2.0 / v.alpha[j]) + z_kernel(tau, v.alpha[j], v.b_hat[j], q));
  }
  return c;
}

// 2 pi lambda_k Int x exp(-tau/SNR - pi sum C_j x^e_j) dx  (success probability
// times A_k)
double success_unnormalised(const ServingView& v, double tau, const QuadratureSettings& q) {
  const auto c = interference_coef(v, tau, q);
  return 2.0 * kPi * v.lambda_k *
         gaussian_type_integral(c, v.expo, tau * v.noise_coef, v.alpha_k, q);
}

void check_tau(double tau) {
  if (!(tau >= 0.0) || std::isnan(tau)) {
    throw Error(ErrorCode::kInvalidArgument, "SINR threshold must be >= 0");
  }
}

// Inner integral of the rate double integral at a given t, times 2 pi lambda_k.
double rate_integrand_unnormalised(const ServingView& v, double t, bool collapse,
                                   const QuadratureSettings& q_inner) {
  const double tau = std::expm1(t);
  const auto c = interference_coef(v, tau, q_inner);
  if (collapse) {
    double s = 0.0;
    for (double cj : c) s += cj;
    return v.lambda_k / s;
  }
  return 2.0 * kPi * v.lambda_k *
         gaussian_type_integral(c, v.expo, tau * v.noise_coef, v.alpha_k, q_inner);
}

double rate_unnormalised(const NetworkConfig& config, std::size_t k,
                         const QuadratureSettings& q, RateMethod method) {
  const ServingView v = make_view(config, k);
  const bool collapse = method == RateMethod::kAuto && config.noise_power == 0.0 &&
                        equal_exponents(config);
  const QuadratureSettings inner = q.tightened(10.0);
  return integrate_semi_infinite(
             [&](double t) { return rate_integrand_unnormalised(v, t, collapse, inner); }, q,
             1.0)
      .value;
}

}  // namespace

double association_probability(const NetworkConfig& config, std::size_t k,
                               const QuadratureSettings& q) {
  return assoc_from_view(make_view(config, k), equal_exponents(config), q);
}

PerTierMetric association_probabilities(const NetworkConfig& config,
                                        const QuadratureSettings& q) {
  validate(config);
  PerTierMetric m;
  m.network = 0.0;
  for (std::size_t k = 0; k < config.num_tiers(); ++k) {
    m.per_tier.push_back(association_probability(config, k, q));
    m.network += m.per_tier.back();
  }
  return m;
}

double cell_load(const NetworkConfig& config, std::size_t k, const QuadratureSettings& q) {
  const double a = association_probability(config, k, q);
  return a * config.user_density / config.tiers[k].density;
}

PerTierMetric cell_loads(const NetworkConfig& config, const QuadratureSettings& q) {
  validate(config);
  PerTierMetric m;
  double total_density = 0.0;
  for (std::size_t k = 0; k < config.num_tiers(); ++k) {
    m.per_tier.push_back(cell_load(config, k, q));
    total_density += config.tiers[k].density;
  }
  m.network = config.user_density / total_density;
  return m;
}

double serving_distance_pdf(const NetworkConfig& config, std::size_t k, double x,
                            const QuadratureSettings& q) {
  if (!(x >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "distance must be >= 0");
  const ServingView v = make_view(config, k);
  const double a = assoc_from_view(v, equal_exponents(config), q);
  const double xs = x / config.ref_distance;
  const double density_scaled = 2.0 * kPi * v.lambda_k / a * xs *
                                std::exp(-exponent(v.assoc_coef, v.expo, 0.0, v.alpha_k, xs));
  return density_scaled / config.ref_distance;
}

double serving_distance_cdf(const NetworkConfig& config, std::size_t k, double x,
                            const QuadratureSettings& q) {
  if (!(x >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "distance must be >= 0");
  const ServingView v = make_view(config, k);
  const double a = assoc_from_view(v, equal_exponents(config), q);
  const double xs = x / config.ref_distance;
  if (equal_exponents(config)) {
    double s = 0.0;
    for (double c : v.assoc_coef) s += c;
    return -std::expm1(-kPi * s * xs * xs);
  }
  const double tail =
      2.0 * kPi * v.lambda_k *
      gaussian_type_integral(v.assoc_coef, v.expo, 0.0, v.alpha_k, q, xs) / a;
  return std::clamp(1.0 - tail, 0.0, 1.0);
}

double outage_tier(const NetworkConfig& config, std::size_t k, double tau,
                   const QuadratureSettings& q) {
  check_tau(tau);
  const ServingView v = make_view(config, k);
  if (tau == 0.0) return 0.0;
  const double a = assoc_from_view(v, equal_exponents(config), q);
  return 1.0 - success_unnormalised(v, tau, q) / a;
}

double outage_network(const NetworkConfig& config, double tau, const QuadratureSettings& q) {
  return outage(config, tau, q).network;
}

double outage_network_direct(const NetworkConfig& config, double tau,
                             const QuadratureSettings& q) {
  check_tau(tau);
  validate(config);
  if (tau == 0.0) return 0.0;
  double success = 0.0;
  for (std::size_t k = 0; k < config.num_tiers(); ++k) {
    success += success_unnormalised(make_view(config, k), tau, q);
  }
  return 1.0 - success;
}

PerTierMetric outage(const NetworkConfig& config, double tau, const QuadratureSettings& q) {
  check_tau(tau);
  validate(config);
  PerTierMetric m;
  m.network = 0.0;
  for (std::size_t k = 0; k < config.num_tiers(); ++k) {
    const double a = association_probability(config, k, q);
    m.per_tier.push_back(outage_tier(config, k, tau, q));
    m.network += a * m.per_tier.back();
  }
  return m;
}

Corollary applicable_corollary(const NetworkConfig& config) noexcept {
  if (config.tiers.empty() || config.noise_power != 0.0 || !equal_exponents(config)) {
    return Corollary::kNone;
  }
  const bool alpha4 = config.tiers.front().pathloss_exp == 4.0;
  const bool unbiased = equal_biases(config);
  if (alpha4) return unbiased ? Corollary::kAlpha4Unbiased : Corollary::kAlpha4;
  return unbiased ? Corollary::kUnbiased : Corollary::kEqualExponent;
}

ClosedFormOutage outage_closed_form(const NetworkConfig& config, double tau,
                                    const QuadratureSettings& q) {
  check_tau(tau);
  validate(config);
  ClosedFormOutage out;
  out.corollary = applicable_corollary(config);
  const std::size_t n = config.num_tiers();
  switch (out.corollary) {
    case Corollary::kNone:
      throw Error(ErrorCode::kNotApplicable,
                  "closed forms need W = 0 and identical path-loss exponents");
    case Corollary::kUnbiased:
    case Corollary::kAlpha4Unbiased: {
      const double z = out.corollary == Corollary::kAlpha4Unbiased
                           ? z_kernel_alpha4(tau, 1.0)
                           : z_kernel(tau, config.tiers.front().pathloss_exp, 1.0, q);
      const double o = 1.0 - 1.0 / (1.0 + z);
      out.outage.per_tier.assign(n, o);
      out.outage.network = o;
      return out;
    }
    case Corollary::kEqualExponent:
    case Corollary::kAlpha4:
      break;
  }

  // Biased, equal alpha: per tier 1 - sum_j lambda_j (P_hat B_hat)^(2/a) /
  // sum_j lambda_j P_hat^(2/a) [B_hat^(2/a) + Z(tau, a, B_hat_j)], and the
  // network value 1 - sum_k 1 / sum_j (lambda_j/lambda_k) P_hat^(2/a) [...].
  const double alpha = config.tiers.front().pathloss_exp;
  const double two_over = 2.0 / alpha;
  out.outage.network = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& sk = config.tiers[k];
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& tj = config.tiers[j];
      const double p_hat = tj.power / sk.power;
      const double b_hat = tj.bias / sk.bias;
      const double z = out.corollary == Corollary::kAlpha4 ? z_kernel_alpha4(tau, b_hat)
                                                           : z_kernel(tau, alpha, b_hat, q);
      num += tj.density * std::pow(p_hat * b_hat, two_over);
      den += tj.density * std::pow(p_hat, two_over) * (std::pow(b_hat, two_over) + z);
    }
    out.outage.per_tier.push_back(1.0 - num / den);
    out.outage.network -= sk.density / den;
  }
  return out;
}

double ergodic_rate_tier(const NetworkConfig& config, std::size_t k,
                         const QuadratureSettings& q, RateMethod method) {
  const double a = association_probability(config, k, q);
  return rate_unnormalised(config, k, q, method) / a;
}

double ergodic_rate_network(const NetworkConfig& config, const QuadratureSettings& q,
                            RateMethod method) {
  return ergodic_rates(config, q, method).network;
}

double ergodic_rate_network_direct(const NetworkConfig& config, const QuadratureSettings& q) {
  validate(config);
  double sum = 0.0;
  for (std::size_t k = 0; k < config.num_tiers(); ++k) {
    sum += rate_unnormalised(config, k, q, RateMethod::kNested);
  }
  return sum;
}

PerTierMetric ergodic_rates(const NetworkConfig& config, const QuadratureSettings& q,
                            RateMethod method) {
  validate(config);
  PerTierMetric m;
  m.network = 0.0;
  for (std::size_t k = 0; k < config.num_tiers(); ++k) {
    const double a = association_probability(config, k, q);
    m.per_tier.push_back(rate_unnormalised(config, k, q, method) / a);
    m.network += a * m.per_tier.back();
  }
  return m;
}

double ergodic_rate_unbiased(double alpha, const QuadratureSettings& q) {
  const QuadratureSettings inner = q.tightened(10.0);
  return integrate_semi_infinite(
             [&](double t) { return 1.0 / (1.0 + z_kernel(std::expm1(t), alpha, 1.0, inner)); },
             q, 1.0)
      .value;
}

double avg_user_throughput(const NetworkConfig& config, std::size_t k,
                           const QuadratureSettings& q) {
  validate(config);
  if (config.user_density == 0.0) {
    throw Error(ErrorCode::kZeroUserDensity, "average user throughput needs user density > 0");
  }
  return ergodic_rate_tier(config, k, q) / cell_load(config, k, q);
}

MinThroughput min_avg_user_throughput(const NetworkConfig& config,
                                      const QuadratureSettings& q) {
  validate(config);
  MinThroughput out;
  for (std::size_t k = 0; k < config.num_tiers(); ++k) {
    out.per_tier.push_back(avg_user_throughput(config, k, q));
  }
  out.value = out.per_tier.front();
  for (std::size_t k = 1; k < out.per_tier.size(); ++k) {
    if (out.per_tier[k] < out.value) {
      out.value = out.per_tier[k];
      out.tier = k;
    }
  }
  for (std::size_t k = 0; k < out.per_tier.size(); ++k) {
    if (out.per_tier[k] == out.value) out.ties.push_back(k);
  }
  return out;
}

}  // namespace hetnet
