#include "hetnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hetnet/csv.hpp"
#include "hetnet/error.hpp"

namespace hetnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInteriorFraction = 0.9;

[[noreturn]] void bad_settings(const std::string& what) {
  throw Error(ErrorCode::kInvalidSettings, what);
}

double min_density(const NetworkConfig& config) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : config.tiers) m = std::min(m, t.density);
  return m;
}

// Nearest-neighbour lookup for one tier's BSs on a uniform grid.
class NearestGrid {
 public:
  NearestGrid(const std::vector<BaseStation>& bs, double radius, double density)
      : radius_(radius) {
    const double spacing = 1.0 / std::sqrt(density);
    cells_ = static_cast<int>(std::clamp(2.0 * radius / spacing, 1.0, 1024.0));
    cell_ = 2.0 * radius / cells_;
    buckets_.assign(static_cast<std::size_t>(cells_) * cells_, {});
    xs_.reserve(bs.size());
    ys_.reserve(bs.size());
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const double x = bs[i].distance * std::cos(bs[i].angle);
      const double y = bs[i].distance * std::sin(bs[i].angle);
      xs_.push_back(x);
      ys_.push_back(y);
      buckets_[bucket(cell_of(x), cell_of(y))].push_back(i);
    }
  }

  bool empty() const { return xs_.empty(); }

  // Index and squared distance of the nearest BS to (x, y).
  std::pair<std::size_t, double> nearest(double x, double y) const {
    const int cx = cell_of(x);
    const int cy = cell_of(y);
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int ring = 0; ring <= cells_; ++ring) {
      for (int dx = -ring; dx <= ring; ++dx) {
        for (int dy = -ring; dy <= ring; ++dy) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          const int gx = cx + dx;
          const int gy = cy + dy;
          if (gx < 0 || gy < 0 || gx >= cells_ || gy >= cells_) continue;
          for (std::size_t i : buckets_[bucket(gx, gy)]) {
            const double ex = xs_[i] - x;
            const double ey = ys_[i] - y;
            const double d2 = ex * ex + ey * ey;
            if (d2 < best_d2 || (d2 == best_d2 && i < best)) {
              best_d2 = d2;
              best = i;
            }
          }
        }
      }
      const double reach = ring * cell_;
      if (best_d2 <= reach * reach) break;
    }
    return {best, best_d2};
  }

 private:
  int cell_of(double v) const {
    return std::clamp(static_cast<int>((v + radius_) / cell_), 0, cells_ - 1);
  }
  std::size_t bucket(int gx, int gy) const {
    return static_cast<std::size_t>(gx) * cells_ + gy;
  }

  double radius_;
  int cells_ = 1;
  double cell_ = 1.0;
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<std::vector<std::size_t>> buckets_;
};

struct LoadCounts {
  std::vector<std::uint64_t> users;
  std::vector<std::uint64_t> stations;
};

LoadCounts measure_load(const Deployment& dep, const SimSettings& s, std::uint64_t rep) {
  const auto& cfg = s.config;
  const std::size_t K = cfg.num_tiers();
  const double R = dep.window_radius;
  LoadCounts out{std::vector<std::uint64_t>(K, 0), std::vector<std::uint64_t>(K, 0)};
  const double interior = kInteriorFraction * R;
  for (std::size_t j = 0; j < K; ++j) {
    const auto& bs = dep.tiers[j];
    out.stations[j] = static_cast<std::uint64_t>(
        std::upper_bound(bs.begin(), bs.end(), interior,
                         [](double v, const BaseStation& b) { return v < b.distance; }) -
        bs.begin());
  }
  if (cfg.user_density <= 0.0) return out;

  std::vector<NearestGrid> grids;
  grids.reserve(K);
  for (std::size_t j = 0; j < K; ++j) grids.emplace_back(dep.tiers[j], R, cfg.tiers[j].density);

  RandomStream arrivals(s.master_seed, static_cast<std::uint32_t>(rep),
                        StreamPurpose::kUserCount, 0);
  RandomStream angles(s.master_seed, static_cast<std::uint32_t>(rep),
                      StreamPurpose::kUserPosition, 0);
  const double rate = kPi * cfg.user_density;
  double gamma = 0.0;
  for (;;) {
    gamma += arrivals.exponential();
    const double r = std::sqrt(gamma / rate);
    if (r > R) break;
    const double theta = 2.0 * kPi * angles.uniform();
    const double ux = r * std::cos(theta);
    const double uy = r * std::sin(theta);
    double best = -1.0;
    std::size_t best_tier = 0;
    std::size_t best_index = 0;
    for (std::size_t j = 0; j < K; ++j) {
      if (grids[j].empty()) continue;
      const auto [idx, d2] = grids[j].nearest(ux, uy);
      const auto& t = cfg.tiers[j];
      const double brp = t.power * cfg.ref_pathloss * t.bias *
                         std::pow(std::sqrt(d2) / cfg.ref_distance, -t.pathloss_exp);
      if (brp > best) {
        best = brp;
        best_tier = j;
        best_index = idx;
      }
    }
    if (best >= 0.0 && dep.tiers[best_tier][best_index].distance <= interior) {
      ++out.users[best_tier];
    }
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

double tail_interference_ratio(const NetworkConfig& config, double radius) {
  validate(config);
  double total_density = 0.0;
  for (const auto& t : config.tiers) total_density += t.density;
  const double rho = 1.0 / std::sqrt(kPi * total_density);
  if (!(radius > rho)) return std::numeric_limits<double>::infinity();
  double tail = 0.0;
  double inside = 0.0;
  for (const auto& t : config.tiers) {
    const double a = t.pathloss_exp;
    const double w = t.power * std::pow(config.ref_distance, a) * t.density / (a - 2.0);
    tail += w * std::pow(radius, 2.0 - a);
    inside += w * (std::pow(rho, 2.0 - a) - std::pow(radius, 2.0 - a));
  }
  return tail / inside;
}

double default_window_radius(const NetworkConfig& config, double min_mean_points,
                             double max_tail_ratio) {
  validate(config);
  const double by_count = std::sqrt(min_mean_points / (kPi * min_density(config)));
  if (tail_interference_ratio(config, by_count) <= max_tail_ratio) return by_count;
  double lo = by_count;
  double hi = by_count * 2.0;
  while (tail_interference_ratio(config, hi) > max_tail_ratio) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) bad_settings("no window radius meets the interference tail bound");
  }
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tail_interference_ratio(config, mid) > max_tail_ratio ? lo : hi) = mid;
  }
  return hi;
}

SimSettings resolve(SimSettings settings) {
  if (settings.window_radius == 0.0) {
    settings.window_radius = default_window_radius(
        settings.config, settings.min_mean_points, settings.max_tail_ratio);
  }
  return settings;
}

void validate(const SimSettings& s) {
  validate(s.config);
  if (s.config.num_tiers() > 255) bad_settings("at most 255 tiers are supported");
  if (!(s.window_radius > 0.0) || !std::isfinite(s.window_radius)) {
    bad_settings("window radius must be > 0");
  }
  if (s.replications < 1) bad_settings("replications must be >= 1");
  if (s.replications > std::numeric_limits<std::uint32_t>::max()) {
    bad_settings("replications must fit in 32 bits");
  }
  if (s.fading_draws_per_realization < 1 || s.fading_draws_per_realization > 0xFFFF) {
    bad_settings("fading draws per realization must be in 1..65535");
  }
  if (s.load_replications > s.replications) {
    bad_settings("load replications cannot exceed replications");
  }
  const double points = min_density(s.config) * kPi * s.window_radius * s.window_radius;
  if (points < s.min_mean_points * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "window radius " << s.window_radius << " m gives only " << points
       << " mean BSs in the sparsest tier (need " << s.min_mean_points << ")";
    bad_settings(os.str());
  }
  const double tail = tail_interference_ratio(s.config, s.window_radius);
  if (tail > s.max_tail_ratio) {
    std::ostringstream os;
    os << "window radius " << s.window_radius << " m leaves tail interference ratio "
       << tail << " (limit " << s.max_tail_ratio << ")";
    bad_settings(os.str());
  }
}

Deployment make_deployment(double window_radius,
                           std::vector<std::vector<BaseStation>> tiers) {
  for (auto& t : tiers) {
    std::stable_sort(t.begin(), t.end(), [](const BaseStation& a, const BaseStation& b) {
      return a.distance < b.distance;
    });
  }
  return {window_radius, std::move(tiers)};
}

Deployment sample_deployment(const SimSettings& s, std::uint64_t replication) {
  const auto& cfg = s.config;
  Deployment dep;
  dep.window_radius = s.window_radius;
  dep.tiers.resize(cfg.num_tiers());
  const auto rep = static_cast<std::uint32_t>(replication);
  for (std::size_t j = 0; j < cfg.num_tiers(); ++j) {
    RandomStream radii(s.master_seed, rep, StreamPurpose::kBsRadius,
                       static_cast<std::uint32_t>(j));
    RandomStream angles(s.master_seed, rep, StreamPurpose::kBsAngle,
                        static_cast<std::uint32_t>(j));
    const double rate = kPi * cfg.tiers[j].density;
    auto& out = dep.tiers[j];
    out.reserve(static_cast<std::size_t>(rate * s.window_radius * s.window_radius * 1.1) + 16);
    double gamma = 0.0;
    for (;;) {
      gamma += radii.exponential();
      const double r = std::sqrt(gamma / rate);
      if (r > s.window_radius) break;
      out.push_back({r, 2.0 * kPi * angles.uniform()});
    }
  }
  return dep;
}

Association associate(const Deployment& dep, const NetworkConfig& config) {
  double best = -1.0;
  Association out;
  for (std::size_t j = 0; j < dep.tiers.size(); ++j) {
    if (dep.tiers[j].empty()) continue;
    const auto& t = config.tiers[j];
    const double d = dep.tiers[j].front().distance;
    const double brp =
        t.power * config.ref_pathloss * std::pow(d / config.ref_distance, -t.pathloss_exp) *
        t.bias;
    if (brp > best) {
      best = brp;
      out = {j, 0, d};
    }
  }
  if (best < 0.0) throw Error(ErrorCode::kEmptyDeployment, "no base station in window");
  return out;
}

bool respects_exclusion_discs(const Deployment& dep, const Association& a,
                              const NetworkConfig& config) {
  const auto r = ratios(config, a.tier);
  const double x = a.distance / config.ref_distance;
  for (std::size_t j = 0; j < dep.tiers.size(); ++j) {
    if (dep.tiers[j].empty()) continue;
    const double radius = std::pow(r[j].p_hat * r[j].b_hat, 1.0 / config.tiers[j].pathloss_exp) *
                          std::pow(x, 1.0 / r[j].a_hat) * config.ref_distance;
    if (dep.tiers[j].front().distance < radius * (1.0 - 1e-9)) return false;
  }
  return true;
}

std::vector<RandomStream> fading_streams(std::uint64_t seed, std::uint64_t replication,
                                         std::uint32_t draw, std::size_t num_tiers) {
  std::vector<RandomStream> out;
  out.reserve(num_tiers);
  for (std::size_t j = 0; j < num_tiers; ++j) {
    out.emplace_back(seed, static_cast<std::uint32_t>(replication), StreamPurpose::kFading,
                     (draw << 8) | static_cast<std::uint32_t>(j));
  }
  return out;
}

double draw_sinr(const Deployment& dep, const Association& a, const NetworkConfig& config,
                 std::span<RandomStream> tier_streams) {
  double signal = 0.0;
  double interference = 0.0;
  const double inv_r0 = 1.0 / config.ref_distance;
  for (std::size_t j = 0; j < dep.tiers.size(); ++j) {
    const auto& t = config.tiers[j];
    const double scale = t.power * config.ref_pathloss;
    const double neg_alpha = -t.pathloss_exp;
    auto& stream = tier_streams[j];
    const auto& bs = dep.tiers[j];
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const double received = scale * std::pow(bs[i].distance * inv_r0, neg_alpha) *
                              stream.exponential();
      if (j == a.tier && i == a.index) {
        signal = received;
      } else {
        interference += received;
      }
    }
  }
  return signal / (interference + config.noise_power);
}

CampaignResult run_campaign(const SimSettings& input) {
  const SimSettings s = resolve(input);
  validate(s);
  const auto& cfg = s.config;
  const std::size_t K = cfg.num_tiers();
  const std::uint64_t reps = s.replications;
  const std::uint32_t draws = s.fading_draws_per_realization;

  CampaignResult result;
  result.window_radius = s.window_radius;
  result.sinr.seed = s.master_seed;
  result.sinr.replications = reps;
  result.sinr.draws_per_realization = draws;
  result.sinr.samples.resize(reps * draws);
  std::vector<LoadCounts> loads(s.load_replications);

  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<RandomStream> streams;
    for (std::uint64_t rep = begin; rep < end; ++rep) {
      const Deployment dep = sample_deployment(s, rep);
      const Association a = associate(dep, cfg);
      if (!respects_exclusion_discs(dep, a, cfg)) {
        throw std::logic_error("serving BS violates an exclusion disc");
      }
      for (std::uint32_t d = 0; d < draws; ++d) {
        streams = fading_streams(s.master_seed, rep, d, K);
        const double sinr = draw_sinr(dep, a, cfg, streams);
        result.sinr.samples[rep * draws + d] = {static_cast<std::uint32_t>(a.tier), sinr,
                                                a.distance, std::log1p(sinr)};
      }
      if (rep < s.load_replications) loads[rep] = measure_load(dep, s, rep);
    }
  };

  unsigned threads = s.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                    : s.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, reps));
  if (threads <= 1) {
    work(0, reps);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::uint64_t chunk = (reps + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = std::min(reps, t * chunk);
      const std::uint64_t end = std::min(reps, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  result.association_count.assign(K, 0);
  for (std::uint64_t rep = 0; rep < reps; ++rep) {
    ++result.association_count[result.sinr.samples[rep * draws].tier];
  }
  for (std::size_t j = 0; j < K; ++j) {
    result.association_fraction.push_back(static_cast<double>(result.association_count[j]) /
                                          static_cast<double>(reps));
  }

  result.load.replications = s.load_replications;
  result.load.users.assign(K, 0.0);
  result.load.stations.assign(K, 0.0);
  for (const auto& l : loads) {
    for (std::size_t j = 0; j < K; ++j) {
      result.load.users[j] += static_cast<double>(l.users[j]);
      result.load.stations[j] += static_cast<double>(l.stations[j]);
    }
  }
  for (std::size_t j = 0; j < K; ++j) {
    result.load.mean_load.push_back(result.load.stations[j] > 0.0
                                        ? result.load.users[j] / result.load.stations[j]
                                        : std::numeric_limits<double>::quiet_NaN());
  }
  return result;
}

namespace {

Estimate proportion(std::uint64_t hits, std::uint64_t n) {
  if (n == 0) return {std::numeric_limits<double>::quiet_NaN(), 0.0, 0};
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n};
}

Estimate mean_of(const std::vector<double>& v) {
  if (v.empty()) return {std::numeric_limits<double>::quiet_NaN(), 0.0, 0};
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = v.size() > 1 ? ss / static_cast<double>(v.size() - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(v.size())), v.size()};
}

}  // namespace

EmpiricalCdf empirical_cdf(const EmpiricalSinr& sinr, std::span<const double> tau_grid,
                           std::size_t num_tiers) {
  if (sinr.samples.empty()) throw Error(ErrorCode::kEmptySampleSet, "no SINR samples");
  std::vector<double> all;
  std::vector<std::vector<double>> by_tier(num_tiers);
  all.reserve(sinr.samples.size());
  for (const auto& smp : sinr.samples) {
    all.push_back(smp.sinr);
    if (smp.tier < num_tiers) by_tier[smp.tier].push_back(smp.sinr);
  }
  std::sort(all.begin(), all.end());
  for (auto& v : by_tier) std::sort(v.begin(), v.end());

  auto at_most = [](const std::vector<double>& sorted, double tau) {
    return static_cast<std::uint64_t>(std::upper_bound(sorted.begin(), sorted.end(), tau) -
                                      sorted.begin());
  };

  EmpiricalCdf out;
  out.tau.assign(tau_grid.begin(), tau_grid.end());
  out.per_tier.resize(num_tiers);
  for (double tau : tau_grid) {
    out.network.push_back(proportion(at_most(all, tau), all.size()));
    for (std::size_t j = 0; j < num_tiers; ++j) {
      out.per_tier[j].push_back(proportion(at_most(by_tier[j], tau), by_tier[j].size()));
    }
  }
  return out;
}

EmpiricalRate empirical_rate(const EmpiricalSinr& sinr, std::size_t num_tiers) {
  if (sinr.samples.empty()) throw Error(ErrorCode::kEmptySampleSet, "no SINR samples");
  std::vector<double> all;
  std::vector<std::vector<double>> by_tier(num_tiers);
  for (const auto& smp : sinr.samples) {
    all.push_back(smp.rate);
    if (smp.tier < num_tiers) by_tier[smp.tier].push_back(smp.rate);
  }
  EmpiricalRate out;
  out.network = mean_of(all);
  for (const auto& v : by_tier) out.per_tier.push_back(mean_of(v));
  return out;
}

void write_samples_csv(std::ostream& out, const EmpiricalSinr& sinr) {
  out << "tier,sinr,distance,rate\n";
  for (const auto& smp : sinr.samples) {
    out << smp.tier + 1 << ',' << format_number(smp.sinr) << ','
        << format_number(smp.distance) << ',' << format_number(smp.rate) << '\n';
  }
}

}  // namespace hetnet
