#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hetnet/config_io.hpp"
#include "hetnet/csv.hpp"
#include "hetnet/error.hpp"
#include "hetnet/validation.hpp"

namespace hetnet::cli {

namespace {

void write_header_tiers(std::ostream& out, const std::string& prefix, std::size_t k) {
  for (std::size_t j = 0; j < k; ++j) out << ',' << prefix << "_tier_" << j + 1;
  out << ',' << prefix << "_network";
}

void write_values(std::ostream& out, const std::vector<double>& v, double network) {
  for (double x : v) out << ',' << format_number(x);
  out << ',' << format_number(network);
}

}  // namespace

void CurveResult::write_csv(std::ostream& out) const {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].sweep < rows[i - 1].sweep) {
      throw Error(ErrorCode::kInvalidArgument, "curve rows must be sorted by sweep value");
    }
  }
  const bool is_db = sweep_variable.size() > 3 &&
                     sweep_variable.compare(sweep_variable.size() - 3, 3, "_db") == 0;
  out << sweep_variable;
  if (is_db) out << ',' << sweep_variable.substr(0, sweep_variable.size() - 3) << "_linear";
  write_header_tiers(out, metric, num_tiers);
  if (has_mc) out << ",mc_" << metric << "_network,mc_se";
  out << '\n';
  for (const auto& r : rows) {
    out << format_number(r.sweep);
    if (is_db) out << ',' << format_number(db_to_linear(r.sweep));
    write_values(out, r.per_tier, r.network);
    if (has_mc) {
      out << ',' << format_number(r.mc.value_or(std::nan(""))) << ','
          << format_number(r.mc_se.value_or(std::nan("")));
    }
    out << '\n';
  }
}

std::vector<double> TauGrid::db_values() const {
  if (steps < 1) throw Error(ErrorCode::kInvalidArgument, "tau grid needs at least one step");
  if (max_db < min_db) throw Error(ErrorCode::kInvalidArgument, "tau grid max < min");
  std::vector<double> v;
  for (std::size_t i = 0; i < steps; ++i) {
    v.push_back(steps == 1 ? min_db
                           : min_db + (max_db - min_db) * static_cast<double>(i) /
                                          static_cast<double>(steps - 1));
  }
  return v;
}

std::vector<double> TauGrid::linear_values() const {
  auto v = db_values();
  for (auto& x : v) x = db_to_linear(x);
  return v;
}

CurveResult cmd_outage(const NetworkConfig& config, const TauGrid& grid,
                       const QuadratureSettings& q) {
  validate(config);
  CurveResult c;
  c.sweep_variable = "tau_db";
  c.metric = "outage";
  c.num_tiers = config.num_tiers();
  for (double db : grid.db_values()) {
    PerTierMetric m;
    try {
      m = outage(config, db_to_linear(db), q);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kQuadratureFailure) throw;
      std::ostringstream os;
      os << "at tau = " << db << " dB: " << e.what();
      throw Error(ErrorCode::kQuadratureFailure, os.str());
    }
    c.rows.push_back({db, m.per_tier, m.network, std::nullopt, std::nullopt});
  }
  return c;
}

void cmd_rate(const NetworkConfig& config, const QuadratureSettings& q, std::ostream& out) {
  validate(config);
  const std::size_t K = config.num_tiers();
  const PerTierMetric rates = ergodic_rates(config, q);
  out << "quantity";
  for (std::size_t j = 0; j < K; ++j) out << ",tier_" << j + 1;
  out << ",network\n";
  out << "ergodic_rate_nats";
  write_values(out, rates.per_tier, rates.network);
  out << '\n';
  if (config.user_density > 0.0) {
    const MinThroughput m = min_avg_user_throughput(config, q);
    out << "avg_user_throughput_nats";
    write_values(out, m.per_tier, m.value);
    out << '\n';
    out << "min_throughput_tier";
    for (std::size_t j = 0; j < K; ++j) {
      const bool tied = std::find(m.ties.begin(), m.ties.end(), j) != m.ties.end();
      out << ',' << (tied ? 1 : 0);
    }
    out << ',' << m.tier + 1 << '\n';
  }
}

CurveResult cmd_rate_bias_sweep(const NetworkConfig& config, const BiasSweep& sweep,
                                const QuadratureSettings& q) {
  validate(config);
  if (sweep.tier >= config.num_tiers()) {
    throw Error(ErrorCode::kIndexOutOfRange, "bias sweep tier out of range", sweep.tier + 1);
  }
  const TauGrid grid{sweep.min_db, sweep.max_db, sweep.steps};
  CurveResult c;
  c.sweep_variable = "bias_db";
  c.metric = "avg_user_throughput";
  c.num_tiers = config.num_tiers();
  NetworkConfig cfg = config;
  for (double db : grid.db_values()) {
    cfg.tiers[sweep.tier].bias = db_to_linear(db);
    const MinThroughput m = min_avg_user_throughput(cfg, q);
    c.rows.push_back({db, m.per_tier, m.value, std::nullopt, std::nullopt});
  }
  return c;
}

void cmd_assoc(const NetworkConfig& config, const QuadratureSettings& q, std::ostream& out) {
  validate(config);
  const std::size_t K = config.num_tiers();
  const PerTierMetric a = association_probabilities(config, q);
  const PerTierMetric n = cell_loads(config, q);
  out << "quantity";
  for (std::size_t j = 0; j < K; ++j) out << ",tier_" << j + 1;
  out << ",network\n";
  out << "association_probability";
  write_values(out, a.per_tier, a.network);
  out << "\ncell_load";
  write_values(out, n.per_tier, n.network);
  out << '\n';
}

SimSettings make_sim_settings(const NetworkConfig& config, const SimulateOptions& opt) {
  if (opt.replications < 1) {
    throw Error(ErrorCode::kInvalidSettings, "replications must be >= 1");
  }
  SimSettings s;
  s.config = config;
  s.replications = opt.replications;
  s.master_seed = opt.seed;
  s.threads = opt.threads;
  s.fading_draws_per_realization = opt.draws;
  s.window_radius = opt.window_radius;
  s.load_replications =
      config.user_density > 0.0 ? std::min(opt.load_replications, opt.replications) : 0;
  return resolve(s);
}

SimulateOutput cmd_simulate(const NetworkConfig& config, const SimulateOptions& opt,
                            const TauGrid& grid, const QuadratureSettings& q) {
  validate(config);
  const SimSettings s = make_sim_settings(config, opt);
  SimulateOutput res;
  res.campaign = run_campaign(s);
  res.curve = cmd_outage(config, grid, q);
  res.curve.has_mc = true;
  const auto taus = grid.linear_values();
  const EmpiricalCdf cdf = empirical_cdf(res.campaign.sinr, taus, config.num_tiers());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    res.curve.rows[i].mc = cdf.network[i].value;
    res.curve.rows[i].mc_se = cdf.network[i].std_error;
  }
  return res;
}

void write_simulation_summary(const NetworkConfig& config, const SimulateOutput& sim,
                              const QuadratureSettings& q, std::ostream& out) {
  const auto& c = sim.campaign;
  const std::size_t K = config.num_tiers();
  const PerTierMetric a = association_probabilities(config, q);
  const EmpiricalRate r = empirical_rate(c.sinr, K);
  out << "replications " << c.sinr.replications << ", draws/realization "
      << c.sinr.draws_per_realization << ", seed " << c.sinr.seed << ", window "
      << format_number(c.window_radius) << " m\n";
  for (std::size_t j = 0; j < K; ++j) {
    out << "tier " << j + 1 << ": association mc " << format_number(c.association_fraction[j])
        << " analytic " << format_number(a.per_tier[j]) << ", mean rate "
        << format_number(r.per_tier[j].value) << " nats";
    if (c.load.replications > 0) {
      out << ", mean load " << format_number(c.load.mean_load[j]) << " (analytic "
          << format_number(cell_load(config, j, q)) << ")";
    }
    out << '\n';
  }
  out << "network mean rate " << format_number(r.network.value) << " +/- "
      << format_number(r.network.std_error) << " nats\n";
}

CompareReport cmd_compare(const NetworkConfig& config, const NetworkConfig& sim_config,
                          const SimulateOptions& opt, const TauGrid& grid,
                          const QuadratureSettings& q, const CompareTolerances& tol) {
  validate(config);
  validate(sim_config);
  if (sim_config.num_tiers() != config.num_tiers()) {
    throw Error(ErrorCode::kInvalidArgument, "compared configs must have the same tier count");
  }
  SimulateOptions o = opt;
  o.load_replications = 0;
  const CampaignResult camp = run_campaign(make_sim_settings(sim_config, o));
  const std::size_t K = config.num_tiers();

  CompareReport rep;
  const auto taus = grid.linear_values();
  const auto dbs = grid.db_values();
  const EmpiricalCdf cdf = empirical_cdf(camp.sinr, taus, K);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double dev = std::abs(outage_network(config, taus[i], q) - cdf.network[i].value);
    if (dev > rep.outage_max_dev) {
      rep.outage_max_dev = dev;
      rep.outage_max_dev_tau_db = dbs[i];
    }
  }
  rep.outage_pass = rep.outage_max_dev <= tol.outage_abs;

  rep.rate_analytic = ergodic_rate_network(config, q);
  rep.rate_empirical = empirical_rate(camp.sinr, K).network.value;
  rep.rate_rel_err = std::abs(rep.rate_empirical - rep.rate_analytic) / rep.rate_analytic;
  rep.rate_pass = rep.rate_rel_err <= tol.rate_rel;

  const PerTierMetric a = association_probabilities(config, q);
  rep.assoc_chi2 = chi_square_statistic(camp.association_count, a.per_tier);
  rep.assoc_dof = static_cast<double>(K - 1);
  rep.assoc_pvalue = chi_square_pvalue(rep.assoc_chi2, rep.assoc_dof);
  rep.assoc_pass = rep.assoc_pvalue >= tol.assoc_min_pvalue;
  return rep;
}

void write_compare_report(const CompareReport& r, const CompareTolerances& tol,
                          std::ostream& out) {
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  out << "outage_max_abs_dev " << format_number(r.outage_max_dev) << " at tau_db "
      << format_number(r.outage_max_dev_tau_db) << " (tol " << format_number(tol.outage_abs)
      << ") " << verdict(r.outage_pass) << '\n';
  out << "rate_rel_err " << format_number(r.rate_rel_err) << " analytic "
      << format_number(r.rate_analytic) << " empirical " << format_number(r.rate_empirical)
      << " (tol " << format_number(tol.rate_rel) << ") " << verdict(r.rate_pass) << '\n';
  out << "assoc_chi2 " << format_number(r.assoc_chi2) << " dof " << format_number(r.assoc_dof)
      << " p " << format_number(r.assoc_pvalue) << " (min p "
      << format_number(tol.assoc_min_pvalue) << ") " << verdict(r.assoc_pass) << '\n';
  out << "RESULT " << verdict(r.pass()) << '\n';
}

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("HETNET_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
    }
  }
  return 1;
}

struct Options {
  std::string config_path;
  std::string sim_config_path;
  std::string out_path;
  std::string samples_path;
  double quad_rel_tol = QuadratureSettings{}.rel_tol;
  TauGrid grid;
  SimulateOptions sim;
  CompareTolerances tol;
  int sweep_bias_tier = 0;  // 1-based; 0 = no sweep
  BiasSweep bias;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "network description (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out_path, "write CSV here instead of stdout");
  cmd->add_option("--quad-rel-tol", o.quad_rel_tol, "quadrature relative tolerance")
      ->check(CLI::PositiveNumber);
}

void add_tau(CLI::App* cmd, Options& o) {
  cmd->add_option("--tau-min-db", o.grid.min_db, "first SINR threshold (dB)");
  cmd->add_option("--tau-max-db", o.grid.max_db, "last SINR threshold (dB)");
  cmd->add_option("--tau-steps", o.grid.steps, "number of thresholds")
      ->check(CLI::PositiveNumber);
}

void add_sim(CLI::App* cmd, Options& o) {
  cmd->add_option("--replications", o.sim.replications, "spatial realizations (>= 1)");
  cmd->add_option("--seed", o.sim.seed, "master seed (default $HETNET_SEED or 1)");
  cmd->add_option("--threads", o.sim.threads, "worker threads (0 = all cores)");
  cmd->add_option("--draws", o.sim.draws, "fading draws per realization")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--window-radius", o.sim.window_radius, "simulation disc radius, m");
  cmd->add_option("--load-replications", o.sim.load_replications,
                  "realizations that also measure per-BS load");
}

template <typename F>
void with_output(const Options& o, std::ostream& out, F&& write) {
  if (o.out_path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write " + o.out_path);
  write(file);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Downlink SINR analysis and simulation for K-tier cellular networks", "hetnet"};
  app.require_subcommand(1);
  Options o;
  o.sim.seed = default_seed();

  auto* outage_cmd = app.add_subcommand("outage", "per-tier and network outage vs SINR threshold");
  add_common(outage_cmd, o);
  add_tau(outage_cmd, o);

  auto* rate_cmd = app.add_subcommand("rate", "ergodic rate and average user throughput");
  add_common(rate_cmd, o);
  rate_cmd->add_option("--sweep-bias-tier", o.sweep_bias_tier,
                       "sweep this tier's bias (1-based) and report throughput per point");
  rate_cmd->add_option("--bias-min-db", o.bias.min_db);
  rate_cmd->add_option("--bias-max-db", o.bias.max_db);
  rate_cmd->add_option("--bias-steps", o.bias.steps)->check(CLI::PositiveNumber);

  auto* assoc_cmd = app.add_subcommand("assoc", "association probability and cell load");
  add_common(assoc_cmd, o);

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo SINR CDF next to the analytic one");
  add_common(sim_cmd, o);
  add_tau(sim_cmd, o);
  add_sim(sim_cmd, o);
  sim_cmd->add_option("--samples-out", o.samples_path, "write raw samples CSV here");

  auto* cmp_cmd = app.add_subcommand("compare", "check analytic results against simulation");
  add_common(cmp_cmd, o);
  add_tau(cmp_cmd, o);
  add_sim(cmp_cmd, o);
  cmp_cmd->add_option("--sim-config", o.sim_config_path,
                      "simulate this network instead of --config")
      ->check(CLI::ExistingFile);
  cmp_cmd->add_option("--outage-tol", o.tol.outage_abs);
  cmp_cmd->add_option("--rate-tol", o.tol.rate_rel);
  cmp_cmd->add_option("--assoc-min-p", o.tol.assoc_min_pvalue);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if ((sim_cmd->parsed() || cmp_cmd->parsed()) && o.sim.replications < 1) {
      err << "error: --replications must be >= 1\n";
      return kExitError;
    }
    const NetworkConfig config = load_config(o.config_path);
    QuadratureSettings q;
    q.rel_tol = o.quad_rel_tol;
    validate(q);

    if (outage_cmd->parsed()) {
      const CurveResult c = cmd_outage(config, o.grid, q);
      with_output(o, out, [&](std::ostream& s) { c.write_csv(s); });
    } else if (rate_cmd->parsed()) {
      if (o.sweep_bias_tier > 0) {
        o.bias.tier = static_cast<std::size_t>(o.sweep_bias_tier - 1);
        const CurveResult c = cmd_rate_bias_sweep(config, o.bias, q);
        with_output(o, out, [&](std::ostream& s) { c.write_csv(s); });
      } else {
        with_output(o, out, [&](std::ostream& s) { cmd_rate(config, q, s); });
      }
    } else if (assoc_cmd->parsed()) {
      with_output(o, out, [&](std::ostream& s) { cmd_assoc(config, q, s); });
    } else if (sim_cmd->parsed()) {
      const SimulateOutput res = cmd_simulate(config, o.sim, o.grid, q);
      with_output(o, out, [&](std::ostream& s) { res.curve.write_csv(s); });
      if (!o.samples_path.empty()) {
        std::ofstream f(o.samples_path, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + o.samples_path);
        write_samples_csv(f, res.campaign.sinr);
      }
      write_simulation_summary(config, res, q, err);
    } else if (cmp_cmd->parsed()) {
      const NetworkConfig sim_config =
          o.sim_config_path.empty() ? config : load_config(o.sim_config_path);
      const CompareReport r = cmd_compare(config, sim_config, o.sim, o.grid, q, o.tol);
      with_output(o, out, [&](std::ostream& s) { write_compare_report(r, o.tol, s); });
      return r.pass() ? kExitOk : kExitFail;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace hetnet::cli
