#pragma once

// Subcommands of the `hetnet` tool. Each cmd_* function does the work and
// writes CSV to `out`; run() adds argument parsing and exit codes.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/analysis.hpp"
#include "hetnet/model.hpp"
#include "hetnet/montecarlo.hpp"
#include "hetnet/quadrature.hpp"

namespace hetnet::cli {

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitError = 2 };

/// Swept metric table. Rows are sorted by sweep value; each row holds one
/// value per tier, a network value and optionally a Monte Carlo estimate of
/// the network value with its standard error.
struct CurveResult {
  struct Row {
    double sweep = 0.0;
    std::vector<double> per_tier;
    double network = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> mc;
    std::optional<double> mc_se;
  };

  std::string sweep_variable;   ///< tau_db | bias_db | density_ratio
  std::string metric;           ///< column prefix, e.g. "outage"
  std::size_t num_tiers = 0;
  bool has_mc = false;
  std::vector<Row> rows;

  /// dB sweeps get an extra linear column next to the sweep value.
  void write_csv(std::ostream& out) const;
};

struct TauGrid {
  double min_db = -10.0;
  double max_db = 20.0;
  std::size_t steps = 31;

  std::vector<double> db_values() const;
  std::vector<double> linear_values() const;
};

CurveResult cmd_outage(const NetworkConfig& config, const TauGrid& grid,
                       const QuadratureSettings& q);

/// Per-tier and network ergodic rate plus, when the user density is
/// positive, per-tier average user throughput and its minimum.
void cmd_rate(const NetworkConfig& config, const QuadratureSettings& q, std::ostream& out);

struct BiasSweep {
  std::size_t tier = 1;  ///< 0-based tier whose bias is swept
  double min_db = 0.0;
  double max_db = 20.0;
  std::size_t steps = 11;
};

/// Average user throughput per tier and its minimum (network column) as the
/// bias of one tier is swept.
CurveResult cmd_rate_bias_sweep(const NetworkConfig& config, const BiasSweep& sweep,
                                const QuadratureSettings& q);

void cmd_assoc(const NetworkConfig& config, const QuadratureSettings& q, std::ostream& out);

struct SimulateOptions {
  std::uint64_t replications = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint32_t draws = 1;
  double window_radius = 0.0;
  std::uint64_t load_replications = 200;
};

SimSettings make_sim_settings(const NetworkConfig& config, const SimulateOptions& opt);

struct SimulateOutput {
  CurveResult curve;
  CampaignResult campaign;
};

SimulateOutput cmd_simulate(const NetworkConfig& config, const SimulateOptions& opt,
                            const TauGrid& grid, const QuadratureSettings& q);

void write_simulation_summary(const NetworkConfig& config, const SimulateOutput& sim,
                              const QuadratureSettings& q, std::ostream& out);

struct CompareTolerances {
  double outage_abs = 0.015;
  double rate_rel = 0.02;
  double assoc_min_pvalue = 1e-3;
};

struct CompareReport {
  double outage_max_dev = 0.0;
  double outage_max_dev_tau_db = 0.0;
  double rate_analytic = 0.0;
  double rate_empirical = 0.0;
  double rate_rel_err = 0.0;
  double assoc_chi2 = 0.0;
  double assoc_dof = 0.0;
  double assoc_pvalue = 1.0;
  bool outage_pass = false;
  bool rate_pass = false;
  bool assoc_pass = false;
  bool pass() const { return outage_pass && rate_pass && assoc_pass; }
};

/// Analytic values from `config`, Monte Carlo from `sim_config` (normally the
/// same network; a different one serves as a negative control).
CompareReport cmd_compare(const NetworkConfig& config, const NetworkConfig& sim_config,
                          const SimulateOptions& opt, const TauGrid& grid,
                          const QuadratureSettings& q, const CompareTolerances& tol);

void write_compare_report(const CompareReport& report, const CompareTolerances& tol,
                          std::ostream& out);

/// Full command line entry point. Data goes to `out` unless --out is given;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hetnet::cli
