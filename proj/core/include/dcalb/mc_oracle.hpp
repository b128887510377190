#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcalb/lower_bound.hpp"
#include "dcalb/schedule.hpp"

namespace dcalb {

struct SimulationConfig {
  std::size_t n_paths = 100'000;
  std::uint64_t seed = 0;
  InvestmentSchedule schedule;
  GbmParams params;
  std::size_t steps = 0;      // 0 means schedule.steps()
  unsigned threads = 0;       // 0 means hardware concurrency; never changes results
  bool retain_samples = false;  // keep sorted R_k samples for CDF checks
};

inline constexpr std::string_view kSummarySchema = "dcalb.mc_summary";
inline constexpr int kSummarySchemaVersion = 1;

struct StepSummary {
  std::size_t k = 0;
  double time = 0.0;  // t_k in years

  double r_mean = 0.0, r_var = 0.0;
  double z_mean = 0.0, z_var = 0.0;
  std::vector<double> r_moments;     // E[R_k^n], n = 1..3
  std::vector<double> r_moment_se;   // standard errors of the above
  double log_r_mean = 0.0, log_r_se = 0.0;
  double error_mean = 0.0, error_se = 0.0;                  // R_k - Z_k
  double relative_error_mean = 0.0, relative_error_se = 0.0;  // 1 - Z_k / R_k
  double log_error_mean = 0.0, log_error_se = 0.0;          // log R_k - log Z_k
  std::vector<double> r_quantiles;   // at kSummaryQuantiles, nearest rank
  std::vector<double> z_quantiles;
  std::size_t violations = 0;        // paths with Z_k - R_k > kDominanceTolerance
  double worst_margin = 0.0;         // max over paths of Z_k - R_k
};

inline constexpr double kDominanceTolerance = 1e-9;
inline constexpr unsigned kSummaryMoments = 3;
inline const std::vector<double> kSummaryQuantiles{0.025, 0.5, 0.975};

struct SimulationSummary {
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
  double mu = 0.0, sigma = 0.0;
  std::vector<StepSummary> per_step;
  std::size_t violations = 0;
  double worst_margin = 0.0;

  // Present only when the config asked for it; never serialized.
  std::vector<std::vector<double>> sorted_returns;
};

/// Log-factors log X_k ~ N(mu dt, sigma^2 dt) drawn from Philox keyed by
/// (seed, path, step), so results do not depend on thread count. R_k comes
/// from wealth_path and Z_k from sample_z on the same factors.
/// Throws Error{InvalidConfig} on an empty run or too few schedule steps.
SimulationSummary simulate(const SimulationConfig& config);

/// Factors X_1..X_K of one path exactly as simulate() draws them.
std::vector<double> sample_path_factors(const SimulationConfig& config, std::uint64_t path);

/// Nearest-rank quantile of sorted data: element ceil(p n) - 1.
double nearest_rank_quantile(const std::vector<double>& sorted, double p);

struct CdfViolation {
  std::size_t k;
  double x;
  double analytic_cdf;   // P(Z_k <= x)
  double empirical_cdf;  // fraction of R_k samples <= x
};

struct CdfDominanceReport {
  double epsilon = 0.0;  // DKW half-width sqrt(log(2/delta) / (2n))
  double delta = 1e-3;
  std::size_t points = 0;
  double worst_gap = 0.0;  // max of empirical - analytic
  std::vector<CdfViolation> violations;
};

/// Checks P(Z_k <= x) >= F_n(x) - epsilon at every grid point of every
/// retained step; steps whose sample was cleared are skipped. Report-only;
/// throws Error{InvalidConfig} if samples were not retained.
CdfDominanceReport empirical_cdf_dominance(const SimulationSummary& summary,
                                           const LowerBoundSequence& lb,
                                           const std::vector<double>& x_grid,
                                           double delta = 1e-3);

/// Versioned JSON form of a summary (schema dcalb.mc_summary v1).
std::string summary_to_json(const SimulationSummary& summary);
SimulationSummary summary_from_json(const std::string& text);

}  // namespace dcalb
