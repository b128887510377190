#pragma once

#include <cstddef>
#include <vector>

#include "dcalb/data.hpp"
#include "dcalb/error_lsd.hpp"
#include "dcalb/schedule.hpp"
#include "dcalb/table.hpp"

namespace dcalb {

// Builders for the numeric tables emitted by the CLI. Unless a schedule is
// passed, analytics use unit DCA (c_k = 1, t_k = k).

inline const std::vector<double> kFigureQuantiles{0.025, 0.5, 0.975};
inline const std::vector<std::size_t> kHybridHorizons{2, 6, 12, 20, 30, 42};

/// k, quantiles of Z_k and of log Z_k at kFigureQuantiles.
Table quantiles_table(const GbmParams& params, std::size_t k_max);
Table quantiles_table(const InvestmentSchedule& schedule, const GbmParams& params,
                      std::size_t k_max);

/// k, m_k, v_k, m_k / sqrt(v_k).
Table sharpe_table(const GbmParams& params, std::size_t k_max);

/// k, expected error, log-error bound and its argmin (J, y).
Table error_table(const GbmParams& params, std::size_t k_max,
                  const LogErrorGrid& grid = LogErrorGrid::defaults());

/// k, x_k, s_k, x_k / total, s_k / t_k, x_k * total.
Table lsd_path_table(const GbmParams& params, std::size_t k_max);

/// mu, lim x_k over a drift grid.
Table lsd_limit_table(const std::vector<double>& mu_grid);

/// Bound law of continuous DCA for the given parameters.
Table continuous_law_table(const GbmParams& params);
/// mu, r1, r2 over a drift grid.
Table r1_r2_table(const std::vector<double>& mu_grid);

/// Lump sum c_0 at t = 0, then (1 - c_0)/(T - 1) at t = 1..T-1; evaluated at T.
InvestmentSchedule hybrid_constant_total(std::size_t horizon, double lump);
/// c_0 = 1 at t = 0, then `amount` at t = 1..T-1; evaluated at T.
InvestmentSchedule hybrid_constant_lump(std::size_t horizon, double amount);

struct HybridPoint {
  double z_quantiles[3];
  double log_z_quantiles[3];
  double expected_error;
  double log_error_ub;
};
HybridPoint hybrid_point(const InvestmentSchedule& schedule, const GbmParams& params,
                         const LogErrorGrid& grid = LogErrorGrid::defaults());

/// One row per (T, c_0); c_0 ranges over `lumps` plus the all-DCA point 1/T.
Table hybrid_constant_total_table(const GbmParams& params, const std::vector<std::size_t>& horizons,
                                  const std::vector<double>& lumps,
                                  const LogErrorGrid& grid = LogErrorGrid::defaults());
/// One row per (T, amount); the all-DCA point is amount = 1.
Table hybrid_constant_lump_table(const GbmParams& params, const std::vector<std::size_t>& horizons,
                                 const std::vector<double>& amounts,
                                 const LogErrorGrid& grid = LogErrorGrid::defaults());

Table fit_table(const FitResult& fit);
Table correlogram_table(const Correlogram& c);
Table qq_table(const std::vector<QqPoint>& points);

/// start, start + step, ..., up to and including stop (within half a step).
std::vector<double> linear_grid(double start, double stop, double step);

}  // namespace dcalb
