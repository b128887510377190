#pragma once

#include <cstddef>
#include <vector>

#include "dcalb/lower_bound.hpp"
#include "dcalb/moments.hpp"
#include "dcalb/schedule.hpp"

namespace dcalb {

/// Search grid for the log-error upper bound: odd Taylor degrees J and
/// expansion points y. With `relative` set, y values are multiples of E[R_k].
struct LogErrorGrid {
  std::vector<unsigned> degrees;
  std::vector<double> y_values;
  bool relative = true;

  /// J = 1, 3, ..., 21 and y = exp(-4 + 0.01 r) E[R_k], r = 0..800.
  static LogErrorGrid defaults();
  unsigned max_degree() const;
};

struct ErrorReport {
  std::size_t k = 0;
  double expected_error = 0.0;
  double log_error_ub = 0.0;
  unsigned degree = 0;  // argmin J
  double y = 0.0;       // argmin expansion point (absolute)
};

/// E[R_k] - exp(m_k + v_k / 2), the mean gap between returns and the bound.
/// Values in [-1e-9, 0) are rounding and clamp to 0; anything lower throws
/// Error{InternalInconsistency}.
double expected_error(const InvestmentSchedule& schedule, const GbmParams& params,
                      std::size_t k);
double expected_error(const MomentTable& moments, const LowerBoundSequence& lb, std::size_t k);

/// min over (J, y) of log y + sum_{j<=J} E[(R_k - y)^j] / ((-1)^{j-1} j y^j) - m_k.
///
/// The shifted moments come from the raw moment table by binomial expansion,
/// scaled by y^j and summed with compensation. A (J, y) pair is skipped when
/// any of its terms overflows or cancels with condition number above 1e12.
/// Ties break on (value, J, y). Throws Error{NoFeasibleGridPoint} if every
/// pair is skipped.
ErrorReport log_error_upper_bound(const InvestmentSchedule& schedule, const GbmParams& params,
                                  std::size_t k, const LogErrorGrid& grid = LogErrorGrid::defaults());
ErrorReport log_error_upper_bound(const MomentTable& moments, const LowerBoundSequence& lb,
                                  std::size_t k, const LogErrorGrid& grid);

/// Degree-J Taylor polynomial of log about y, evaluated at x:
/// log y + sum_{j<=J} (x - y)^j / ((-1)^{j-1} j y^j). For odd J it majorizes
/// log on (0, inf), which is what makes the log-error bound valid.
double log_taylor(double x, double y, unsigned degree);

/// Expected error and log-error bound for k = 1..k_max sharing one moment table.
std::vector<ErrorReport> error_profile(const InvestmentSchedule& schedule,
                                       const GbmParams& params, std::size_t k_max,
                                       const LogErrorGrid& grid = LogErrorGrid::defaults());

/// The log-error bound also bounds E[1 - Z_k / R_k].
double relative_error_bound(const ErrorReport& report) noexcept;

/// Lump sum (x_k invested for s_k years) whose terminal wealth has the law of
/// Z_k sum_{j<k} c_j.
///
/// Two readings of the size component are exposed: `size_ratio` is x_k
/// relative to the total invested (the reading under which "half as much" is
/// 1/2), and `size_ratio_literal` is x_k times the total invested.
struct LumpSumDiscount {
  double x = 0.0;  // x_k
  double s = 0.0;  // s_k = v_k / sigma^2
  double size_ratio = 0.0;
  double size_ratio_literal = 0.0;
  double time_ratio = 0.0;  // s_k / t_k
};

LumpSumDiscount lump_sum_discount(const InvestmentSchedule& schedule, const GbmParams& params,
                                  std::size_t k);
LumpSumDiscount lump_sum_discount(const InvestmentSchedule& schedule, const GbmParams& params,
                                  const LowerBoundSequence& lb, std::size_t k);

/// lim x_k for unit DCA: exp(mu (e^{2mu} + 2e^mu) / (e^{2mu} - 1)) / (e^mu - 1).
/// Throws Error{NonPositiveDrift} unless mu > 0.
double lsd_limit(double mu);

struct LsdRatioLimit {
  double x_over_k;
  double s_over_k;
};
/// lim (x_k / k, s_k / k) for unit DCA with mu > 0.
inline constexpr LsdRatioLimit kLsdRatioLimit{0.0, 1.0};

}  // namespace dcalb
