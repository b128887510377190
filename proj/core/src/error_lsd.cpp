#include "dcalb/error_lsd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "dcalb/error.hpp"

namespace dcalb {

namespace {

constexpr double kErrorSlack = 1e-9;
constexpr long double kMaxCondition = 1e12L;

struct Candidate {
  double value;
  unsigned degree;
  double y;

  bool operator<(const Candidate& o) const {
    return std::tie(value, degree, y) < std::tie(o.value, o.degree, o.y);
  }
};

}  // namespace

LogErrorGrid LogErrorGrid::defaults() {
  LogErrorGrid g;
  for (unsigned j = 1; j <= 21; j += 2) g.degrees.push_back(j);
  g.y_values.reserve(801);
  for (int r = 0; r <= 800; ++r) g.y_values.push_back(std::exp(-4.0 + 0.01 * r));
  g.relative = true;
  return g;
}

unsigned LogErrorGrid::max_degree() const {
  return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
}

double expected_error(const MomentTable& moments, const LowerBoundSequence& lb, std::size_t k) {
  const double gap = moments.at(k, 1) - lb.law(k).mean();
  if (gap < -kErrorSlack) {
    throw Error(Errc::InternalInconsistency,
                "E[R_k] below E[Z_k] at step " + std::to_string(k));
  }
  return std::max(gap, 0.0);
}

double expected_error(const InvestmentSchedule& schedule, const GbmParams& params,
                      std::size_t k) {
  return expected_error(moments_recursive(schedule, params, k, 1),
                        lower_bound_recursive(schedule, params, k), k);
}

ErrorReport log_error_upper_bound(const MomentTable& moments, const LowerBoundSequence& lb,
                                  std::size_t k, const LogErrorGrid& grid) {
  const unsigned j_max = grid.max_degree();
  if (grid.degrees.empty() || grid.y_values.empty()) {
    throw Error(Errc::InvalidParams, "empty log-error grid");
  }
  for (unsigned j : grid.degrees) {
    if (j % 2 == 0) throw Error(Errc::InvalidParams, "Taylor degrees must be odd");
  }
  if (j_max > moments.max_order() || j_max > kMaxBinomialOrder) {
    throw Error(Errc::InvalidParams, "moment table too short for degree " +
                                         std::to_string(j_max));
  }

  std::vector<bool> wanted(j_max + 1, false);
  for (unsigned j : grid.degrees) wanted[j] = true;

  const double mean = moments.at(k, 1);
  const double m_k = lb.law(k).log_mean;

  // Raw moments in extended precision; overflowing entries stay in log form.
  std::vector<long double> raw(j_max + 1);
  std::vector<double> log_raw(j_max + 1);
  for (unsigned i = 0; i <= j_max; ++i) {
    log_raw[i] = moments.log_at(k, i);
    const double v = std::exp(log_raw[i]);
    raw[i] = std::isfinite(v) ? static_cast<long double>(moments.at(k, i))
                              : std::numeric_limits<long double>::infinity();
  }

  std::vector<long double> scaled(j_max + 1);
  bool found = false;
  Candidate best{std::numeric_limits<double>::infinity(), 0, 0.0};
  for (double y_in : grid.y_values) {
    const double y = grid.relative ? y_in * mean : y_in;
    if (!(y > 0.0) || !std::isfinite(y)) continue;
    const long double log_y = std::log(static_cast<long double>(y));

    // scaled[i] = E[R^i] / y^i, in log form when it leaves the double range.
    for (unsigned i = 0; i <= j_max; ++i) {
      scaled[i] = std::isfinite(static_cast<double>(raw[i]))
                      ? raw[i] * std::exp(-(i * log_y))
                      : std::exp(log_raw[i] - i * log_y);
    }

    long double bound = log_y;
    long double bound_abs = std::abs(log_y);
    for (unsigned j = 1; j <= j_max; ++j) {
      // E[(R - y)^j] / y^j = sum_i C(j,i) (-1)^{j-i} E[R^i] / y^i
      long double sum = 0.0L, comp = 0.0L, abs_sum = 0.0L;
      bool ok = true;
      for (unsigned i = 0; i <= j; ++i) {
        const long double mag = static_cast<long double>(binomial(j, i)) * scaled[i];
        if (!std::isfinite(static_cast<double>(mag))) {
          ok = false;
          break;
        }
        const long double term = ((j - i) % 2 == 0) ? mag : -mag;
        abs_sum += mag;
        // Neumaier summation.
        const long double t = sum + term;
        comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
      }
      if (!ok) break;
      const long double shifted = sum + comp;
      const long double sign = (j % 2 == 1) ? 1.0L : -1.0L;
      bound += sign * shifted / static_cast<long double>(j);
      // Condition of the partial sum as a whole; a single shifted moment near
      // zero (y close to E[R]) is harmless.
      bound_abs += abs_sum / static_cast<long double>(j);
      if (bound_abs > kMaxCondition * std::abs(bound)) break;
      if (wanted[j]) {
        const Candidate c{static_cast<double>(bound - m_k), j, y};
        if (std::isfinite(c.value) && (!found || c < best)) {
          best = c;
          found = true;
        }
      }
    }
  }
  if (!found) {
    throw Error(Errc::NoFeasibleGridPoint,
                "every (J, y) pair overflowed or cancelled at step " + std::to_string(k));
  }

  ErrorReport report;
  report.k = k;
  report.expected_error = expected_error(moments, lb, k);
  report.log_error_ub = best.value;
  report.degree = best.degree;
  report.y = best.y;
  return report;
}

double log_taylor(double x, double y, unsigned degree) {
  if (!(x > 0.0) || !(y > 0.0)) throw Error(Errc::InvalidParams, "log_taylor needs x, y > 0");
  const long double u = (static_cast<long double>(x) - y) / y;
  long double power = 1.0L, sum = std::log(static_cast<long double>(y));
  for (unsigned j = 1; j <= degree; ++j) {
    power *= u;
    sum += (j % 2 == 1 ? power : -power) / j;
  }
  return static_cast<double>(sum);
}

ErrorReport log_error_upper_bound(const InvestmentSchedule& schedule, const GbmParams& params,
                                  std::size_t k, const LogErrorGrid& grid) {
  const unsigned n = std::max(1u, grid.max_degree());
  return log_error_upper_bound(moments_recursive(schedule, params, k, n),
                               lower_bound_recursive(schedule, params, k), k, grid);
}

std::vector<ErrorReport> error_profile(const InvestmentSchedule& schedule,
                                       const GbmParams& params, std::size_t k_max,
                                       const LogErrorGrid& grid) {
  const unsigned n = std::max(1u, grid.max_degree());
  const auto moments = moments_recursive(schedule, params, k_max, n);
  const auto lb = lower_bound_recursive(schedule, params, k_max);
  std::vector<ErrorReport> out;
  out.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    out.push_back(log_error_upper_bound(moments, lb, k, grid));
  }
  return out;
}

double relative_error_bound(const ErrorReport& report) noexcept { return report.log_error_ub; }

LumpSumDiscount lump_sum_discount(const InvestmentSchedule& schedule, const GbmParams& params,
                                  const LowerBoundSequence& lb, std::size_t k) {
  schedule.require_steps(k);
  const auto& law = lb.law(k);
  const double total = schedule.invested_through(k - 1);
  LumpSumDiscount d;
  d.s = law.log_var / params.variance();
  d.size_ratio = std::exp(law.log_mean - params.mu() * d.s);
  d.x = total * d.size_ratio;
  d.size_ratio_literal = d.x * total;
  d.time_ratio = d.s / schedule.time(k);
  return d;
}

LumpSumDiscount lump_sum_discount(const InvestmentSchedule& schedule, const GbmParams& params,
                                  std::size_t k) {
  return lump_sum_discount(schedule, params, lower_bound_recursive(schedule, params, k), k);
}

double lsd_limit(double mu) {
  if (!(mu > 0.0)) throw Error(Errc::NonPositiveDrift, "LSD limit requires mu > 0");
  // (e^{2mu} + 2e^mu) / (e^{2mu} - 1) = (1 + 2e^{-mu}) / (1 - e^{-2mu})
  const double ratio = (1.0 + 2.0 * std::exp(-mu)) / -std::expm1(-2.0 * mu);
  return std::exp(mu * ratio) / std::expm1(mu);
}

}  // namespace dcalb
