#include "dcalb/schedule.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dcalb/error.hpp"
#include "dcalb/normal.hpp"

namespace dcalb {

GbmParams::GbmParams(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  if (!std::isfinite(mu)) throw Error(Errc::InvalidParams, "mu must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(Errc::InvalidParams, "sigma must be positive and finite");
  }
}

double LogNormalLaw::mean() const { return std::exp(log_mean + 0.5 * log_var); }

double LogNormalLaw::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  const double z = std::log(x) - log_mean;
  if (log_var == 0.0) return z >= 0.0 ? 1.0 : 0.0;
  return normal_cdf(z / std::sqrt(log_var));
}

InvestmentSchedule validate_schedule(std::vector<double> times, std::vector<double> amounts,
                                     std::optional<double> terminal_time) {
  if (times.empty() || amounts.empty()) {
    throw Error(Errc::EmptySchedule, "schedule needs at least one investment");
  }
  if (times.size() != amounts.size()) {
    throw Error(Errc::LengthMismatch, "times and amounts differ in length");
  }
  if (times.front() != 0.0) throw Error(Errc::FirstTimeNotZero, "t_0 must be 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1]) || !std::isfinite(times[i])) {
      throw Error(Errc::NonMonotoneTimes,
                  "times must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
  if (terminal_time && !(*terminal_time > times.back() && std::isfinite(*terminal_time))) {
    throw Error(Errc::NonMonotoneTimes, "terminal time must exceed the last investment time");
  }
  for (std::size_t i = 0; i < amounts.size(); ++i) {
    if (!(amounts[i] > 0.0) || !std::isfinite(amounts[i])) {
      throw Error(Errc::NonPositiveAmount,
                  "amounts must be positive (index " + std::to_string(i) + ")");
    }
  }

  InvestmentSchedule s;
  s.cumulative_.resize(amounts.size());
  std::partial_sum(amounts.begin(), amounts.end(), s.cumulative_.begin());
  s.times_ = std::move(times);
  s.amounts_ = std::move(amounts);
  s.terminal_ = terminal_time;
  return s;
}

InvestmentSchedule InvestmentSchedule::dca(std::size_t steps, double amount) {
  if (steps == 0) throw Error(Errc::EmptySchedule, "DCA needs at least one step");
  std::vector<double> times(steps);
  std::iota(times.begin(), times.end(), 0.0);
  return validate_schedule(std::move(times), std::vector<double>(steps, amount),
                           static_cast<double>(steps));
}

InvestmentSchedule InvestmentSchedule::lump_sum(double horizon, double amount) {
  return validate_schedule({0.0}, {amount}, horizon);
}

double InvestmentSchedule::time(std::size_t k) const {
  if (k < times_.size()) return times_[k];
  if (k == times_.size() && terminal_) return *terminal_;
  throw Error(Errc::ScheduleTooShort, "no time t_" + std::to_string(k) + " in schedule");
}

InvestmentSchedule InvestmentSchedule::scaled(double lambda) const {
  std::vector<double> amounts(amounts_);
  for (auto& c : amounts) c *= lambda;
  return validate_schedule(times_, std::move(amounts), terminal_);
}

void InvestmentSchedule::require_steps(std::size_t k) const {
  if (k == 0 || k > steps()) {
    throw Error(Errc::ScheduleTooShort, "schedule supports " + std::to_string(steps()) +
                                            " steps, requested " + std::to_string(k));
  }
}

LogNormalLaw factor_law(const GbmParams& params, double t_prev, double t_next) {
  const double dt = t_next - t_prev;
  if (!(dt > 0.0)) throw Error(Errc::NonPositiveInterval, "t_next must exceed t_prev");
  return {params.mu() * dt, params.variance() * dt};
}

double log_lognormal_raw_moment(const LogNormalLaw& law, unsigned n) noexcept {
  const double dn = n;
  return dn * law.log_mean + 0.5 * dn * dn * law.log_var;
}

double lognormal_raw_moment(const LogNormalLaw& law, unsigned n) {
  if (n == 0) return 1.0;
  const double e = log_lognormal_raw_moment(law, n);
  if (e > std::log(std::numeric_limits<double>::max())) {
    throw Error(Errc::OverflowDetected, "E[X^" + std::to_string(n) + "] exceeds double range");
  }
  return std::exp(e);
}

WealthPath wealth_path(const InvestmentSchedule& schedule, std::span<const double> factors) {
  if (factors.empty() || factors.size() > schedule.size()) {
    throw Error(Errc::LengthMismatch, "need between 1 and " + std::to_string(schedule.size()) +
                                          " factors, got " + std::to_string(factors.size()));
  }
  WealthPath path;
  path.factors.assign(factors.begin(), factors.end());
  path.wealth.resize(factors.size());
  path.returns.resize(factors.size());
  double y = 0.0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!(factors[i] > 0.0)) {
      throw Error(Errc::NonPositiveFactor, "factor X_" + std::to_string(i + 1) + " not positive");
    }
    y = factors[i] * (y + schedule.amount(i));
    path.wealth[i] = y;
    path.returns[i] = y / schedule.invested_through(i);
  }
  return path;
}

}  // namespace dcalb
