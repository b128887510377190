#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace dcalb {

// Steps are 1-indexed throughout the public API: step k covers [t_{k-1}, t_k],
// its factor is X_k, and R_k is the return at t_k. Containers indexed from 0
// hold step k at position k - 1.

/// Drift and volatility of the log-price: log X(t) ~ N(mu t, sigma^2 t),
/// with time in years.
class GbmParams {
public:
  GbmParams(double mu, double sigma);

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }
  double variance() const noexcept { return sigma_ * sigma_; }

private:
  double mu_;
  double sigma_;
};

/// Law of a positive random variable whose logarithm is N(log_mean, log_var).
struct LogNormalLaw {
  double log_mean = 0.0;
  double log_var = 0.0;

  double mean() const;
  double cdf(double x) const;
};

/// Predetermined investing schedule: amount c_j invested at time t_j.
///
/// The last investment time does not determine how far the schedule can be
/// evaluated, so an optional terminal time t_N > t_{N-1} may be attached. A
/// schedule with N investments supports N - 1 analytic steps, or N with a
/// terminal time. A single investment plus a terminal time is a lump sum.
class InvestmentSchedule {
public:
  static InvestmentSchedule dca(std::size_t steps, double amount = 1.0);
  static InvestmentSchedule lump_sum(double horizon, double amount = 1.0);

  std::size_t size() const noexcept { return amounts_.size(); }
  std::size_t steps() const noexcept { return size() - 1 + (terminal_ ? 1 : 0); }

  // t_k for k = 0..steps().
  double time(std::size_t k) const;
  double amount(std::size_t j) const { return amounts_.at(j); }

  /// sum_{i <= j} c_i.
  double invested_through(std::size_t j) const { return cumulative_.at(j); }

  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> amounts() const noexcept { return amounts_; }
  std::optional<double> terminal_time() const noexcept { return terminal_; }

  /// Same times, every amount multiplied by lambda > 0.
  InvestmentSchedule scaled(double lambda) const;

  /// Throws Error{ScheduleTooShort} unless steps() >= k.
  void require_steps(std::size_t k) const;

private:
  friend InvestmentSchedule validate_schedule(std::vector<double>, std::vector<double>,
                                              std::optional<double>);
  InvestmentSchedule() = default;

  std::vector<double> times_;
  std::vector<double> amounts_;
  std::vector<double> cumulative_;
  std::optional<double> terminal_;
};

InvestmentSchedule validate_schedule(std::vector<double> times, std::vector<double> amounts,
                                     std::optional<double> terminal_time = std::nullopt);

/// Law of X_k = X(t_next) / X(t_prev).
LogNormalLaw factor_law(const GbmParams& params, double t_prev, double t_next);

/// exp(n m + n^2 v / 2). Throws Error{OverflowDetected} past the double range.
double lognormal_raw_moment(const LogNormalLaw& law, unsigned n);
double log_lognormal_raw_moment(const LogNormalLaw& law, unsigned n) noexcept;

struct WealthPath {
  std::vector<double> factors;  // X_k
  std::vector<double> wealth;   // Y_k
  std::vector<double> returns;  // R_k = Y_k / sum_{j<k} c_j
};

/// Y_1 = c_0 X_1 and Y_k = X_k (Y_{k-1} + c_{k-1}). Needs one factor per step
/// and at most one factor per investment.
WealthPath wealth_path(const InvestmentSchedule& schedule, std::span<const double> factors);

}  // namespace dcalb
