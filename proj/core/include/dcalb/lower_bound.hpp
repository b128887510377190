#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dcalb/schedule.hpp"

namespace dcalb {

/// Laws of the log-normal lower bound Z_k <= R_k for k = 1..steps(), plus the
/// linearization point a_k and weight b_k = a_k / (a_k + c_{k-1}) for k >= 2.
class LowerBoundSequence {
public:
  std::size_t steps() const noexcept { return laws_.size(); }

  const LogNormalLaw& law(std::size_t k) const;
  std::span<const LogNormalLaw> laws() const noexcept { return laws_; }

  double a(std::size_t k) const;
  double log_a(std::size_t k) const;
  double b(std::size_t k) const;
  // log(a_k + c_{k-1})
  double log_a_plus_c(std::size_t k) const;

private:
  friend LowerBoundSequence lower_bound_recursive(const InvestmentSchedule&, const GbmParams&,
                                                  std::size_t);
  struct Aux {
    double log_a;
    double log_a_plus_c;
    double b;
  };
  const Aux& aux(std::size_t k) const;

  std::vector<LogNormalLaw> laws_;
  std::vector<Aux> aux_;  // aux_[k - 2] for k >= 2
};

/// m_1 = mu t_1, v_1 = sigma^2 t_1, and for k >= 2
///   a_k = exp(m_{k-1}) sum_{j<=k-2} c_j,  b_k = a_k / (a_k + c_{k-1}),
///   m_k = log((a_k + c_{k-1}) / sum_{j<=k-1} c_j) + mu (t_k - t_{k-1}),
///   v_k = b_k^2 v_{k-1} + sigma^2 (t_k - t_{k-1}).
/// Well defined for any mu, including 0.
LowerBoundSequence lower_bound_recursive(const InvestmentSchedule& schedule,
                                         const GbmParams& params, std::size_t k_max);

/// Closed form of the recursion for unit amounts at t_k = k. Throws
/// Error{ZeroDrift} for mu == 0; use lower_bound_recursive there instead.
///
/// m_k = mu + log((e^{mu k} - 1) / (k (e^mu - 1))) is evaluated through
/// log(expm1(.)); v_k through the product form
/// sigma^2 (1 + sum_{j<k} ((e^{mu k} - e^{mu j}) / (e^{mu k} - 1))^2), whose
/// ratios stay bounded where e^{mu k} itself would overflow. O(k).
LogNormalLaw lower_bound_dca_closed(const GbmParams& params, std::size_t k);

/// Path-wise Z_1..Z_K for one sampled set of factors, using the analytic a_k.
std::vector<double> sample_z(const InvestmentSchedule& schedule, const LowerBoundSequence& lb,
                             std::span<const double> factors);

/// Terminal Z_K of sample_z.
double sample_Z(const InvestmentSchedule& schedule, const LowerBoundSequence& lb,
                std::span<const double> factors);

struct ShrinkFactors {
  double r1;  // log-mean of the continuous bound over mu
  double r2;  // log-variance of the continuous bound over sigma^2
};

/// r1 = log((e^mu - 1)/mu)/mu, r2 = ((2mu-3)e^{2mu} + 4e^mu - 1)/(2mu(e^mu-1)^2).
/// Series expansion near 0. Throws Error{ZeroDrift} at mu == 0.
ShrinkFactors r1_r2(double mu);

/// Bound law at t = 1 for continuous investment of one unit over [0, 1]:
/// (r1 mu, r2 sigma^2).
LogNormalLaw continuous_dca_law(const GbmParams& params);

double lb_quantile(const LogNormalLaw& law, double p);

/// log_mean / sqrt(log_var). Throws Error{DegenerateLaw} when log_var <= 0.
double lb_sharpe(const LogNormalLaw& law);

}  // namespace dcalb
