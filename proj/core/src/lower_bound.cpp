#include "dcalb/lower_bound.hpp"

#include <cmath>
#include <string>

#include "dcalb/error.hpp"
#include "dcalb/normal.hpp"

namespace dcalb {

const LogNormalLaw& LowerBoundSequence::law(std::size_t k) const {
  if (k == 0 || k > laws_.size()) {
    throw Error(Errc::ScheduleTooShort, "no lower bound law for step " + std::to_string(k));
  }
  return laws_[k - 1];
}

const LowerBoundSequence::Aux& LowerBoundSequence::aux(std::size_t k) const {
  if (k < 2 || k > laws_.size()) {
    throw Error(Errc::ScheduleTooShort, "a_k, b_k defined for 2 <= k <= " +
                                            std::to_string(laws_.size()));
  }
  return aux_[k - 2];
}

double LowerBoundSequence::a(std::size_t k) const { return std::exp(aux(k).log_a); }
double LowerBoundSequence::log_a(std::size_t k) const { return aux(k).log_a; }
double LowerBoundSequence::b(std::size_t k) const { return aux(k).b; }
double LowerBoundSequence::log_a_plus_c(std::size_t k) const { return aux(k).log_a_plus_c; }

LowerBoundSequence lower_bound_recursive(const InvestmentSchedule& schedule,
                                         const GbmParams& params, std::size_t k_max) {
  schedule.require_steps(k_max);
  LowerBoundSequence seq;
  seq.laws_.reserve(k_max);
  seq.aux_.reserve(k_max > 0 ? k_max - 1 : 0);

  seq.laws_.push_back(factor_law(params, schedule.time(0), schedule.time(1)));
  for (std::size_t k = 2; k <= k_max; ++k) {
    const auto& prev = seq.laws_.back();
    const auto step = factor_law(params, schedule.time(k - 1), schedule.time(k));
    const double log_a = prev.log_mean + std::log(schedule.invested_through(k - 2));
    const double log_a_plus_c = log_add_exp(log_a, std::log(schedule.amount(k - 1)));
    const double b = std::exp(log_a - log_a_plus_c);
    seq.aux_.push_back({log_a, log_a_plus_c, b});
    seq.laws_.push_back({log_a_plus_c - std::log(schedule.invested_through(k - 1)) +
                             step.log_mean,
                         b * b * prev.log_var + step.log_var});
  }
  return seq;
}

LogNormalLaw lower_bound_dca_closed(const GbmParams& params, std::size_t k) {
  const double mu = params.mu();
  if (mu == 0.0) throw Error(Errc::ZeroDrift, "closed form requires mu != 0");
  if (k == 0) throw Error(Errc::ScheduleTooShort, "k must be at least 1");
  const double dk = static_cast<double>(k);

  double m = 0.0;
  if (mu > 0.0) {
    m = mu + ((log_expm1(mu * dk) - log_expm1(mu)) - std::log(dk));
  } else {
    m = mu + ((std::log(-std::expm1(mu * dk)) - std::log(-std::expm1(mu))) - std::log(dk));
  }

  // Ratios (e^{mu k} - e^{mu j}) / (e^{mu k} - 1) for j = 1..k-1.
  double sum = 0.0;
  double comp = 0.0;
  const double denom_log = mu > 0.0 ? log_expm1(mu * dk) : 0.0;
  const double denom = mu > 0.0 ? 0.0 : std::expm1(mu * dk);
  for (std::size_t j = 1; j < k; ++j) {
    const double dj = static_cast<double>(j);
    double ratio = 0.0;
    if (mu > 0.0) {
      ratio = std::exp(mu * dj + log_expm1(mu * (dk - dj)) - denom_log);
    } else {
      ratio = std::exp(mu * dj) * std::expm1(mu * (dk - dj)) / denom;
    }
    const double y = ratio * ratio - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return {m, params.variance() * (1.0 + sum)};
}

std::vector<double> sample_z(const InvestmentSchedule& schedule, const LowerBoundSequence& lb,
                             std::span<const double> factors) {
  if (factors.empty() || factors.size() > lb.steps() || factors.size() > schedule.size()) {
    throw Error(Errc::LengthMismatch, "need between 1 and " + std::to_string(lb.steps()) +
                                          " factors, got " + std::to_string(factors.size()));
  }
  std::vector<double> z(factors.size());
  double log_z = std::log(factors[0]);
  z[0] = factors[0];
  for (std::size_t k = 2; k <= factors.size(); ++k) {
    if (!(factors[k - 1] > 0.0)) {
      throw Error(Errc::NonPositiveFactor, "factor X_" + std::to_string(k) + " not positive");
    }
    // Z_k = X_k / S_{k-1} (a_k + c_{k-1}) (Z_{k-1} S_{k-2} / a_k)^{b_k}
    log_z = std::log(factors[k - 1]) - std::log(schedule.invested_through(k - 1)) +
            lb.log_a_plus_c(k) +
            lb.b(k) * (log_z + std::log(schedule.invested_through(k - 2)) - lb.log_a(k));
    z[k - 1] = std::exp(log_z);
  }
  return z;
}

double sample_Z(const InvestmentSchedule& schedule, const LowerBoundSequence& lb,
                std::span<const double> factors) {
  return sample_z(schedule, lb, factors).back();
}

ShrinkFactors r1_r2(double mu) {
  if (mu == 0.0) throw Error(Errc::ZeroDrift, "r1, r2 require mu != 0");
  if (std::abs(mu) < 0.05) {
    const double m2 = mu * mu;
    const double r1 = 0.5 + mu / 24.0 - mu * m2 / 2880.0 + mu * m2 * m2 / 181440.0 -
                      mu * m2 * m2 * m2 / 9676800.0;
    const double r2 = 1.0 / 3.0 +
                      mu * (1.0 / 12.0 +
                            mu * (1.0 / 180.0 +
                                  mu * (-1.0 / 720.0 +
                                        mu * (-1.0 / 5040.0 +
                                              mu * (1.0 / 30240.0 +
                                                    mu * (1.0 / 151200.0 +
                                                          mu * (-1.0 / 1209600.0 +
                                                                mu * (-1.0 / 4790016.0))))))));
    return {r1, r2};
  }
  // Long double: the r2 expression cancels about three digits near |mu| = 0.05.
  const long double m = mu;
  const long double d = std::expm1(m);
  const long double r1 = mu > 50.0 ? (log_expm1(mu) - std::log(mu)) / m : std::log(d / m) / m;
  // ((2mu-3)e^{2mu} + 4e^mu - 1) / (2mu d^2) rearranged with e^mu = 1 + d.
  const long double ratio = (1.0L + d) / d;
  const long double r2 = ratio * ratio - 1.5L / m - 1.0L / (m * d);
  return {static_cast<double>(r1), static_cast<double>(r2)};
}

LogNormalLaw continuous_dca_law(const GbmParams& params) {
  const auto r = r1_r2(params.mu());
  return {r.r1 * params.mu(), r.r2 * params.variance()};
}

double lb_quantile(const LogNormalLaw& law, double p) {
  const double z = normal_quantile(p);
  return std::exp(law.log_mean + z * std::sqrt(law.log_var));
}

double lb_sharpe(const LogNormalLaw& law) {
  if (!(law.log_var > 0.0)) throw Error(Errc::DegenerateLaw, "Sharpe ratio needs log_var > 0");
  return law.log_mean / std::sqrt(law.log_var);
}

}  // namespace dcalb
