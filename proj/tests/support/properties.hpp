#pragma once

// Randomized property suites shared by the property tests and the acceptance
// gate. Each returns the number of instances checked and the failures found.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dcalb/error_lsd.hpp"
#include "dcalb/lower_bound.hpp"
#include "dcalb/mc_oracle.hpp"
#include "dcalb/moments.hpp"
#include "dcalb/philox.hpp"
#include "dcalb/schedule.hpp"
#include "dcalb/verify.hpp"

namespace dcalb::testing {

struct SuiteResult {
  std::size_t instances = 0;
  std::size_t failures = 0;
  double worst = 0.0;  // suite-specific worst slack or deviation
  std::string first_failure;

  void fail(std::string what) {
    if (failures++ == 0) first_failure = std::move(what);
  }
};

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline void fail_msg(SuiteResult& r, const char* what, double a, double b, double c) {
  r.fail(std::string(what) + " at (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
         std::to_string(c) + ")");
}

// (a + c)(x / a)^{a / (a + c)} <= x + c, with equality at x = a.
inline SuiteResult concavity_suite(std::uint64_t seed, std::size_t n) {
  PhiloxUniform rng(seed, 101);
  SuiteResult r;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::exp(rng.uniform(-5.0, 5.0));
    const double c = std::exp(rng.uniform(-5.0, 5.0));
    const double x = std::exp(rng.uniform(-8.0, 8.0));
    const double b = a / (a + c);
    const double lhs = (a + c) * std::pow(x / a, b);
    const double rhs = x + c;
    ++r.instances;
    r.worst = std::max(r.worst, (lhs - rhs) / rhs);
    if (lhs > rhs * (1.0 + 1e-12)) fail_msg(r, "concavity", a, c, x);
    const double at_a = (a + c) * std::pow(a / a, b);
    if (rel_diff(at_a, a + c) > 1e-12) fail_msg(r, "equality", a, c, a);
  }
  return r;
}

// T_J(x) >= log x - 1e-12 for odd J <= 21 on a log grid over (0, 20 y].
inline SuiteResult taylor_dominance_suite(std::uint64_t seed, std::size_t n) {
  PhiloxUniform rng(seed, 102);
  SuiteResult r;
  r.worst = -1e300;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = std::exp(rng.uniform(-3.0, 3.0));
    const auto degree = static_cast<unsigned>(2 * rng.integer(0, 10) + 1);
    ++r.instances;
    for (int g = 0; g <= 200; ++g) {
      const double x = 20.0 * y * std::exp(-12.0 * g / 200.0);
      const double slack = std::log(x) - log_taylor(x, y, degree);
      r.worst = std::max(r.worst, slack);
      if (slack > 1e-12) {
        fail_msg(r, "taylor", x, y, degree);
        break;
      }
    }
  }
  return r;
}

// R_k / Z_k unchanged when every amount is scaled by lambda; moments and
// bound laws unchanged too.
inline SuiteResult scale_invariance_suite(std::uint64_t seed, std::size_t n) {
  PhiloxUniform rng(seed, 103);
  SuiteResult r;
  for (std::size_t i = 0; i < n; ++i) {
    const auto steps = static_cast<std::size_t>(rng.integer(1, 12));
    const auto schedule = random_schedule(rng, steps);
    const auto params = random_params(rng);
    const double lambda = std::exp(rng.uniform(-4.0, 4.0));
    const auto scaled = schedule.scaled(lambda);
    const SimulationConfig config{.n_paths = 1, .seed = seed + i, .schedule = schedule, .params = params};
    const auto factors = sample_path_factors(config, 0);
    const auto lb = lower_bound_recursive(schedule, params, steps);
    const auto lb_scaled = lower_bound_recursive(scaled, params, steps);
    const auto path = wealth_path(schedule, factors);
    const auto path_scaled = wealth_path(scaled, factors);
    const auto z = sample_z(schedule, lb, factors);
    const auto z_scaled = sample_z(scaled, lb_scaled, factors);
    const auto mom = moments_recursive(schedule, params, steps, 3);
    const auto mom_scaled = moments_recursive(scaled, params, steps, 3);
    ++r.instances;
    double worst = 0.0;
    double worst_moment = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
      worst = std::max({worst, rel_diff(path.returns[k - 1], path_scaled.returns[k - 1]),
                        rel_diff(z[k - 1], z_scaled[k - 1]),
                        rel_diff(path.returns[k - 1] / z[k - 1],
                                 path_scaled.returns[k - 1] / z_scaled[k - 1])});
      for (unsigned m = 1; m <= 3; ++m) {
        worst_moment = std::max(worst_moment, rel_diff(mom.at(k, m), mom_scaled.at(k, m)));
      }
      worst = std::max(worst, std::abs(lb.law(k).log_mean - lb_scaled.law(k).log_mean));
      worst = std::max(worst, std::abs(lb.law(k).log_var - lb_scaled.law(k).log_var));
    }
    r.worst = std::max(r.worst, worst);
    if (worst > 1e-12 || worst_moment > 1e-10) {
      fail_msg(r, "scale", lambda, worst, worst_moment);
    }
  }
  return r;
}

// DCA: m_k strictly increasing for mu > 0, strictly decreasing for mu < 0;
// v_k strictly increasing; k <= 500. For mu < 0 the v_k increments decay like
// e^{mu k} and drop below one ulp of v_k near |mu| k = 35, so past
// |mu| k = 30 v_k is only required not to decrease beyond rounding.
inline SuiteResult monotonicity_suite(std::uint64_t seed, std::size_t n) {
  PhiloxUniform rng(seed, 104);
  SuiteResult r;
  constexpr std::size_t kMax = 500;
  constexpr double kResolvable = 30.0;
  constexpr double kUlp = 0x1.0p-52;
  const auto dca = InvestmentSchedule::dca(kMax);
  for (std::size_t i = 0; i < n; ++i) {
    double mu = rng.uniform(-0.3, 0.3);
    if (std::abs(mu) < 1e-3) mu = std::copysign(1e-3, mu);
    const GbmParams params(mu, rng.uniform(0.05, 0.4));
    const auto lb = lower_bound_recursive(dca, params, kMax);
    ++r.instances;
    for (std::size_t k = 2; k <= kMax; ++k) {
      const auto& prev = lb.law(k - 1);
      const auto& cur = lb.law(k);
      const bool m_ok = mu > 0 ? cur.log_mean > prev.log_mean : cur.log_mean < prev.log_mean;
      const bool strict = mu > 0 || -mu * static_cast<double>(k) <= kResolvable;
      const bool v_ok = strict ? cur.log_var > prev.log_var
                               : cur.log_var >= prev.log_var * (1.0 - 4.0 * kUlp);
      if (!m_ok || !v_ok) {
        fail_msg(r, m_ok ? "v_k monotone" : "m_k monotone", mu, static_cast<double>(k),
                 m_ok ? cur.log_var - prev.log_var : cur.log_mean - prev.log_mean);
        break;
      }
    }
  }
  return r;
}

}  // namespace dcalb::testing
