#include "dcalb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dcalb/error_lsd.hpp"
#include "dcalb/lower_bound.hpp"
#include "dcalb/mc_oracle.hpp"
#include "dcalb/moments.hpp"
#include "dcalb/table.hpp"

namespace dcalb {

namespace {

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

const GbmParams kSpParams{0.0658, 0.1690};

CheckResult check_lb_closed_form() {
  double worst = 0.0;
  for (double mu : {-0.0658, 0.0658, 0.2}) {
    const GbmParams params(mu, 0.1690);
    const auto lb = lower_bound_recursive(InvestmentSchedule::dca(200), params, 200);
    for (std::size_t k = 1; k <= 200; ++k) {
      const auto closed = lower_bound_dca_closed(params, k);
      worst = std::max({worst, rel_diff(closed.log_mean, lb.law(k).log_mean),
                        rel_diff(closed.log_var, lb.law(k).log_var)});
    }
  }
  return {"lower_bound_closed_vs_recursive", worst <= 1e-12,
          fmt("max rel diff %.3e (tol 1e-12), mu in {-0.0658, 0.0658, 0.2}, k = 1..200", worst)};
}

CheckResult check_moment_forms(std::uint64_t seed) {
  PhiloxUniform rng(seed, 1);
  double worst = 0.0;
  for (int instance = 0; instance < 50; ++instance) {
    const auto steps = static_cast<std::size_t>(rng.integer(1, 6));
    const auto schedule = random_schedule(rng, steps);
    const auto params = random_params(rng);
    const auto table = moments_recursive(schedule, params, steps, 5);
    for (std::size_t k = 1; k <= steps; ++k) {
      for (unsigned n = 1; n <= 5; ++n) {
        worst = std::max(worst, rel_diff(table.at(k, n), moments_closed_form(schedule, params, k, n)));
      }
    }
  }
  return {"moments_recursive_vs_closed_form", worst <= 1e-10,
          fmt("max rel diff %.3e (tol 1e-10), 50 random instances, k <= 6, n <= 5", worst)};
}

CheckResult check_dominance(const std::string& name, const SimulationSummary& s) {
  return {name, s.violations == 0,
          "violations " + std::to_string(s.violations) + fmt(", worst Z - R %.3e (tol 1e-9)", s.worst_margin)};
}

}  // namespace

InvestmentSchedule random_schedule(PhiloxUniform& rng, std::size_t steps) {
  std::vector<double> times(steps), amounts(steps);
  double t = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    times[i] = t;
    amounts[i] = rng.uniform(0.1, 3.0);
    t += rng.uniform(0.2, 2.0);
  }
  return validate_schedule(std::move(times), std::move(amounts), t);
}

GbmParams random_params(PhiloxUniform& rng) {
  const double mu = rng.uniform(-0.3, 0.3);
  return GbmParams(mu, rng.uniform(0.05, 0.4));
}

bool VerifyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  out << "dcalb verify " << version() << " seed=" << seed << " paths=" << paths
      << " prng=" << kPrngName << " v" << kPrngVersion << '\n';
  std::size_t n_pass = 0;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    n_pass += c.passed ? 1 : 0;
  }
  out << "result: " << (passed() ? "PASS" : "FAIL") << " (" << n_pass << '/' << checks.size()
      << " checks passed)\n";
  return out.str();
}

VerifyReport run_verify(const VerifyOptions& options) {
  VerifyReport report;
  report.seed = options.seed;
  report.paths = options.paths;
  auto& checks = report.checks;

  checks.push_back(check_lb_closed_form());
  checks.push_back(check_moment_forms(options.seed));

  constexpr std::size_t kSteps = 20;
  const auto dca = InvestmentSchedule::dca(kSteps);
  const auto summary = simulate({.n_paths = options.paths,
                                 .seed = options.seed,
                                 .schedule = dca,
                                 .params = kSpParams,
                                 .threads = options.threads,
                                 .retain_samples = true});
  checks.push_back(check_dominance("dominance_dca_k20", summary));

  {
    PhiloxUniform rng(options.seed, 2);
    const auto schedule = random_schedule(rng, 15);
    const auto params = random_params(rng);
    const auto general = simulate({.n_paths = options.paths,
                                   .seed = options.seed + 1,
                                   .schedule = schedule,
                                   .params = params,
                                   .threads = options.threads});
    checks.push_back(check_dominance("dominance_random_schedule_k15", general));
  }

  const auto moments = moments_recursive(dca, kSpParams, kSteps, LogErrorGrid::defaults().max_degree());
  const auto lb = lower_bound_recursive(dca, kSpParams, kSteps);

  {
    double worst = 0.0;
    for (std::size_t k : {5u, 10u, 20u}) {
      const auto& step = summary.per_step[k - 1];
      for (unsigned n = 1; n <= 3; ++n) {
        worst = std::max(worst, std::abs(step.r_moments[n - 1] - moments.at(k, n)) /
                                    step.r_moment_se[n - 1]);
      }
    }
    checks.push_back({"mc_moments", worst <= 3.0,
                      fmt("max |MC - exact| / se %.3f (tol 3), k in {5, 10, 20}, n <= 3", worst)});
  }

  {
    const std::size_t k = 10;
    const auto& law = lb.law(k);
    std::vector<double> grid;
    for (int i = 1; i < 200; ++i) grid.push_back(lb_quantile(law, i / 200.0));
    SimulationSummary only_k = summary;
    for (std::size_t j = 0; j < only_k.sorted_returns.size(); ++j) {
      if (j + 1 != k) only_k.sorted_returns[j].clear();
    }
    const auto cdf = empirical_cdf_dominance(only_k, lb, grid);
    checks.push_back({"cdf_dominance_dca_k10", cdf.violations.empty(),
                      "violations " + std::to_string(cdf.violations.size()) +
                          fmt(", worst F_n - P(Z <= x) %.3e, epsilon %.3e", cdf.worst_gap, cdf.epsilon)});
  }

  {
    double worst_error = 0.0;
    double worst_relative = -1e300;
    double worst_log = -1e300;
    const auto grid = LogErrorGrid::defaults();
    for (std::size_t k : {5u, 10u, 20u}) {
      const auto& step = summary.per_step[k - 1];
      const auto bound = log_error_upper_bound(moments, lb, k, grid);
      worst_error = std::max(worst_error,
                             std::abs(step.error_mean - bound.expected_error) / step.error_se);
      worst_relative = std::max(worst_relative, step.relative_error_mean - 3.0 * step.relative_error_se -
                                                    relative_error_bound(bound));
      worst_log = std::max(worst_log, step.log_error_mean - 3.0 * step.log_error_se - bound.log_error_ub);
    }
    checks.push_back({"expected_error_vs_mc", worst_error <= 3.0,
                      fmt("max |MC - exact| / se %.3f (tol 3), k in {5, 10, 20}", worst_error)});
    checks.push_back({"relative_error_below_bound", worst_relative <= 0.0,
                      fmt("max (MC - 3 se) - bound %.3e (must be <= 0)", worst_relative)});
    checks.push_back({"log_error_below_bound", worst_log <= 0.0,
                      fmt("max (MC - 3 se) - bound %.3e (must be <= 0)", worst_log)});
  }

  {
    constexpr std::size_t n = 1'000'000;
    std::vector<double> times(n), amounts(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) times[i] = static_cast<double>(i) / static_cast<double>(n);
    const auto schedule = validate_schedule(std::move(times), std::move(amounts), 1.0);
    const auto discrete = lower_bound_recursive(schedule, kSpParams, n).law(n);
    const auto limit = continuous_dca_law(kSpParams);
    const double gap = std::max(std::abs(discrete.log_mean - limit.log_mean),
                                std::abs(discrete.log_var - limit.log_var));
    checks.push_back({"continuous_limit", gap <= 1e-5,
                      fmt("max |discrete(n = 1e6) - continuous| %.3e (tol 1e-5)", gap)});
  }

  {
    const auto r = r1_r2(1e-6);
    const double gap = std::max(std::abs(r.r1 - 0.5), std::abs(r.r2 - 1.0 / 3.0));
    checks.push_back({"r1_r2_small_drift", gap < 1e-4,
                      fmt("max(|r1 - 1/2|, |r2 - 1/3|) at mu = 1e-6: %.3e (tol 1e-4)", gap)});
  }

  {
    constexpr std::size_t k = 500;
    const auto schedule = InvestmentSchedule::dca(k);
    const auto d = lump_sum_discount(schedule, kSpParams, k);
    const double limit = lsd_limit(kSpParams.mu());
    const double rel = rel_diff(d.x, limit);
    checks.push_back({"lsd_limit_k500", rel <= 1e-6,
                      fmt("x_500 %.12g vs limit %.12g, rel diff %.3e (tol 1e-6)", d.x, limit, rel)});
  }

  return report;
}

}  // namespace dcalb
