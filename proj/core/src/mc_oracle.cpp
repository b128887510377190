#include "dcalb/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include <json.hpp>

#include "dcalb/error.hpp"
#include "dcalb/philox.hpp"

namespace dcalb {

namespace {

std::size_t resolve_steps(const SimulationConfig& config) {
  const std::size_t steps = config.steps == 0 ? config.schedule.steps() : config.steps;
  if (steps == 0 || steps > config.schedule.steps() || steps > config.schedule.size()) {
    throw Error(Errc::InvalidConfig, "schedule cannot cover " + std::to_string(steps) +
                                         " simulated steps");
  }
  return steps;
}

struct MeanSe {
  double mean;
  double var;  // sample variance, n - 1 denominator
  double se;
};

// Two-pass mean/variance in path order; the order is fixed, so the result is
// independent of how paths were split across threads.
template <typename F>
MeanSe mean_se(std::size_t n, F&& value) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += value(i);
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = value(i) - mean;
    ss += d * d;
  }
  const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  return {mean, var, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

std::vector<double> sample_path_factors(const SimulationConfig& config, std::uint64_t path) {
  const std::size_t steps = resolve_steps(config);
  std::vector<double> factors(steps);
  for (std::size_t k = 1; k <= steps; ++k) {
    const auto law = factor_law(config.params, config.schedule.time(k - 1),
                                config.schedule.time(k));
    const double z = gaussian_draw(config.seed, path, k);
    factors[k - 1] = std::exp(law.log_mean + std::sqrt(law.log_var) * z);
  }
  return factors;
}

double nearest_rank_quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw Error(Errc::InvalidConfig, "quantile of empty sample");
  if (!(p > 0.0 && p <= 1.0)) throw Error(Errc::InvalidProbability, "need 0 < p <= 1");
  const auto n = static_cast<double>(sorted.size());
  const auto rank = static_cast<std::size_t>(std::ceil(p * n));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

SimulationSummary simulate(const SimulationConfig& config) {
  if (config.n_paths == 0) throw Error(Errc::InvalidConfig, "n_paths must be at least 1");
  const std::size_t steps = resolve_steps(config);
  const std::size_t n = config.n_paths;
  const auto lb = lower_bound_recursive(config.schedule, config.params, steps);

  // Step-major storage: r[k-1][path].
  std::vector<std::vector<double>> r(steps, std::vector<double>(n));
  std::vector<std::vector<double>> z(steps, std::vector<double>(n));

  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const auto factors = sample_path_factors(config, p);
      const auto path = wealth_path(config.schedule, factors);
      const auto zs = sample_z(config.schedule, lb, factors);
      for (std::size_t k = 0; k < steps; ++k) {
        r[k][p] = path.returns[k];
        z[k][p] = zs[k];
      }
    }
  };

  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::size_t>(n, 256))));
  if (threads == 1) {
    worker(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
  }

  SimulationSummary summary;
  summary.n_paths = n;
  summary.seed = config.seed;
  summary.mu = config.params.mu();
  summary.sigma = config.params.sigma();
  summary.per_step.reserve(steps);

  for (std::size_t k = 1; k <= steps; ++k) {
    const auto& rk = r[k - 1];
    const auto& zk = z[k - 1];
    StepSummary s;
    s.k = k;
    s.time = config.schedule.time(k);

    const auto rm = mean_se(n, [&](std::size_t i) { return rk[i]; });
    const auto zm = mean_se(n, [&](std::size_t i) { return zk[i]; });
    s.r_mean = rm.mean;
    s.r_var = rm.var;
    s.z_mean = zm.mean;
    s.z_var = zm.var;
    for (unsigned m = 1; m <= kSummaryMoments; ++m) {
      const auto mm = mean_se(n, [&](std::size_t i) { return std::pow(rk[i], m); });
      s.r_moments.push_back(mm.mean);
      s.r_moment_se.push_back(mm.se);
    }
    const auto lr = mean_se(n, [&](std::size_t i) { return std::log(rk[i]); });
    s.log_r_mean = lr.mean;
    s.log_r_se = lr.se;
    const auto err = mean_se(n, [&](std::size_t i) { return rk[i] - zk[i]; });
    s.error_mean = err.mean;
    s.error_se = err.se;
    const auto rel = mean_se(n, [&](std::size_t i) { return 1.0 - zk[i] / rk[i]; });
    s.relative_error_mean = rel.mean;
    s.relative_error_se = rel.se;
    const auto lerr = mean_se(n, [&](std::size_t i) { return std::log(rk[i]) - std::log(zk[i]); });
    s.log_error_mean = lerr.mean;
    s.log_error_se = lerr.se;

    s.worst_margin = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double margin = zk[i] - rk[i];
      s.worst_margin = std::max(s.worst_margin, margin);
      if (margin > kDominanceTolerance) ++s.violations;
    }
    summary.violations += s.violations;
    summary.worst_margin =
        k == 1 ? s.worst_margin : std::max(summary.worst_margin, s.worst_margin);

    auto rs = rk;
    auto zs = zk;
    std::sort(rs.begin(), rs.end());
    std::sort(zs.begin(), zs.end());
    for (double q : kSummaryQuantiles) {
      s.r_quantiles.push_back(nearest_rank_quantile(rs, q));
      s.z_quantiles.push_back(nearest_rank_quantile(zs, q));
    }
    if (config.retain_samples) summary.sorted_returns.push_back(std::move(rs));
    summary.per_step.push_back(std::move(s));

    // Free the per-step buffers as we go.
    std::vector<double>().swap(r[k - 1]);
    std::vector<double>().swap(z[k - 1]);
  }
  return summary;
}

CdfDominanceReport empirical_cdf_dominance(const SimulationSummary& summary,
                                           const LowerBoundSequence& lb,
                                           const std::vector<double>& x_grid, double delta) {
  if (summary.sorted_returns.empty()) {
    throw Error(Errc::InvalidConfig, "CDF dominance needs retained samples");
  }
  CdfDominanceReport report;
  report.delta = delta;
  report.epsilon =
      std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(summary.n_paths)));
  report.worst_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= summary.sorted_returns.size(); ++k) {
    const auto& sorted = summary.sorted_returns[k - 1];
    if (sorted.empty()) continue;
    const auto& law = lb.law(k);
    for (double x : x_grid) {
      const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
      const double empirical = static_cast<double>(count) / static_cast<double>(sorted.size());
      const double analytic = law.cdf(x);
      ++report.points;
      report.worst_gap = std::max(report.worst_gap, empirical - analytic);
      if (analytic < empirical - report.epsilon) {
        report.violations.push_back({k, x, analytic, empirical});
      }
    }
  }
  return report;
}

std::string summary_to_json(const SimulationSummary& summary) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = kSummarySchema;
  j["schema_version"] = kSummarySchemaVersion;
  j["prng"] = kPrngName;
  j["prng_version"] = kPrngVersion;
  j["normal_sampler"] = "inverse-cdf";
  j["quantile_method"] = "nearest-rank";
  j["n_paths"] = summary.n_paths;
  j["seed"] = summary.seed;
  j["mu_per_year"] = summary.mu;
  j["sigma_per_sqrt_year"] = summary.sigma;
  j["quantile_levels"] = kSummaryQuantiles;
  j["dominance_tolerance"] = kDominanceTolerance;
  j["violations"] = summary.violations;
  j["worst_margin"] = summary.worst_margin;
  ordered_json steps = ordered_json::array();
  for (const auto& s : summary.per_step) {
    ordered_json e;
    e["k"] = s.k;
    e["time_years"] = s.time;
    e["r_mean"] = s.r_mean;
    e["r_var"] = s.r_var;
    e["z_mean"] = s.z_mean;
    e["z_var"] = s.z_var;
    e["r_moments"] = s.r_moments;
    e["r_moment_se"] = s.r_moment_se;
    e["log_r_mean"] = s.log_r_mean;
    e["log_r_se"] = s.log_r_se;
    e["error_mean"] = s.error_mean;
    e["error_se"] = s.error_se;
    e["relative_error_mean"] = s.relative_error_mean;
    e["relative_error_se"] = s.relative_error_se;
    e["log_error_mean"] = s.log_error_mean;
    e["log_error_se"] = s.log_error_se;
    e["r_quantiles"] = s.r_quantiles;
    e["z_quantiles"] = s.z_quantiles;
    e["violations"] = s.violations;
    e["worst_margin"] = s.worst_margin;
    steps.push_back(std::move(e));
  }
  j["steps"] = std::move(steps);
  return j.dump(2) + "\n";
}

SimulationSummary summary_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != kSummarySchema ||
        j.at("schema_version").get<int>() != kSummarySchemaVersion) {
      throw Error(Errc::ParseError, "unsupported summary schema");
    }
    SimulationSummary s;
    s.n_paths = j.at("n_paths").get<std::size_t>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.mu = j.at("mu_per_year").get<double>();
    s.sigma = j.at("sigma_per_sqrt_year").get<double>();
    s.violations = j.at("violations").get<std::size_t>();
    s.worst_margin = j.at("worst_margin").get<double>();
    for (const auto& e : j.at("steps")) {
      StepSummary st;
      st.k = e.at("k").get<std::size_t>();
      st.time = e.at("time_years").get<double>();
      st.r_mean = e.at("r_mean").get<double>();
      st.r_var = e.at("r_var").get<double>();
      st.z_mean = e.at("z_mean").get<double>();
      st.z_var = e.at("z_var").get<double>();
      st.r_moments = e.at("r_moments").get<std::vector<double>>();
      st.r_moment_se = e.at("r_moment_se").get<std::vector<double>>();
      st.log_r_mean = e.at("log_r_mean").get<double>();
      st.log_r_se = e.at("log_r_se").get<double>();
      st.error_mean = e.at("error_mean").get<double>();
      st.error_se = e.at("error_se").get<double>();
      st.relative_error_mean = e.at("relative_error_mean").get<double>();
      st.relative_error_se = e.at("relative_error_se").get<double>();
      st.log_error_mean = e.at("log_error_mean").get<double>();
      st.log_error_se = e.at("log_error_se").get<double>();
      st.r_quantiles = e.at("r_quantiles").get<std::vector<double>>();
      st.z_quantiles = e.at("z_quantiles").get<std::vector<double>>();
      st.violations = e.at("violations").get<std::size_t>();
      st.worst_margin = e.at("worst_margin").get<double>();
      s.per_step.push_back(std::move(st));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

}  // namespace dcalb
