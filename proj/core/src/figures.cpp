#include "dcalb/figures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dcalb/error.hpp"
#include "dcalb/lower_bound.hpp"
#include "dcalb/normal.hpp"

namespace dcalb {

namespace {

std::vector<std::pair<std::string, std::string>> param_provenance(const GbmParams& p) {
  return {{"mu", format_number(p.mu())}, {"sigma", format_number(p.sigma())}};
}

std::vector<std::string> quantile_columns() {
  return {"z_q025", "z_q500", "z_q975", "logz_q025", "logz_q500", "logz_q975"};
}

}  // namespace

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) throw Error(Errc::InvalidParams, "bad grid");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

Table quantiles_table(const InvestmentSchedule& schedule, const GbmParams& params,
                      std::size_t k_max) {
  const auto lb = lower_bound_recursive(schedule, params, k_max);
  Table t;
  t.name = "quantiles";
  t.provenance = param_provenance(params);
  t.provenance.emplace_back("k", std::to_string(k_max));
  t.columns = {"k"};
  for (auto& c : quantile_columns()) t.columns.push_back(c);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const auto& law = lb.law(k);
    std::vector<double> row{static_cast<double>(k)};
    for (double p : kFigureQuantiles) row.push_back(lb_quantile(law, p));
    for (double p : kFigureQuantiles) {
      row.push_back(law.log_mean + normal_quantile(p) * std::sqrt(law.log_var));
    }
    t.add_row(std::move(row));
  }
  return t;
}

Table quantiles_table(const GbmParams& params, std::size_t k_max) {
  return quantiles_table(InvestmentSchedule::dca(k_max), params, k_max);
}

Table sharpe_table(const GbmParams& params, std::size_t k_max) {
  const auto lb = lower_bound_recursive(InvestmentSchedule::dca(k_max), params, k_max);
  Table t;
  t.name = "sharpe";
  t.provenance = param_provenance(params);
  t.provenance.emplace_back("k", std::to_string(k_max));
  t.columns = {"k", "log_mean", "log_var", "sharpe"};
  for (std::size_t k = 1; k <= k_max; ++k) {
    const auto& law = lb.law(k);
    t.add_row({static_cast<double>(k), law.log_mean, law.log_var, lb_sharpe(law)});
  }
  return t;
}

Table error_table(const GbmParams& params, std::size_t k_max, const LogErrorGrid& grid) {
  const auto reports = error_profile(InvestmentSchedule::dca(k_max), params, k_max, grid);
  Table t;
  t.name = "error";
  t.provenance = param_provenance(params);
  t.provenance.emplace_back("k", std::to_string(k_max));
  t.provenance.emplace_back("j_max", std::to_string(grid.max_degree()));
  t.provenance.emplace_back("y_points", std::to_string(grid.y_values.size()));
  t.columns = {"k", "expected_error", "log_error_ub", "argmin_j", "argmin_y"};
  for (const auto& r : reports) {
    t.add_row({static_cast<double>(r.k), r.expected_error, r.log_error_ub,
               static_cast<double>(r.degree), r.y});
  }
  return t;
}

Table lsd_path_table(const GbmParams& params, std::size_t k_max) {
  const auto schedule = InvestmentSchedule::dca(k_max);
  const auto lb = lower_bound_recursive(schedule, params, k_max);
  Table t;
  t.name = "lsd_path";
  t.provenance = param_provenance(params);
  t.provenance.emplace_back("k", std::to_string(k_max));
  t.columns = {"k", "x", "s", "size_ratio", "time_ratio", "size_ratio_literal"};
  for (std::size_t k = 1; k <= k_max; ++k) {
    const auto d = lump_sum_discount(schedule, params, lb, k);
    t.add_row({static_cast<double>(k), d.x, d.s, d.size_ratio, d.time_ratio,
               d.size_ratio_literal});
  }
  return t;
}

Table lsd_limit_table(const std::vector<double>& mu_grid) {
  Table t;
  t.name = "lsd_limit";
  t.columns = {"mu", "limit_x"};
  for (double mu : mu_grid) t.add_row({mu, lsd_limit(mu)});
  return t;
}

Table continuous_law_table(const GbmParams& params) {
  const auto r = r1_r2(params.mu());
  const auto law = continuous_dca_law(params);
  Table t;
  t.name = "continuous_law";
  t.provenance = param_provenance(params);
  t.columns = {"mu", "sigma", "log_mean", "log_var", "r1", "r2"};
  t.add_row({params.mu(), params.sigma(), law.log_mean, law.log_var, r.r1, r.r2});
  return t;
}

Table r1_r2_table(const std::vector<double>& mu_grid) {
  Table t;
  t.name = "r1_r2";
  t.columns = {"mu", "r1", "r2"};
  for (double mu : mu_grid) {
    const auto r = r1_r2(mu);
    t.add_row({mu, r.r1, r.r2});
  }
  return t;
}

InvestmentSchedule hybrid_constant_total(std::size_t horizon, double lump) {
  if (horizon < 2) throw Error(Errc::InvalidParams, "hybrid horizon must be at least 2");
  if (!(lump > 0.0 && lump < 1.0)) throw Error(Errc::NonPositiveAmount, "need 0 < c_0 < 1");
  std::vector<double> times(horizon), amounts(horizon);
  for (std::size_t i = 0; i < horizon; ++i) {
    times[i] = static_cast<double>(i);
    amounts[i] = i == 0 ? lump : (1.0 - lump) / static_cast<double>(horizon - 1);
  }
  return validate_schedule(std::move(times), std::move(amounts), static_cast<double>(horizon));
}

InvestmentSchedule hybrid_constant_lump(std::size_t horizon, double amount) {
  if (horizon < 2) throw Error(Errc::InvalidParams, "hybrid horizon must be at least 2");
  std::vector<double> times(horizon), amounts(horizon, amount);
  for (std::size_t i = 0; i < horizon; ++i) times[i] = static_cast<double>(i);
  amounts[0] = 1.0;
  return validate_schedule(std::move(times), std::move(amounts), static_cast<double>(horizon));
}

HybridPoint hybrid_point(const InvestmentSchedule& schedule, const GbmParams& params,
                         const LogErrorGrid& grid) {
  const std::size_t k = schedule.steps();
  const auto lb = lower_bound_recursive(schedule, params, k);
  const auto moments = moments_recursive(schedule, params, k, std::max(1u, grid.max_degree()));
  const auto report = log_error_upper_bound(moments, lb, k, grid);
  HybridPoint p{};
  const auto& law = lb.law(k);
  for (std::size_t i = 0; i < kFigureQuantiles.size(); ++i) {
    p.z_quantiles[i] = lb_quantile(law, kFigureQuantiles[i]);
    p.log_z_quantiles[i] = law.log_mean + normal_quantile(kFigureQuantiles[i]) * std::sqrt(law.log_var);
  }
  p.expected_error = report.expected_error;
  p.log_error_ub = report.log_error_ub;
  return p;
}

namespace {

Table hybrid_table(std::string name, std::string axis, const GbmParams& params,
                   const std::vector<std::size_t>& horizons,
                   const std::function<std::vector<double>(std::size_t)>& axis_values,
                   const std::function<InvestmentSchedule(std::size_t, double)>& make,
                   const std::function<bool(std::size_t, double)>& is_dca,
                   const LogErrorGrid& grid) {
  Table t;
  t.name = std::move(name);
  t.provenance = param_provenance(params);
  t.columns = {"T", axis, "is_dca"};
  for (auto& c : quantile_columns()) t.columns.push_back(c);
  t.columns.push_back("expected_error");
  t.columns.push_back("log_error_ub");
  for (std::size_t horizon : horizons) {
    for (double v : axis_values(horizon)) {
      const auto p = hybrid_point(make(horizon, v), params, grid);
      std::vector<double> row{static_cast<double>(horizon), v, is_dca(horizon, v) ? 1.0 : 0.0};
      row.insert(row.end(), std::begin(p.z_quantiles), std::end(p.z_quantiles));
      row.insert(row.end(), std::begin(p.log_z_quantiles), std::end(p.log_z_quantiles));
      row.push_back(p.expected_error);
      row.push_back(p.log_error_ub);
      t.add_row(std::move(row));
    }
  }
  return t;
}

}  // namespace

Table hybrid_constant_total_table(const GbmParams& params, const std::vector<std::size_t>& horizons,
                                  const std::vector<double>& lumps, const LogErrorGrid& grid) {
  return hybrid_table(
      "hybrid_constant_total", "c0", params, horizons,
      [&](std::size_t horizon) {
        std::vector<double> values(lumps);
        values.push_back(1.0 / static_cast<double>(horizon));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        return values;
      },
      hybrid_constant_total,
      [](std::size_t horizon, double c0) { return c0 == 1.0 / static_cast<double>(horizon); },
      grid);
}

Table hybrid_constant_lump_table(const GbmParams& params, const std::vector<std::size_t>& horizons,
                                 const std::vector<double>& amounts, const LogErrorGrid& grid) {
  return hybrid_table(
      "hybrid_constant_lump", "amount", params, horizons,
      [&](std::size_t) {
        std::vector<double> values(amounts);
        values.push_back(1.0);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        return values;
      },
      hybrid_constant_lump, [](std::size_t, double amount) { return amount == 1.0; }, grid);
}

Table fit_table(const FitResult& fit) {
  Table t;
  t.name = "fit";
  t.provenance.emplace_back(
      "ks_variant", fit.variant == KsVariant::Asymptotic ? "asymptotic" : "lilliefors");
  t.columns = {"mu_hat",       "sigma_hat",  "n_obs", "ks_statistic",
               "ks_p_value",   "ks_p_value_asymptotic", "ks_p_value_lilliefors"};
  t.add_row({fit.mu_hat, fit.sigma_hat, static_cast<double>(fit.n_obs), fit.ks_statistic,
             fit.ks_p_value, fit.ks_p_value_asymptotic, fit.ks_p_value_lilliefors});
  return t;
}

Table correlogram_table(const Correlogram& c) {
  Table t;
  t.name = "acf_pacf";
  t.provenance.emplace_back("n_obs", std::to_string(c.n_obs));
  t.columns = {"lag", "acf", "pacf", "band"};
  for (std::size_t h = 1; h <= c.acf.size(); ++h) {
    t.add_row({static_cast<double>(h), c.acf[h - 1], c.pacf[h - 1], c.band});
  }
  return t;
}

Table qq_table(const std::vector<QqPoint>& points) {
  Table t;
  t.name = "qq";
  t.columns = {"theoretical", "sample"};
  for (const auto& p : points) t.add_row({p.theoretical, p.sample});
  return t;
}

}  // namespace dcalb
