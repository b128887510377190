#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dcalb {

/// One year of index data: average monthly close I, dividend per share D and
/// January CPI C.
struct AnnualRecord {
  int year = 0;
  double index_level = 0.0;
  double dividend = 0.0;
  double cpi = 0.0;
};

/// Header names for the four input columns, matched case-insensitively.
struct ColumnMap {
  std::string year = "year";
  std::string index_level = "I";
  std::string dividend = "D";
  std::string cpi = "C";

  /// Parses overrides like "year=Date,I=P,D=D,C=CPI"; unspecified keys keep
  /// their defaults.
  static ColumnMap parse(std::string_view spec);
};

/// Parses a UTF-8 CSV with a header row and '.' decimals. Errors carry the
/// 1-based line and column: ParseError, NonContiguousYears, NonPositiveValue.
std::vector<AnnualRecord> parse_annual_csv(std::string_view text, const ColumnMap& columns = {});
std::vector<AnnualRecord> load_annual_csv(const std::filesystem::path& path,
                                          const ColumnMap& columns = {});

struct ReturnSeries {
  std::vector<int> years;
  std::vector<double> returns;
  std::vector<double> log_returns;
};

/// Real total return for year n: ((I_{n+1} + D_n) / I_n) (C_n / C_{n+1}).
ReturnSeries inflation_adjusted_returns(std::span<const AnnualRecord> records);

enum class KsVariant {
  Asymptotic,  // Kolmogorov limit law, parameters treated as known
  Lilliefors,  // estimated-parameter correction (Dallal-Wilkinson approximation)
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// sup |F_n - F| against N(mean, sd^2), asymptotic Kolmogorov p-value.
KsResult ks_test_normal(std::span<const double> sample, double mean, double sd);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

/// Lilliefors p-value for statistic d on n observations.
double lilliefors_p_value(double d, std::size_t n);

struct FitResult {
  double mu_hat = 0.0;
  double sigma_hat = 0.0;  // n - 1 denominator
  std::size_t n_obs = 0;
  double ks_statistic = 0.0;
  double ks_p_value = 0.0;  // per `variant`
  double ks_p_value_asymptotic = 0.0;
  double ks_p_value_lilliefors = 0.0;
  KsVariant variant = KsVariant::Asymptotic;
};

/// Sample mean and standard deviation of the log-returns, plus a KS test of
/// the log-returns against the fitted normal. Needs at least 10 observations.
FitResult fit_gbm(const ReturnSeries& series, KsVariant variant = KsVariant::Asymptotic);
FitResult fit_log_returns(std::span<const double> log_returns,
                          KsVariant variant = KsVariant::Asymptotic);

struct Correlogram {
  std::vector<double> acf;   // lags 1..max_lag
  std::vector<double> pacf;  // lags 1..max_lag
  double band = 0.0;         // 1.96 / sqrt(n)
  std::size_t n_obs = 0;
};

/// Biased sample ACF and Durbin-Levinson PACF. Throws Error{LagTooLarge}
/// unless 1 <= max_lag < n / 2.
Correlogram acf_pacf(std::span<const double> series, std::size_t max_lag);

struct QqPoint {
  double theoretical;  // standard normal quantile at (i - 0.5) / n
  double sample;       // i-th order statistic, standardized
};
std::vector<QqPoint> normal_qq(std::span<const double> sample);

}  // namespace dcalb
