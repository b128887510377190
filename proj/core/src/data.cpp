#include "dcalb/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>

#include "dcalb/error.hpp"
#include "dcalb/normal.hpp"

namespace dcalb {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string where(std::size_t line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

template <typename T>
T parse_number(std::string_view field, std::size_t line, std::size_t column) {
  T value{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw Error(Errc::ParseError,
                "cannot parse '" + std::string(field) + "' at " + where(line, column));
  }
  return value;
}

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sd_of(std::span<const double> x, double mean) {
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

}  // namespace

ColumnMap ColumnMap::parse(std::string_view spec) {
  ColumnMap map;
  for (auto part : split(spec)) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::ParseError, "column mapping '" + std::string(part) + "' lacks '='");
    }
    const auto key = trim(part.substr(0, eq));
    const std::string value(trim(part.substr(eq + 1)));
    if (iequals(key, "year")) map.year = value;
    else if (iequals(key, "I")) map.index_level = value;
    else if (iequals(key, "D")) map.dividend = value;
    else if (iequals(key, "C")) map.cpi = value;
    else throw Error(Errc::ParseError, "unknown column key '" + std::string(key) + "'");
  }
  return map;
}

std::vector<AnnualRecord> parse_annual_csv(std::string_view text, const ColumnMap& columns) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto pos = text.find('\n', start);
      if (pos == std::string_view::npos) pos = text.size();
      auto line = text.substr(start, pos - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      start = pos + 1;
    }
  }
  // Skip a UTF-8 byte order mark and leading blank lines.
  std::size_t header_line = 0;
  while (header_line < lines.size() && trim(lines[header_line]).empty()) ++header_line;
  if (header_line == lines.size()) throw Error(Errc::ParseError, "empty input: no header row");
  auto header_text = lines[header_line];
  if (header_text.starts_with("\xEF\xBB\xBF")) header_text.remove_prefix(3);
  const auto header = split(header_text);

  auto find_column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (iequals(header[i], name)) return i;
    }
    throw Error(Errc::ParseError, "header lacks column '" + name + "' (line " +
                                      std::to_string(header_line + 1) + ")");
  };
  const std::size_t c_year = find_column(columns.year);
  const std::size_t c_index = find_column(columns.index_level);
  const std::size_t c_div = find_column(columns.dividend);
  const std::size_t c_cpi = find_column(columns.cpi);
  const std::size_t needed = std::max({c_year, c_index, c_div, c_cpi}) + 1;

  std::vector<AnnualRecord> records;
  for (std::size_t li = header_line + 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const std::size_t line_no = li + 1;
    const auto fields = split(lines[li]);
    if (fields.size() < needed) {
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + " has " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(needed));
    }
    AnnualRecord rec;
    rec.year = parse_number<int>(fields[c_year], line_no, c_year + 1);
    rec.index_level = parse_number<double>(fields[c_index], line_no, c_index + 1);
    rec.dividend = parse_number<double>(fields[c_div], line_no, c_div + 1);
    rec.cpi = parse_number<double>(fields[c_cpi], line_no, c_cpi + 1);
    if (!(rec.index_level > 0.0)) {
      throw Error(Errc::NonPositiveValue, "index level must be positive at " +
                                              where(line_no, c_index + 1));
    }
    if (!(rec.dividend >= 0.0)) {
      throw Error(Errc::NonPositiveValue, "dividend must be non-negative at " +
                                              where(line_no, c_div + 1));
    }
    if (!(rec.cpi > 0.0)) {
      throw Error(Errc::NonPositiveValue, "CPI must be positive at " + where(line_no, c_cpi + 1));
    }
    if (!records.empty() && rec.year != records.back().year + 1) {
      throw Error(Errc::NonContiguousYears, "year " + std::to_string(rec.year) + " follows " +
                                                std::to_string(records.back().year) + " at " +
                                                where(line_no, c_year + 1));
    }
    records.push_back(rec);
  }
  if (records.empty()) throw Error(Errc::ParseError, "no data rows after the header");
  return records;
}

std::vector<AnnualRecord> load_annual_csv(const std::filesystem::path& path,
                                          const ColumnMap& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_annual_csv(buf.str(), columns);
}

ReturnSeries inflation_adjusted_returns(std::span<const AnnualRecord> records) {
  if (records.size() < 2) throw Error(Errc::TooFewRecords, "need at least two years");
  ReturnSeries s;
  for (std::size_t n = 0; n + 1 < records.size(); ++n) {
    const auto& cur = records[n];
    const auto& next = records[n + 1];
    const double r = (next.index_level + cur.dividend) / cur.index_level * (cur.cpi / next.cpi);
    s.years.push_back(cur.year);
    s.returns.push_back(r);
    s.log_returns.push_back(std::log(r));
  }
  return s;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // P(K <= l) = sqrt(2 pi) / l * sum_k exp(-(2k-1)^2 pi^2 / (8 l^2))
    const double w = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      sum += std::exp(-odd * odd * w);
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test_normal(std::span<const double> sample, double mean, double sd) {
  if (sample.empty()) throw Error(Errc::TooFewRecords, "KS test of an empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = normal_cdf((x[i] - mean) / sd);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, kolmogorov_survival(std::sqrt(n) * d)};
}

double lilliefors_p_value(double d, std::size_t n) {
  const double dn = static_cast<double>(n);
  double kd = d;
  double nd = dn;
  if (n > 100) {
    kd = d * std::pow(dn / 100.0, 0.49);
    nd = 100.0;
  }
  double p = std::exp(-7.01256 * kd * kd * (nd + 2.78019) + 2.99587 * kd * std::sqrt(nd + 2.78019) -
                      0.122119 + 0.974598 / std::sqrt(nd) + 1.67997 / nd);
  if (p > 0.1) {
    const double kk = (std::sqrt(dn) - 0.01 + 0.85 / std::sqrt(dn)) * d;
    if (kk <= 0.302) {
      p = 1.0;
    } else if (kk <= 0.5) {
      p = 2.76773 - 19.828315 * kk + 80.709644 * kk * kk - 138.55152 * std::pow(kk, 3) +
          81.218052 * std::pow(kk, 4);
    } else if (kk <= 0.9) {
      p = -4.901232 + 40.662806 * kk - 97.490286 * kk * kk + 94.029866 * std::pow(kk, 3) -
          32.355711 * std::pow(kk, 4);
    } else if (kk <= 1.31) {
      p = 6.198765 - 19.558097 * kk + 23.186922 * kk * kk - 12.234627 * std::pow(kk, 3) +
          2.423045 * std::pow(kk, 4);
    } else {
      p = 0.0;
    }
  }
  return std::clamp(p, 0.0, 1.0);
}

FitResult fit_log_returns(std::span<const double> log_returns, KsVariant variant) {
  if (log_returns.size() < 10) {
    throw Error(Errc::TooFewRecords, "fit needs at least 10 observations");
  }
  FitResult fit;
  fit.n_obs = log_returns.size();
  fit.mu_hat = mean_of(log_returns);
  fit.sigma_hat = sd_of(log_returns, fit.mu_hat);
  if (!(fit.sigma_hat > 0.0)) throw Error(Errc::DegenerateLaw, "log-returns have zero spread");
  const auto ks = ks_test_normal(log_returns, fit.mu_hat, fit.sigma_hat);
  fit.ks_statistic = ks.statistic;
  fit.ks_p_value_asymptotic = ks.p_value;
  fit.ks_p_value_lilliefors = lilliefors_p_value(ks.statistic, fit.n_obs);
  fit.variant = variant;
  fit.ks_p_value =
      variant == KsVariant::Asymptotic ? fit.ks_p_value_asymptotic : fit.ks_p_value_lilliefors;
  return fit;
}

FitResult fit_gbm(const ReturnSeries& series, KsVariant variant) {
  return fit_log_returns(series.log_returns, variant);
}

Correlogram acf_pacf(std::span<const double> series, std::size_t max_lag) {
  const std::size_t n = series.size();
  if (max_lag == 0 || 2 * max_lag >= n) {
    throw Error(Errc::LagTooLarge, "need 1 <= max_lag < n/2 (n = " + std::to_string(n) + ")");
  }
  const double mean = mean_of(series);
  double c0 = 0.0;
  for (double v : series) c0 += (v - mean) * (v - mean);
  if (!(c0 > 0.0)) throw Error(Errc::DegenerateLaw, "constant series has no autocorrelation");

  Correlogram out;
  out.n_obs = n;
  out.band = 1.96 / std::sqrt(static_cast<double>(n));
  out.acf.resize(max_lag);
  for (std::size_t h = 1; h <= max_lag; ++h) {
    double c = 0.0;
    for (std::size_t t = 0; t + h < n; ++t) c += (series[t] - mean) * (series[t + h] - mean);
    out.acf[h - 1] = c / c0;
  }

  // Durbin-Levinson on rho_1..rho_H.
  const auto rho = [&](std::size_t h) { return out.acf[h - 1]; };
  std::vector<double> phi_prev, phi;
  out.pacf.resize(max_lag);
  for (std::size_t h = 1; h <= max_lag; ++h) {
    double num = rho(h);
    double den = 1.0;
    for (std::size_t j = 1; j < h; ++j) {
      num -= phi_prev[j - 1] * rho(h - j);
      den -= phi_prev[j - 1] * rho(j);
    }
    const double phi_hh = num / den;
    phi.assign(h, 0.0);
    for (std::size_t j = 1; j < h; ++j) phi[j - 1] = phi_prev[j - 1] - phi_hh * phi_prev[h - j - 1];
    phi[h - 1] = phi_hh;
    out.pacf[h - 1] = phi_hh;
    std::swap(phi_prev, phi);
  }
  return out;
}

std::vector<QqPoint> normal_qq(std::span<const double> sample) {
  if (sample.size() < 2) throw Error(Errc::TooFewRecords, "QQ plot needs two observations");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double mean = mean_of(x);
  const double sd = sd_of(x, mean);
  const double n = static_cast<double>(x.size());
  std::vector<QqPoint> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.push_back({normal_quantile((static_cast<double>(i) + 0.5) / n), (x[i] - mean) / sd});
  }
  return out;
}

}  // namespace dcalb
