#include "dcalb_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "dcalb/data.hpp"
#include "dcalb/error.hpp"
#include "dcalb/figures.hpp"
#include "dcalb/table.hpp"
#include "dcalb/verify.hpp"

namespace dcalb::cli {

namespace {

struct Common {
  double mu = 0.0658;
  double sigma = 0.1690;
  std::size_t k = 50;
  std::string format = "csv";
  std::string out_dir;
};

struct ErrorGridFlags {
  std::vector<unsigned> degrees{1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21};
  double y_log_start = -4.0;
  double y_log_step = 0.01;
  std::size_t y_count = 801;

  LogErrorGrid grid() const {
    LogErrorGrid g;
    g.degrees = degrees;
    g.relative = true;
    for (std::size_t r = 0; r < y_count; ++r) {
      g.y_values.push_back(std::exp(y_log_start + y_log_step * static_cast<double>(r)));
    }
    return g;
  }
};

void add_common(CLI::App* sub, Common& c, bool with_k = true) {
  sub->add_option("--mu", c.mu, "log-price drift per year")->capture_default_str();
  sub->add_option("--sigma", c.sigma, "log-price volatility per sqrt(year)")
      ->capture_default_str();
  if (with_k) {
    sub->add_option("--k", c.k, "number of yearly steps")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  }
  sub->add_option("--format", c.format, "output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out_dir, "write one file per table into this directory");
}

void add_error_grid(CLI::App* sub, ErrorGridFlags& g) {
  sub->add_option("--degrees", g.degrees, "odd Taylor degrees J")->delimiter(',');
  sub->add_option("--y-log-start", g.y_log_start, "first log multiplier of E[R_k]")
      ->capture_default_str();
  sub->add_option("--y-log-step", g.y_log_step, "log multiplier step")->capture_default_str();
  sub->add_option("--y-count", g.y_count, "number of expansion points")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void emit(const std::vector<Table>& tables, const Common& c, std::ostream& out) {
  const bool json = c.format == "json";
  const auto render = [&](const Table& t) { return json ? to_records(t) : to_delimited(t); };
  if (!c.out_dir.empty()) {
    std::filesystem::create_directories(c.out_dir);
    for (const auto& t : tables) {
      const auto path = std::filesystem::path(c.out_dir) / (t.name + (json ? ".json" : ".csv"));
      std::ofstream file(path, std::ios::binary);
      file << render(t);
      if (!file) throw std::runtime_error("cannot write " + path.string());
      out << path.string() << '\n';
    }
    return;
  }
  if (json && tables.size() > 1) {
    out << "[\n";
    for (std::size_t i = 0; i < tables.size(); ++i) {
      auto text = render(tables[i]);
      text.pop_back();
      out << text << (i + 1 < tables.size() ? ",\n" : "\n");
    }
    out << "]\n";
    return;
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i > 0) out << '\n';
    out << render(tables[i]);
  }
}

bool is_data_error(Errc code) {
  switch (code) {
    case Errc::ParseError:
    case Errc::NonContiguousYears:
    case Errc::NonPositiveValue:
    case Errc::TooFewRecords:
    case Errc::LagTooLarge:
    case Errc::DegenerateLaw:
      return true;
    default:
      return false;
  }
}

KsVariant parse_variant(const std::string& name) {
  return name == "lilliefors" ? KsVariant::Lilliefors : KsVariant::Asymptotic;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower bounds, moments and error bounds for periodic investing under GBM",
               "dcalb"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  Common common;
  ErrorGridFlags grid_flags;

  auto* fit = app.add_subcommand("fit", "fit GBM parameters to annual index data");
  std::string data_path, columns_spec, ks_variant = "asymptotic";
  std::size_t max_lag = 20;
  bool diagnostics = false;
  fit->add_option("--data", data_path, "annual CSV with columns year,I,D,C")->required();
  fit->add_option("--columns", columns_spec, "header overrides, e.g. year=Date,I=P");
  fit->add_option("--ks-variant", ks_variant, "KS p-value reported as ks_p_value")
      ->capture_default_str()
      ->check(CLI::IsMember({"asymptotic", "lilliefors"}));
  fit->add_option("--max-lag", max_lag, "ACF/PACF lags")->capture_default_str();
  fit->add_flag("--diagnostics", diagnostics, "also emit ACF/PACF and QQ tables");
  add_common(fit, common, false);

  auto* quantiles = app.add_subcommand("quantiles", "quantiles of Z_k and log Z_k");
  add_common(quantiles, common);
  auto* sharpe = app.add_subcommand("sharpe", "Sharpe ratio m_k / sqrt(v_k)");
  add_common(sharpe, common);
  auto* error = app.add_subcommand("error", "expected error and log-error bound");
  add_common(error, common);
  add_error_grid(error, grid_flags);

  auto* lsd = app.add_subcommand("lsd", "lump sum discount path and limit curve");
  add_common(lsd, common);
  double lsd_mu_min = 0.01, lsd_mu_max = 0.15, lsd_mu_step = 0.001;
  lsd->add_option("--mu-min", lsd_mu_min)->capture_default_str();
  lsd->add_option("--mu-max", lsd_mu_max)->capture_default_str();
  lsd->add_option("--mu-step", lsd_mu_step)->capture_default_str();

  auto* hybrid = app.add_subcommand("hybrid", "lump sum plus DCA grid studies");
  add_common(hybrid, common, false);
  add_error_grid(hybrid, grid_flags);
  std::vector<std::size_t> horizons = kHybridHorizons;
  double lump_step = 0.01, amount_max = 2.0, amount_step = 0.01;
  hybrid->add_option("--horizons", horizons, "stopping times T")->delimiter(',');
  hybrid->add_option("--lump-step", lump_step, "c_0 grid step on (0, 1)")->capture_default_str();
  hybrid->add_option("--amount-max", amount_max, "largest follow-up amount")
      ->capture_default_str();
  hybrid->add_option("--amount-step", amount_step, "follow-up amount grid step")
      ->capture_default_str();

  auto* continuous = app.add_subcommand("continuous", "continuous DCA bound law and r1/r2");
  add_common(continuous, common, false);
  double cont_mu_step = 0.01, cont_mu_max = 10.0;
  continuous->add_option("--mu-step", cont_mu_step)->capture_default_str();
  continuous->add_option("--mu-max", cont_mu_max)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the analytic-vs-oracle checks");
  VerifyOptions verify_options;
  verify->add_option("--seed", verify_options.seed)->capture_default_str();
  verify->add_option("--paths", verify_options.paths)
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{100}, std::size_t{100'000'000}));
  verify->add_option("--threads", verify_options.threads, "worker threads, 0 for all")
      ->capture_default_str();
  verify->add_option("--out", common.out_dir, "also write the report to <dir>/verify.txt");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    const auto params = [&] { return GbmParams(common.mu, common.sigma); };
    if (fit->parsed()) {
      const auto map = columns_spec.empty() ? ColumnMap{} : ColumnMap::parse(columns_spec);
      const auto records = load_annual_csv(data_path, map);
      const auto series = inflation_adjusted_returns(records);
      auto result = fit_gbm(series, parse_variant(ks_variant));
      std::vector<Table> tables{fit_table(result)};
      if (diagnostics) {
        tables.push_back(correlogram_table(acf_pacf(series.log_returns, max_lag)));
        tables.push_back(qq_table(normal_qq(series.log_returns)));
      }
      emit(tables, common, out);
    } else if (quantiles->parsed()) {
      emit({quantiles_table(params(), common.k)}, common, out);
    } else if (sharpe->parsed()) {
      emit({sharpe_table(params(), common.k)}, common, out);
    } else if (error->parsed()) {
      emit({error_table(params(), common.k, grid_flags.grid())}, common, out);
    } else if (lsd->parsed()) {
      emit({lsd_path_table(params(), common.k),
            lsd_limit_table(linear_grid(lsd_mu_min, lsd_mu_max, lsd_mu_step))},
           common, out);
    } else if (hybrid->parsed()) {
      auto lumps = linear_grid(lump_step, 1.0 - lump_step / 2, lump_step);
      lumps.erase(std::remove_if(lumps.begin(), lumps.end(), [](double c) { return c >= 1.0; }),
                  lumps.end());
      const auto amounts = linear_grid(amount_step, amount_max, amount_step);
      const auto grid = grid_flags.grid();
      emit({hybrid_constant_total_table(params(), horizons, lumps, grid),
            hybrid_constant_lump_table(params(), horizons, amounts, grid)},
           common, out);
    } else if (continuous->parsed()) {
      emit({continuous_law_table(params()),
            r1_r2_table(linear_grid(cont_mu_step, cont_mu_max, cont_mu_step))},
           common, out);
    } else if (verify->parsed()) {
      const auto report = run_verify(verify_options);
      const auto text = report.to_text();
      out << text;
      if (!common.out_dir.empty()) {
        std::filesystem::create_directories(common.out_dir);
        std::ofstream file(std::filesystem::path(common.out_dir) / "verify.txt",
                           std::ios::binary);
        file << text;
      }
      return report.passed() ? kExitOk : kExitVerify;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_data_error(e.code()) ? kExitData : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace dcalb::cli
