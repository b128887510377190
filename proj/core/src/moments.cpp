#include "dcalb/moments.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "dcalb/error.hpp"
#include "dcalb/normal.hpp"

namespace dcalb {

namespace {

using PascalTable = std::array<std::array<std::uint64_t, kMaxBinomialOrder + 1>,
                               kMaxBinomialOrder + 1>;

constexpr PascalTable make_pascal() {
  PascalTable t{};
  for (unsigned n = 0; n <= kMaxBinomialOrder; ++n) {
    t[n][0] = 1;
    for (unsigned k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
  }
  return t;
}

constexpr PascalTable kPascal = make_pascal();

double log_factorial(unsigned n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

std::uint64_t binomial(unsigned n, unsigned k) {
  if (n > kMaxBinomialOrder) {
    throw Error(Errc::OverflowDetected, "binomial order above " +
                                            std::to_string(kMaxBinomialOrder));
  }
  return k > n ? 0 : kPascal[n][k];
}

MomentTable::MomentTable(std::size_t steps, unsigned max_order)
    : steps_(steps),
      max_order_(max_order),
      values_(steps * (max_order + 1), 0.0),
      logs_(steps * (max_order + 1), 0.0) {}

std::size_t MomentTable::index(std::size_t k, unsigned n) const {
  if (k == 0 || k > steps_ || n > max_order_) {
    throw Error(Errc::ScheduleTooShort, "moment (" + std::to_string(k) + ", " +
                                            std::to_string(n) + ") outside table");
  }
  return (k - 1) * (max_order_ + 1) + n;
}

double MomentTable::at(std::size_t k, unsigned n) const {
  const double v = values_[index(k, n)];
  if (!std::isfinite(v)) {
    throw Error(Errc::OverflowDetected, "E[R_" + std::to_string(k) + "^" + std::to_string(n) +
                                            "] exceeds double range; use log_at");
  }
  return v;
}

double MomentTable::log_at(std::size_t k, unsigned n) const { return logs_[index(k, n)]; }

void MomentTable::set(std::size_t k, unsigned n, double value, double log_value) {
  const auto i = index(k, n);
  values_[i] = value;
  logs_[i] = log_value;
}

MomentTable moments_recursive(const InvestmentSchedule& schedule, const GbmParams& params,
                              std::size_t k_max, unsigned n_max) {
  if (n_max == 0 || n_max > kMaxBinomialOrder) {
    throw Error(Errc::InvalidParams, "moment order must be in 1.." +
                                         std::to_string(kMaxBinomialOrder));
  }
  schedule.require_steps(k_max);

  MomentTable table(k_max, n_max);
  std::vector<double> prev(n_max + 1), prev_log(n_max + 1);
  std::vector<double> cur(n_max + 1), cur_log(n_max + 1);

  // R_1 = X_1.
  const auto law1 = factor_law(params, schedule.time(0), schedule.time(1));
  for (unsigned n = 0; n <= n_max; ++n) {
    prev_log[n] = log_lognormal_raw_moment(law1, n);
    prev[n] = std::exp(prev_log[n]);
    table.set(1, n, prev[n], prev_log[n]);
  }

  for (std::size_t k = 2; k <= k_max; ++k) {
    const auto law = factor_law(params, schedule.time(k - 1), schedule.time(k));
    // R_k = X_k (w_old R_{k-1} + w_new) with w_old + w_new = 1.
    const double total = schedule.invested_through(k - 1);
    const double w_new = schedule.amount(k - 1) / total;
    const double w_old = schedule.invested_through(k - 2) / total;
    const double log_w_new = std::log(w_new);
    const double log_w_old = std::log(w_old);

    for (unsigned n = 0; n <= n_max; ++n) {
      double sum = 0.0;
      double log_sum = -std::numeric_limits<double>::infinity();
      for (unsigned j = 0; j <= n; ++j) {
        const double coef = static_cast<double>(kPascal[n][j]);
        sum += coef * std::pow(w_new, n - j) * std::pow(w_old, j) * prev[j];
        log_sum = log_add_exp(log_sum, std::log(coef) + (n - j) * log_w_new + j * log_w_old +
                                           prev_log[j]);
      }
      cur_log[n] = log_lognormal_raw_moment(law, n) + log_sum;
      const double ex = std::exp(log_lognormal_raw_moment(law, n));
      cur[n] = std::isfinite(ex) && std::isfinite(sum) ? ex * sum
                                                        : std::numeric_limits<double>::infinity();
      table.set(k, n, cur[n], cur_log[n]);
    }
    std::swap(prev, cur);
    std::swap(prev_log, cur_log);
  }
  return table;
}

std::uint64_t monotone_sequence_count(std::size_t k, unsigned n) {
  if (k == 0) return 0;
  // C(n + k - 1, n) built as a running product; each partial product is itself
  // a binomial coefficient, so the division is exact.
  const std::uint64_t m = k - 1;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const std::uint64_t factor = m + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * factor / i;
  }
  return result;
}

MonotoneSequences::MonotoneSequences(std::size_t k, unsigned n, std::uint64_t cap)
    : k_(k), n_(n), count_(monotone_sequence_count(k, n)) {
  if (k == 0) throw Error(Errc::InvalidParams, "sequence length must be at least 1");
  if (count_ > cap) {
    throw Error(Errc::EnumerationTooLarge,
                "C(n+k-1, k-1) = " + std::to_string(count_) + " exceeds cap " +
                    std::to_string(cap));
  }
}

MonotoneSequences::iterator::iterator(std::size_t k, unsigned n)
    : seq_(k, 0), n_(n), done_(false) {
  seq_.back() = n;
}

MonotoneSequences::iterator& MonotoneSequences::iterator::operator++() {
  // Free positions are 0..k-2; the last entry is pinned to n.
  std::size_t free = seq_.size() - 1;
  while (free > 0) {
    const std::size_t i = free - 1;
    if (seq_[i] < n_) {
      const unsigned v = seq_[i] + 1;
      for (std::size_t j = i; j + 1 < seq_.size(); ++j) seq_[j] = v;
      return *this;
    }
    --free;
  }
  done_ = true;
  return *this;
}

MonotoneSequences enumerate_monotone_sequences(std::size_t k, unsigned n, std::uint64_t cap) {
  return MonotoneSequences(k, n, cap);
}

double moments_closed_form(const InvestmentSchedule& schedule, const GbmParams& params,
                           std::size_t k, unsigned n, std::uint64_t cap) {
  schedule.require_steps(k);
  if (n == 0) return 1.0;
  const MonotoneSequences sequences(k, n, cap);

  // Amounts enter only through c_l / sum_{j<k} c_j.
  const double total = schedule.invested_through(k - 1);
  std::vector<double> log_w(k);
  for (std::size_t l = 0; l < k; ++l) log_w[l] = std::log(schedule.amount(l) / total);

  // log E[X_l^j] for l = 1..k, j = 0..n.
  std::vector<std::vector<double>> log_ex(k + 1, std::vector<double>(n + 1));
  for (std::size_t l = 1; l <= k; ++l) {
    const auto law = factor_law(params, schedule.time(l - 1), schedule.time(l));
    for (unsigned j = 0; j <= n; ++j) log_ex[l][j] = log_lognormal_raw_moment(law, j);
  }

  // Each sequence contributes
  //   n! E[X_k^n] c_0^{j_1}/j_1! prod_{l=1}^{k-1} c_l^{j_{l+1}-j_l} E[X_l^{j_l}] / (j_{l+1}-j_l)!
  // with amounts normalized by the total invested.
  const double log_prefix = log_factorial(n) + log_ex[k][n];
  long double sum = 0.0L;
  long double comp = 0.0L;
  for (const auto& seq : sequences) {
    double log_term = log_prefix + seq[0] * log_w[0] - log_factorial(seq[0]);
    for (std::size_t l = 1; l < k; ++l) {
      const unsigned gap = seq[l] - seq[l - 1];
      log_term += gap * log_w[l] + log_ex[l][seq[l - 1]] - log_factorial(gap);
    }
    // Kahan summation; all terms are positive.
    const long double y = static_cast<long double>(std::exp(log_term)) - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(sum);
}

}  // namespace dcalb
