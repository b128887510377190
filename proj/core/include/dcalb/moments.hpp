#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

#include "dcalb/schedule.hpp"

namespace dcalb {

/// Exact binomial coefficient via Pascal's rule, n <= kMaxBinomialOrder.
inline constexpr unsigned kMaxBinomialOrder = 60;
std::uint64_t binomial(unsigned n, unsigned k);

/// E[R_k^n] for k = 1..steps(), n = 0..max_order(). Holds both the plain
/// value and its logarithm; the plain value may be +inf for huge orders.
class MomentTable {
public:
  MomentTable(std::size_t steps, unsigned max_order);

  std::size_t steps() const noexcept { return steps_; }
  unsigned max_order() const noexcept { return max_order_; }

  /// Throws Error{OverflowDetected} if the value is not representable.
  double at(std::size_t k, unsigned n) const;
  double log_at(std::size_t k, unsigned n) const;

  void set(std::size_t k, unsigned n, double value, double log_value);

private:
  std::size_t index(std::size_t k, unsigned n) const;

  std::size_t steps_;
  unsigned max_order_;
  std::vector<double> values_;
  std::vector<double> logs_;
};

/// Moments of the returns by the one-step binomial recursion
///   E[Y_k^n] = E[X_k^n] sum_j C(n,j) c_{k-1}^{n-j} E[Y_{k-1}^j],
/// carried out on R directly so that amounts never enter unnormalized.
MomentTable moments_recursive(const InvestmentSchedule& schedule, const GbmParams& params,
                              std::size_t k_max, unsigned n_max);

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

/// C(n + k - 1, k - 1), saturating at UINT64_MAX.
std::uint64_t monotone_sequence_count(std::size_t k, unsigned n);

/// Every non-decreasing (j_1, ..., j_k) with j_k = n, in lexicographic order.
class MonotoneSequences {
public:
  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = std::vector<unsigned>;
    using difference_type = std::ptrdiff_t;
    using pointer = const value_type*;
    using reference = const value_type&;

    iterator() = default;
    reference operator*() const { return seq_; }
    pointer operator->() const { return &seq_; }
    iterator& operator++();
    iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const iterator& other) const { return done_ == other.done_; }

  private:
    friend class MonotoneSequences;
    iterator(std::size_t k, unsigned n);

    std::vector<unsigned> seq_;
    unsigned n_ = 0;
    bool done_ = true;
  };

  /// Throws Error{EnumerationTooLarge} when the count exceeds cap.
  MonotoneSequences(std::size_t k, unsigned n, std::uint64_t cap = kEnumerationCap);

  iterator begin() const { return iterator(k_, n_); }
  iterator end() const { return {}; }
  std::uint64_t size() const noexcept { return count_; }

private:
  std::size_t k_;
  unsigned n_;
  std::uint64_t count_;
};

MonotoneSequences enumerate_monotone_sequences(std::size_t k, unsigned n,
                                               std::uint64_t cap = kEnumerationCap);

/// E[R_k^n] as an explicit sum over monotone index sequences. Combinatorial
/// cost; intended as an independent check on moments_recursive.
double moments_closed_form(const InvestmentSchedule& schedule, const GbmParams& params,
                           std::size_t k, unsigned n, std::uint64_t cap = kEnumerationCap);

}  // namespace dcalb
