#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "dcalb/error.hpp"
#include "dcalb/mc_oracle.hpp"
#include "dcalb/moments.hpp"
#include "dcalb/verify.hpp"

using namespace dcalb;
using Catch::Matchers::WithinRel;

namespace {
const GbmParams kSp{0.0658, 0.1690};
}

TEST_CASE("first moment at k = 1 is the factor mean") {
  const auto table = moments_recursive(InvestmentSchedule::lump_sum(1.0), kSp, 1, 3);
  CHECK_THAT(table.at(1, 1), WithinRel(1.08337427579398609, 1e-15));
  CHECK(table.at(1, 0) == 1.0);
  for (unsigned n = 1; n <= 3; ++n) {
    CHECK_THAT(table.at(1, n), WithinRel(lognormal_raw_moment(factor_law(kSp, 0, 1), n), 1e-14));
  }
}

TEST_CASE("zeroth moment is one everywhere") {
  PhiloxUniform rng(3, 0);
  const auto s = random_schedule(rng, 8);
  const auto table = moments_recursive(s, random_params(rng), 8, 4);
  for (std::size_t k = 1; k <= 8; ++k) CHECK(table.at(k, 0) == 1.0);
}

TEST_CASE("DCA second moment at k = 3") {
  // mpmath, 60 digits
  const auto table = moments_recursive(InvestmentSchedule::dca(3), GbmParams(0.05, 0.15), 3, 2);
  CHECK_THAT(table.at(3, 2), WithinRel(1.32784702473203428, 1e-13));
}

TEST_CASE("DCA second moment at k = 3 agrees with Monte Carlo") {
  const GbmParams params(0.05, 0.15);
  const auto s = simulate({.n_paths = 1'000'000, .seed = 20240101, .schedule = InvestmentSchedule::dca(3),
                           .params = params});
  const auto table = moments_recursive(InvestmentSchedule::dca(3), params, 3, 2);
  const auto& step = s.per_step[2];
  CHECK(std::abs(step.r_moments[1] - table.at(3, 2)) < 3.0 * step.r_moment_se[1]);
}

TEST_CASE("moments_recursive errors") {
  CHECK_THROWS_AS(moments_recursive(InvestmentSchedule::dca(3), kSp, 4, 2), Error);
  try {
    moments_recursive(InvestmentSchedule::dca(3), kSp, 4, 2);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ScheduleTooShort);
  }
  const auto huge = moments_recursive(InvestmentSchedule::dca(2), GbmParams(5.0, 3.0), 2, 40);
  CHECK(std::isfinite(huge.log_at(2, 40)));
  try {
    (void)huge.at(2, 40);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OverflowDetected);
  }
}

TEST_CASE("Jensen ordering of the first two moments") {
  PhiloxUniform rng(17, 0);
  for (int i = 0; i < 50; ++i) {
    const auto steps = static_cast<std::size_t>(rng.integer(1, 30));
    const auto s = random_schedule(rng, steps);
    const auto table = moments_recursive(s, random_params(rng), steps, 2);
    for (std::size_t k = 1; k <= steps; ++k) CHECK(table.at(k, 2) >= table.at(k, 1) * table.at(k, 1));
  }
}

TEST_CASE("enumerate_monotone_sequences") {
  std::vector<std::vector<unsigned>> seqs;
  for (const auto& s : enumerate_monotone_sequences(2, 1)) seqs.push_back(s);
  CHECK(seqs == std::vector<std::vector<unsigned>>{{0, 1}, {1, 1}});

  std::set<std::vector<unsigned>> six;
  for (const auto& s : enumerate_monotone_sequences(3, 2)) six.insert(s);
  CHECK(six == std::set<std::vector<unsigned>>{
                   {0, 0, 2}, {0, 1, 2}, {0, 2, 2}, {1, 1, 2}, {1, 2, 2}, {2, 2, 2}});

  seqs.clear();
  for (const auto& s : enumerate_monotone_sequences(1, 7)) seqs.push_back(s);
  CHECK(seqs == std::vector<std::vector<unsigned>>{{7}});

  for (std::size_t k = 1; k <= 6; ++k) {
    for (unsigned n = 0; n <= 6; ++n) {
      const auto range = enumerate_monotone_sequences(k, n);
      std::uint64_t count = 0;
      for (auto it = range.begin(); it != range.end(); ++it) ++count;
      CHECK(count == monotone_sequence_count(k, n));
      CHECK(count == binomial(static_cast<unsigned>(n + k - 1), static_cast<unsigned>(k - 1)));
    }
  }

  try {
    enumerate_monotone_sequences(30, 20);
    FAIL("expected EnumerationTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EnumerationTooLarge);
  }
}

TEST_CASE("closed form reduces to the factor moment at k = 1") {
  const auto ls = InvestmentSchedule::lump_sum(1.0, 2.5);
  for (unsigned n = 1; n <= 6; ++n) {
    CHECK_THAT(moments_closed_form(ls, kSp, 1, n),
               WithinRel(lognormal_raw_moment(factor_law(kSp, 0, 1), n), 1e-13));
  }
}

TEST_CASE("closed form hand expansion for DCA k = 2, n = 1") {
  const double ex = lognormal_raw_moment(factor_law(kSp, 0, 1), 1);
  const double expected = ex * (1.0 + ex) / 2.0;
  CHECK_THAT(moments_closed_form(InvestmentSchedule::dca(2), kSp, 2, 1), WithinRel(expected, 1e-14));
  CHECK_THAT(moments_recursive(InvestmentSchedule::dca(2), kSp, 2, 1).at(2, 1),
             WithinRel(expected, 1e-14));
}

TEST_CASE("closed form equals recursion") {
  const auto table = moments_recursive(InvestmentSchedule::dca(5), kSp, 5, 4);
  CHECK_THAT(moments_closed_form(InvestmentSchedule::dca(5), kSp, 5, 4),
             WithinRel(table.at(5, 4), 1e-10));

  // Non-unit first amount exercises the c_0^{j_1} factor.
  const auto s = validate_schedule({0, 1, 3}, {2.5, 0.5, 4.0}, 3.5);
  const auto t = moments_recursive(s, GbmParams(-0.1, 0.3), 3, 5);
  for (std::size_t k = 1; k <= 3; ++k) {
    for (unsigned n = 1; n <= 5; ++n) {
      CHECK_THAT(moments_closed_form(s, GbmParams(-0.1, 0.3), k, n), WithinRel(t.at(k, n), 1e-10));
    }
  }
}
