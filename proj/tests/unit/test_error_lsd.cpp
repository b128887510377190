#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dcalb/error.hpp"
#include "dcalb/error_lsd.hpp"
#include "dcalb/verify.hpp"

using namespace dcalb;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const GbmParams kSp{0.0658, 0.1690};

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected dcalb::Error");
  return Errc::InternalInconsistency;
}

struct Frozen {
  std::size_t k;
  double mean;
  double expected_error;
  double log_ub;
  unsigned degree;
  int r;  // y = exp(-4 + 0.01 r) E[R_k]
};

// mpmath, 60 digits, default grid.
constexpr Frozen kFrozen[] = {
    {2, 1.12853704862306495, 0.00404612214021118101, 0.00355373277624248472, 21, 439},
    {10, 1.59480992804474523, 0.0378767740565040825, 0.0261446480278779698, 9, 464},
    {12, 1.74794628126736400, 0.0498679435385595719, 0.0351216964035328163, 7, 458},
    {19, 2.44783248518498307, 0.109233372619720050, 0.0867414307982605555, 5, 465},
    {20, 2.57349152239685980, 0.120499915838934753, 0.0971550399797376953, 5, 469},
    {42, 8.62768245305755274, 0.743299304442815493, 0.440331148261499594, 1, 400},
    {50, 13.9864282790914046, 1.33937078644025027, 0.544220915363206811, 1, 400},
};

}  // namespace

TEST_CASE("default grid") {
  const auto g = LogErrorGrid::defaults();
  CHECK(g.degrees.size() == 11);
  CHECK(g.max_degree() == 21);
  CHECK(g.y_values.size() == 801);
  CHECK_THAT(g.y_values.front(), WithinRel(std::exp(-4.0), 1e-15));
  CHECK_THAT(g.y_values.back(), WithinRel(std::exp(4.0), 1e-15));
}

TEST_CASE("expected error at k = 1 is zero") {
  PhiloxUniform rng(6, 0);
  for (int i = 0; i < 20; ++i) {
    CHECK(expected_error(random_schedule(rng, 2), random_params(rng), 1) == 0.0);
  }
}

TEST_CASE("frozen error values for DCA") {
  const auto dca = InvestmentSchedule::dca(50);
  const auto profile = error_profile(dca, kSp, 50);
  for (const auto& f : kFrozen) {
    const auto& rep = profile[f.k - 1];
    CHECK(rep.k == f.k);
    CHECK_THAT(rep.expected_error, WithinRel(f.expected_error, 1e-12));
    CHECK_THAT(rep.log_error_ub, WithinRel(f.log_ub, 1e-9));
    CHECK(rep.degree == f.degree);
    CHECK_THAT(rep.y, WithinRel(std::exp(-4.0 + 0.01 * f.r) * f.mean, 1e-12));
    CHECK_THAT(relative_error_bound(rep), WithinRel(rep.log_error_ub, 0.0));
  }
}

TEST_CASE("log-error bound at k = 1") {
  const auto ls = InvestmentSchedule::dca(1);
  const double mean = std::exp(kSp.mu() + kSp.variance() / 2);
  LogErrorGrid single{{1}, {mean}, false};
  CHECK_THAT(log_error_upper_bound(ls, kSp, 1, single).log_error_ub,
             WithinAbs(kSp.variance() / 2, 1e-15));

  // The full grid gets much closer to the true value 0.
  const auto full = log_error_upper_bound(ls, kSp, 1);
  CHECK(full.log_error_ub >= 0.0);
  CHECK(full.log_error_ub < 1e-8);
  // mpmath: 2.62805005e-9 at J = 21, r = 429; the absolute gap is cancellation.
  CHECK_THAT(full.log_error_ub, WithinAbs(2.62805005031328231e-9, 1e-11));
  CHECK(full.degree == 21);
  CHECK_THAT(full.y, WithinRel(std::exp(-4.0 + 0.01 * 429) * mean, 1e-12));
}

TEST_CASE("log-error bound never exceeds the J = 1 value") {
  const auto dca = InvestmentSchedule::dca(50);
  const auto lb = lower_bound_recursive(dca, kSp, 50);
  const auto moments = moments_recursive(dca, kSp, 50, 21);
  for (std::size_t k = 1; k <= 50; ++k) {
    const auto rep = log_error_upper_bound(moments, lb, k, LogErrorGrid::defaults());
    CHECK(rep.log_error_ub >= 0.0);
    CHECK(rep.log_error_ub <= std::log(moments.at(k, 1)) - lb.law(k).log_mean + 1e-15);
    CHECK(rep.degree % 2 == 1);
    CHECK(rep.y > 0.0);
  }
  CHECK(log_error_upper_bound(moments, lb, 19, LogErrorGrid::defaults()).log_error_ub <= 0.12);
}

TEST_CASE("expected error is non-decreasing for DCA") {
  const auto profile = error_profile(InvestmentSchedule::dca(50), kSp, 50);
  for (std::size_t i = 1; i < profile.size(); ++i) {
    CHECK(profile[i].expected_error >= profile[i - 1].expected_error);
  }
}

TEST_CASE("log-error grid validation") {
  const auto dca = InvestmentSchedule::dca(3);
  CHECK(code_of([&] { log_error_upper_bound(dca, kSp, 3, LogErrorGrid{{2}, {1.0}, true}); }) ==
        Errc::InvalidParams);
  CHECK(code_of([&] { log_error_upper_bound(dca, kSp, 3, LogErrorGrid{{}, {1.0}, true}); }) ==
        Errc::InvalidParams);
  // E[R] / y overflows a double for a subnormal y; non-positive y is skipped.
  CHECK(code_of([&] { log_error_upper_bound(dca, kSp, 3, LogErrorGrid{{1}, {1e-320}, false}); }) ==
        Errc::NoFeasibleGridPoint);
  CHECK(code_of([&] { log_error_upper_bound(dca, kSp, 3, LogErrorGrid{{1}, {-1.0, 0.0}, false}); }) ==
        Errc::NoFeasibleGridPoint);
}

TEST_CASE("log_taylor") {
  CHECK_THAT(log_taylor(2.0, 2.0, 5), WithinRel(std::log(2.0), 1e-15));
  CHECK_THAT(log_taylor(1.5, 1.0, 1), WithinRel(0.5, 1e-15));
  CHECK_THAT(log_taylor(1.5, 1.0, 3), WithinRel(0.5 - 0.125 + 0.125 / 3.0, 1e-15));
}

TEST_CASE("lump sum discount") {
  const auto dca = InvestmentSchedule::dca(500);
  const auto lb = lower_bound_recursive(dca, kSp, 500);

  const auto first = lump_sum_discount(dca, kSp, lb, 1);
  CHECK_THAT(first.x, WithinRel(1.0, 1e-15));
  CHECK_THAT(first.s, WithinRel(1.0, 1e-15));
  CHECK_THAT(first.size_ratio, WithinRel(1.0, 1e-15));
  CHECK_THAT(first.time_ratio, WithinRel(1.0, 1e-15));

  for (std::size_t k = 2; k <= 50; ++k) {
    const auto d = lump_sum_discount(dca, kSp, lb, k);
    CHECK((d.time_ratio > 0.0 && d.time_ratio < 1.0));
    CHECK_THAT(d.size_ratio, WithinRel(d.x / k, 1e-15));
    CHECK_THAT(d.size_ratio_literal, WithinRel(d.x * k, 1e-15));
  }
  // mpmath: x_k / k at k = 2, 10, 50
  CHECK_THAT(lump_sum_discount(dca, kSp, lb, 2).size_ratio, WithinAbs(1.016, 5e-4));
  CHECK_THAT(lump_sum_discount(dca, kSp, lb, 10).size_ratio, WithinAbs(1.093, 5e-4));
  CHECK_THAT(lump_sum_discount(dca, kSp, lb, 50).size_ratio, WithinAbs(1.051, 5e-4));

  CHECK_THAT(lump_sum_discount(dca, kSp, lb, 500).x, WithinRel(lsd_limit(kSp.mu()), 1e-6));
}

TEST_CASE("lump sum discount reproduces the bound law") {
  PhiloxUniform rng(8, 0);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_schedule(rng, 12);
    const auto p = random_params(rng);
    const auto lb = lower_bound_recursive(s, p, 12);
    for (std::size_t k = 1; k <= 12; ++k) {
      const auto d = lump_sum_discount(s, p, lb, k);
      const double total = s.invested_through(k - 1);
      CHECK_THAT(std::log(d.x) + p.mu() * d.s,
                 WithinAbs(std::log(total) + lb.law(k).log_mean, 1e-12));
      CHECK_THAT(p.variance() * d.s, WithinRel(lb.law(k).log_var, 1e-12));
    }
  }
}

TEST_CASE("lsd_limit") {
  CHECK_THAT(lsd_limit(0.0658), WithinRel(68.0985010314139843, 1e-13));
  CHECK(code_of([] { lsd_limit(0.0); }) == Errc::NonPositiveDrift);
  CHECK(code_of([] { lsd_limit(-0.1); }) == Errc::NonPositiveDrift);
  CHECK(kLsdRatioLimit.x_over_k == 0.0);
  CHECK(kLsdRatioLimit.s_over_k == 1.0);
}

TEST_CASE("lump sum discount ratios at k = 1e4") {
  // mpmath: s_k / k = 1 - 22.3 / k + O(e^{-mu k}); x_k tends to lsd_limit.
  constexpr std::size_t k = 10'000;
  const auto dca = InvestmentSchedule::dca(k);
  const auto d = lump_sum_discount(dca, kSp, k);
  CHECK_THAT(d.s / k, WithinRel(0.99777036450435506, 1e-9));
  CHECK_THAT(d.x, WithinRel(lsd_limit(kSp.mu()), 1e-9));
}
