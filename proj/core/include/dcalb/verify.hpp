#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dcalb/philox.hpp"
#include "dcalb/schedule.hpp"

namespace dcalb {

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t paths = 100'000;
  unsigned threads = 0;  // never changes the report
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::size_t paths = 0;
  std::vector<CheckResult> checks;

  bool passed() const noexcept;
  /// One line per check plus a header and verdict. Contains no timings, so
  /// equal options give byte-identical text.
  std::string to_text() const;
};

/// Runs every analytic-vs-oracle check: closed forms against recursions,
/// Monte Carlo moments, dominance, CDF dominance, error bounds and limits.
VerifyReport run_verify(const VerifyOptions& options = {});

/// Random schedule with `steps` steps: times with gaps in [0.2, 2], amounts
/// in [0.1, 3], and a terminal time.
InvestmentSchedule random_schedule(PhiloxUniform& rng, std::size_t steps);
/// mu in [-0.3, 0.3], sigma in [0.05, 0.4].
GbmParams random_params(PhiloxUniform& rng);

}  // namespace dcalb
