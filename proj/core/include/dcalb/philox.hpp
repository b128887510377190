#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace dcalb {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
// pure function of (counter, key), so any draw can be recomputed in isolation.
inline constexpr std::string_view kPrngName = "philox4x32-10";
inline constexpr int kPrngVersion = 1;

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Uniform on the open interval (0, 1) from the top 52 bits; 53 would let
/// the half-step offset round up to 1.
double uniform_open01(std::uint64_t bits) noexcept;

/// Standard normal draw keyed by (seed, stream, index), produced by the
/// inverse-CDF transform of one Philox block.
double gaussian_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Sequential uniforms on (0, 1) from one (seed, stream) pair; used to draw
/// randomized test instances reproducibly.
class PhiloxUniform {
public:
  PhiloxUniform(std::uint64_t seed, std::uint64_t stream) noexcept : seed_(seed), stream_(stream) {}
  double next() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * next(); }
  // Integer in [lo, hi].
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) noexcept;

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t index_ = 0;
};

}  // namespace dcalb
