#include "dcalb/philox.hpp"

#include <algorithm>

#include "dcalb/normal.hpp"

namespace dcalb {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline PhiloxCounter round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key) noexcept {
  counter = round(counter, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kWeyl0;
    key[1] += kWeyl1;
    counter = round(counter, key);
  }
  return counter;
}

double uniform_open01(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

double gaussian_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const PhiloxKey key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const PhiloxCounter ctr{static_cast<std::uint32_t>(index),
                          static_cast<std::uint32_t>(index >> 32),
                          static_cast<std::uint32_t>(stream),
                          static_cast<std::uint32_t>(stream >> 32)};
  const auto out = philox4x32(ctr, key);
  const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  return normal_quantile(uniform_open01(bits));
}

double PhiloxUniform::next() noexcept {
  const PhiloxKey key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  const PhiloxCounter ctr{static_cast<std::uint32_t>(index_),
                          static_cast<std::uint32_t>(index_ >> 32),
                          static_cast<std::uint32_t>(stream_),
                          static_cast<std::uint32_t>(stream_ >> 32) ^ 0x5eed0000u};
  ++index_;
  const auto out = philox4x32(ctr, key);
  return uniform_open01((static_cast<std::uint64_t>(out[0]) << 32) | out[1]);
}

std::uint64_t PhiloxUniform::integer(std::uint64_t lo, std::uint64_t hi) noexcept {
  const auto span = static_cast<double>(hi - lo + 1);
  const auto offset = static_cast<std::uint64_t>(next() * span);
  return lo + std::min<std::uint64_t>(offset, hi - lo);
}

}  // namespace dcalb
