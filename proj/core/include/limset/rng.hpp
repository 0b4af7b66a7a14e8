#pragma once

#include <cmath>
#include <cstdint>

namespace limset {

// Counter-based generator: every draw is a pure function of
// (seed, shard, index, counter), so shards can be evaluated on any number
// of threads, in any order, without changing a single sample.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t shard, std::uint64_t index)
      : base_(mix(mix(seed ^ kShardSalt * shard) ^ kIndexSalt * index)) {}

  std::uint64_t next_u64() { return mix(base_ + kStep * ++counter_); }

  // uniform in [0,1), 53-bit mantissa
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kShardSalt = 0x9e3779b97f4a7c15ull;
  static constexpr std::uint64_t kIndexSalt = 0xd1b54a32d192ed03ull;
  static constexpr std::uint64_t kStep = 0xbf58476d1ce4e5b9ull;
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

// 99% two-sided Hoeffding half-width for a mean of N indicator samples
inline double hoeffding_half_width(long long samples) {
  if (samples <= 0) return 0.0;
  return std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(samples)));
}

}  // namespace limset
