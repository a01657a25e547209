#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace levyreflect {

// xoshiro256** keyed by (seed, stream, substream). Each Monte Carlo
// replication owns the stream equal to its index, so the sequence a
// replication sees never depends on how replications are scheduled.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t substream = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on (0, 1).
  double uniform_open() noexcept;
  double exponential(double rate) noexcept;
  /// Standard normal (Marsaglia polar method, spare value cached).
  double normal() noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace levyreflect
