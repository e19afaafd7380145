#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace bubbles {

/// Philox4x32-10 block function (Salmon et al., Random123). Maps a 128-bit
/// counter and 64-bit key to 128 pseudo-random bits.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter counter, Key key);
};

/// Deterministic substream identified by (seed, stream). Stream s draws from
/// counters (i, s) for i = 0, 1, ..., so substreams never overlap and do not
/// depend on which thread consumes them.
///
/// Satisfies UniformRandomBitGenerator with 32-bit output.
class CounterStream {
 public:
  using result_type = std::uint32_t;

  CounterStream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();

  /// Standard normal via Box-Muller; values come in cached pairs.
  double normal();

 private:
  void refill();

  Philox4x32::Key key_;
  std::uint64_t block_index_ = 0;
  std::uint64_t stream_;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer, used to derive independent seeds from labels.
std::uint64_t mix64(std::uint64_t x);

}  // namespace bubbles
