#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace randroots {

/// Identifies one reproducible stream of random draws. Two streams with the
/// same master seed and different indices never share a counter block.
struct SeedStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const SeedStream&, const SeedStream&) = default;
};

/// Counter-based generator (Philox4x32-10). The key is the master seed, the
/// upper half of the counter is the stream index and the lower half counts
/// blocks within the stream, so any draw is a pure function of
/// (master_seed, stream_index, position).
class Rng {
 public:
  explicit Rng(SeedStream stream);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via the Marsaglia polar method.
  double normal();

  SeedStream stream() const { return stream_; }

 private:
  void refill();

  SeedStream stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  std::optional<double> spare_normal_;
};

/// Philox4x32-10 block function, exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

}  // namespace randroots
