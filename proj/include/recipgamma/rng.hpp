#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace recipgamma {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream. The 64-bit seed is the Philox key, the
/// 64-bit stream id fills the upper half of the counter and the substream
/// picks an independent sequence within a stream (e.g. data vs. sampler).
/// Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t substream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint32_t substream() const { return substream_; }

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  std::uint64_t operator()() { return next_u64(); }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint32_t substream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace recipgamma
