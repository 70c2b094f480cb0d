#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace bessel_br::numerics {

/// Identifies one reproducible random stream.
///
/// The triple is mapped bijectively onto a Philox-4x64-10 key and counter
/// (key = {master_seed, replicate_index}, counter = {block, substream_index, 0, 0}),
/// so a stream never depends on how many other streams exist or the order in
/// which they are drawn.
struct StreamKey {
  std::uint64_t master_seed = 0;
  std::uint64_t replicate_index = 0;
  std::uint64_t substream_index = 0;

  StreamKey with_replicate(std::uint64_t r) const { return {master_seed, r, substream_index}; }
  StreamKey with_substream(std::uint64_t s) const { return {master_seed, replicate_index, s}; }
  /// Substream offset relative to this key's own substream_index.
  StreamKey offset(std::uint64_t by) const {
    return {master_seed, replicate_index, substream_index + by};
  }

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

/// Philox-4x64 with 10 rounds. Pure function of (counter, key).
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key);

/// Sequential uniform/normal draws from one StreamKey.
class RandomStream {
 public:
  explicit RandomStream(const StreamKey& key);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal via Box-Muller; pairs are consumed in order.
  double normal();
  /// Exponential(1).
  double exponential();

 private:
  void refill();

  std::array<std::uint64_t, 2> key_;
  std::uint64_t substream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 4> buffer_{};
  int used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// `count` i.i.d. N(0, 1) draws, deterministic in `key`.
std::vector<double> std_normal_sample(const StreamKey& key, std::size_t count);

}  // namespace bessel_br::numerics
