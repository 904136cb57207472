#pragma once

#include <array>
#include <cstdint>

namespace caliblab {

// Counter-based pseudo-random stream (Philox-4x32-10).
//
// A stream is identified by (masterSeed, streamId).  Distinct stream ids
// select disjoint counter blocks of the same keyed permutation, so streams
// can be handed to parallel workers without coordination, and replaying a
// (masterSeed, streamId) pair reproduces the draw sequence bit-for-bit.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Child stream: folds this stream's identity into a fresh master seed,
  // so substream(i) of distinct parents are themselves distinct.
  RngStream substream(std::uint64_t id) const;

  std::uint64_t next_u64();

  // Uniform on {0, ..., n-1}, free of modulo bias.
  std::uint64_t bounded(std::uint64_t n);

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform();

  // Standard normal via the inverse-cdf transform of uniform().
  double normal();

 private:
  void refill();

  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int block_pos_ = 4;
};

}  // namespace caliblab
