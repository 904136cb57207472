#include "caliblab/core/rng.hpp"

#include "caliblab/core/special.hpp"

namespace caliblab {

namespace {

constexpr std::uint32_t kPhiloxMul0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxWeyl1 = 0xBB67AE85u;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
inline std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {}

RngStream RngStream::substream(std::uint64_t id) const {
  return RngStream(splitmix64(master_seed_ ^ splitmix64(stream_id_)), id);
}

void RngStream::refill() {
  std::uint32_t c0 = lo32(counter_);
  std::uint32_t c1 = hi32(counter_);
  std::uint32_t c2 = lo32(stream_id_);
  std::uint32_t c3 = hi32(stream_id_);
  std::uint32_t k0 = lo32(master_seed_);
  std::uint32_t k1 = hi32(master_seed_);
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k0 += kPhiloxWeyl0;
      k1 += kPhiloxWeyl1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxMul0) * c0;
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxMul1) * c2;
    const std::uint32_t n0 = hi32(p1) ^ c1 ^ k0;
    const std::uint32_t n1 = lo32(p1);
    const std::uint32_t n2 = hi32(p0) ^ c3 ^ k1;
    const std::uint32_t n3 = lo32(p0);
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
  }
  block_ = {c0, c1, c2, c3};
  ++counter_;
  block_pos_ = 0;
}

std::uint64_t RngStream::next_u64() {
  if (block_pos_ >= 4) refill();
  const std::uint64_t lo = block_[block_pos_];
  const std::uint64_t hi = block_[block_pos_ + 1];
  block_pos_ += 2;
  return (hi << 32) | lo;
}

std::uint64_t RngStream::bounded(std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

double RngStream::uniform() {
  // 53 random bits centered in (0,1); cannot produce 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() { return normal_quantile(uniform()); }

}  // namespace caliblab
