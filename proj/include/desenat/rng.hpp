#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace desenat {

namespace detail {

// SplitMix64 finalizer. Bijective, well distributed.
inline uint64_t mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace detail

// Identifies one deterministic random stream. Equal (seed, stream_id)
// always produce the same draw sequence, no matter which thread pulls
// them or in what order streams are consumed. Derive disjoint child
// streams with child() instead of sharing a sequential generator.
struct RngSpec {
  uint64_t seed = 0;
  uint64_t stream_id = 0;

  RngSpec child(uint64_t id) const {
    return RngSpec{seed, detail::mix64(stream_id + detail::kGolden * (id + 1))};
  }

  bool operator==(const RngSpec&) const = default;
};

// Counter-based generator over an RngSpec: draw i is a pure function of
// (seed, stream_id, i), so streams can be split across threads freely.
class RngStream {
 public:
  explicit RngStream(RngSpec spec)
      : base_(detail::mix64(spec.seed ^ detail::mix64(spec.stream_id))) {}

  uint64_t next_u64() { return detail::mix64(base_ + (++counter_) * detail::kGolden); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

  // Standard normal via Box-Muller; always consumes exactly two draws.
  double normal() {
    double u1 = next_double();
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(6.283185307179586477 * u2);
  }

  // Uniform integer in [0, n). Multiply-shift; bias is < 2^-64 per draw.
  uint64_t next_below(uint64_t n) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  int sign() { return (next_u64() & 1) ? 1 : -1; }

 private:
  uint64_t base_;
  uint64_t counter_ = 0;
};

// Fisher-Yates over indices [0, n), deterministic under the stream.
inline std::vector<int> shuffled_indices(int n, RngStream& rng) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
    std::swap(idx[i], idx[j]);
  }
  return idx;
}

// Stream purposes used across the training/attack pipeline. Keeping the
// tags in one table guards against accidental stream collisions.
namespace stream_tag {
constexpr uint64_t kModelInit = 1;
constexpr uint64_t kShuffle = 2;
constexpr uint64_t kBatchRatio = 3;
constexpr uint64_t kAdvGen = 4;
constexpr uint64_t kAttribution = 5;
constexpr uint64_t kCorruption = 6;
constexpr uint64_t kPruning = 7;
}  // namespace stream_tag

}  // namespace desenat
