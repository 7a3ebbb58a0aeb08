#pragma once

#include <cstdint>
#include <string_view>

namespace cliquesim {

// Splittable deterministic random stream. Each stream is keyed by
// (root seed, node id, phase label) so per-node coins are independent and a
// run is reproducible regardless of the order streams are drawn in.
class SplitStream {
 public:
  SplitStream(std::uint64_t root_seed, std::uint64_t node, std::string_view phase)
      : state_(derive(root_seed, node, phase)) {}

  std::uint64_t next_u64() {
    // SplitMix64 step.
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  // Unbiased uniform integer in [0, bound); bound > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  static std::uint64_t derive(std::uint64_t root_seed, std::uint64_t node,
                              std::string_view phase) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    auto mix_u64 = [&h](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffULL;
        h *= 0x100000001b3ULL;
      }
    };
    mix_u64(root_seed);
    mix_u64(node);
    for (char c : phase) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  std::uint64_t state_;
};

}  // namespace cliquesim
