#pragma once

#include <cstdint>
#include <string_view>

namespace vexp {

inline std::uint64_t fnv1a64(std::string_view s,
                             std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Named random stream derived from a root seed. Every consumer owns its own
// stream, keyed by (root_seed, name), so draws in one place never shift
// draws anywhere else. All values are produced from raw 64-bit words, not
// from <random> distributions, to keep output identical across standard
// library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t root_seed, std::string_view name)
      : state_(fnv1a64(name) ^ (root_seed * 0x9e3779b97f4a7c15ull)) {
    // burn a few words so nearby seeds decorrelate
    for (int i = 0; i < 4; ++i) splitmix64(state_);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0, 1), 53 bits
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive on both ends
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

 private:
  std::uint64_t state_;
};

}  // namespace vexp
