#ifndef IDXCODE_RANDOM_HPP
#define IDXCODE_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace idxcode {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for an independent stream identified by (seed, tags...). Used to give
/// every (threshold, trial) pair and every restart its own generator.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept {
  std::uint64_t h = splitmix64(seed);
  for (auto t : tags) h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
  return h;
}

/// Cheap counter-style generator for short per-trial streams.
class StreamRng {
 public:
  using result_type = std::uint64_t;
  explicit StreamRng(std::uint64_t seed) noexcept : state_(seed) {}
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t state_;
};

inline StreamRng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags = {}) noexcept {
  return StreamRng(derive_seed(seed, tags));
}

inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags = {}) {
  return Rng(derive_seed(seed, tags));
}

}  // namespace idxcode

#endif  // IDXCODE_RANDOM_HPP
