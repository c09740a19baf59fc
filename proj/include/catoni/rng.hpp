#ifndef CATONI_RNG_HPP
#define CATONI_RNG_HPP

#include <cstdint>

namespace catoni {

/// SplitMix64 finalizer: a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child stream key for index i of stream `seed`. Draw i of a sample and
/// replication r of a simulation both address their randomness this way, so
/// results do not depend on evaluation order.
constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  return splitmix64(seed ^ splitmix64(i + 0x632be59bd9b4e019ULL));
}

/// Uniform on the open interval (0, 1) from the top 53 bits.
constexpr double to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// k-th uniform variate of draw i under `seed`.
constexpr double uniform_at(std::uint64_t seed, std::uint64_t i, std::uint64_t k) {
  return to_open_unit(mix(mix(seed, i), k));
}

}  // namespace catoni

#endif  // CATONI_RNG_HPP
