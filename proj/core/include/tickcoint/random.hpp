#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace tickcoint {

using Rng = std::mt19937_64;
using Seed = std::uint64_t;

// splitmix64 finalizer; used to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic child seed from a parent seed and a path of indices, e.g.
// derive_seed(master, n, rep) for one Monte Carlo replication.
inline Seed derive_seed(Seed parent, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(parent);
  for (std::uint64_t p : path) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

inline Rng make_rng(Seed seed) { return Rng(seed); }

// Stream tags so that independent components of one simulation never share
// a generator.
enum class Stream : std::uint64_t {
  kDurations = 1,
  kDriver = 2,
  kEfficient = 3,
  kNoise = 4,
  kDeformation = 5,
  kReference = 6,
  kBrownian = 7,
  kFractional = 8,
};

inline Seed stream_seed(Seed parent, Stream s, std::uint64_t asset = 0) noexcept {
  return derive_seed(parent, {static_cast<std::uint64_t>(s), asset});
}

}  // namespace tickcoint
