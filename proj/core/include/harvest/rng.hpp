#pragma once

#include <cstdint>
#include <random>

namespace harvest {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to spread user seeds and derive independent
// per-task streams (bootstrap samples, restarts, multi-seed sweeps).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline Rng make_stream_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(derive_seed(seed, stream));
}

// std::normal_distribution is undefined for sigma <= 0; a zero-spread draw
// must also consume no entropy so downstream streams stay aligned.
inline double draw_normal(Rng& rng, double mean, double sd) {
  if (sd <= 0.0) return mean;
  std::normal_distribution<double> dist(mean, sd);
  return dist(rng);
}

}  // namespace harvest
