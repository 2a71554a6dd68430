#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ceam {

using RngStream = std::mt19937_64;

/// splitmix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Hashes a master seed and a path of indices into an independent stream
/// seed. Streams depend only on their coordinates, never on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(master);
  for (auto p : path) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

inline RngStream make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  return RngStream(derive_seed(master, path));
}

}  // namespace ceam
