#include "qcc/rng.hpp"

namespace qcc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t realization, std::uint64_t index,
                           std::uint64_t slot) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ realization);
  h = splitmix64(h ^ index);
  return splitmix64(h ^ slot);
}

double counter_uniform(std::uint64_t seed, std::uint64_t realization, std::uint64_t index,
                       std::uint64_t slot) {
  return static_cast<double>(counter_hash(seed, realization, index, slot) >> 11) * 0x1.0p-53;
}

}  // namespace qcc
