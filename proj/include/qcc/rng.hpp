#pragma once

#include <cstdint>

namespace qcc {

/// splitmix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based stream: a pure function of its key, so draws do not depend
/// on evaluation order or thread scheduling.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t realization, std::uint64_t index,
                           std::uint64_t slot);

/// Uniform double in [0, 1) from the top 53 bits of counter_hash.
double counter_uniform(std::uint64_t seed, std::uint64_t realization, std::uint64_t index,
                       std::uint64_t slot);

}  // namespace qcc
