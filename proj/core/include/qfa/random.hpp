#pragma once

#include <cstdint>
#include <random>

namespace qfa {

/// splitmix64 finalizer; mixes a root seed with a stream index into an independent seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

/// Per-sample generator: stream `index` of the root seed.
inline std::mt19937_64 sample_rng(std::uint64_t root, std::uint64_t index) {
  return std::mt19937_64(derive_seed(root, index));
}

}  // namespace qfa
