#pragma once

#include <cstdint>
#include <random>

namespace rasec {

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream). Streams with different indices never
/// share state, so Monte Carlo work split across them is reproducible regardless
/// of scheduling.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x52415345u};
  return Rng(seq);
}

}  // namespace rasec
