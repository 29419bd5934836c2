#pragma once

#include <cstdint>
#include <random>

namespace sieveboot {

using Engine = std::mt19937_64;

/// Independent random streams used by the library. Each stream gets its own
/// seed family so that, e.g., bootstrap replication 7 and truth replication 7
/// never share draws.
enum class Stream : std::uint64_t {
    data = 1,
    bootstrap = 2,
    oracle = 3,
    truth = 4,
    innovation_record = 5,
    auxiliary = 6,
    presample = 7,
};

/// SplitMix64 finaliser.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed derivation rule for replications:
///   derive_seed(base, stream, index) = mix64(mix64(base ^ mix64(stream)) + index)
/// Distinct (stream, index) pairs give statistically independent engines and
/// the mapping never depends on scheduling or thread count.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t base, Stream stream, std::uint64_t index) noexcept;

[[nodiscard]] inline Engine make_engine(std::uint64_t seed) { return Engine{seed}; }

}  // namespace sieveboot
