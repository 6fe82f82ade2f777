#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace mra {

using Engine = std::mt19937_64;

/// Stateless seed for one random substream. Children are derived by hashing
/// (parent, tag), so the stream consumed by measurement i depends only on the
/// master seed and i, never on generation order or thread count.
class StreamSeed {
public:
    constexpr StreamSeed() = default;
    constexpr explicit StreamSeed(std::uint64_t value) : value_(value) {}

    [[nodiscard]] constexpr std::uint64_t value() const noexcept { return value_; }

    [[nodiscard]] StreamSeed child(std::uint64_t tag) const noexcept;
    [[nodiscard]] StreamSeed child(std::initializer_list<std::uint64_t> tags) const noexcept;
    [[nodiscard]] Engine engine() const { return Engine(value_); }

    friend constexpr bool operator==(StreamSeed, StreamSeed) = default;

private:
    std::uint64_t value_ = 0;
};

// Well-known tags separating the top-level substreams of an experiment.
namespace stream {
inline constexpr std::uint64_t signal = 0x5349474e414cULL;       // "SIGNAL"
inline constexpr std::uint64_t measurements = 0x4d45415355ULL;   // "MEASU"
inline constexpr std::uint64_t net = 0x4e4554ULL;                // "NET"
inline constexpr std::uint64_t init = 0x494e4954ULL;             // "INIT"
inline constexpr std::uint64_t monte_carlo = 0x4d4f4e5445ULL;    // "MONTE"
} // namespace stream

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

void fill_standard_normal(Engine& engine, std::span<double> out);

} // namespace mra
