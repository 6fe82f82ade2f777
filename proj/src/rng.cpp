#include "mra/rng.hpp"

namespace mra {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

StreamSeed StreamSeed::child(std::uint64_t tag) const noexcept {
    return StreamSeed(mix64(mix64(value_) ^ (tag * 0xD6E8FEB86659FD93ULL + 0x2545F4914F6CDD1DULL)));
}

StreamSeed StreamSeed::child(std::initializer_list<std::uint64_t> tags) const noexcept {
    StreamSeed s = *this;
    for (auto t : tags) {
        s = s.child(t);
    }
    return s;
}

void fill_standard_normal(Engine& engine, std::span<double> out) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& v : out) {
        v = normal(engine);
    }
}

} // namespace mra
