#pragma once

#include <cstdint>
#include <random>

namespace esym {

// Deterministic RNG wrapper. std::uniform_int_distribution is
// implementation-defined, so all draws go through expressions that are pinned
// by the standard; identical seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t u64() { return engine_(); }

    // uniform-ish in [0, n); modulo bias is irrelevant for test data
    std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : engine_() % n; }

    // uniform-ish in [lo, hi], inclusive
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (engine_() & 1u) != 0; }

private:
    std::mt19937_64 engine_;
};

} // namespace esym
