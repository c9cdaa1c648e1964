#pragma once

// Counter-based random streams. A stream is identified by a 64-bit key
// derived from the run seed and a list of labels (session, condition,
// block, trial), so any trial can be regenerated without replaying the
// ones before it.

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace resqu {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a, stable across platforms and runs.
constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class StreamKey {
public:
    explicit constexpr StreamKey(std::uint64_t seed) noexcept : key_(mix64(seed)) {}

    constexpr StreamKey with(std::uint64_t label) const noexcept { return StreamKey(key_, mix64(key_ ^ mix64(label))); }
    constexpr StreamKey with(std::string_view label) const noexcept { return with(fnv1a(label)); }

    constexpr std::uint64_t value() const noexcept { return key_; }

private:
    constexpr StreamKey(std::uint64_t, std::uint64_t derived) noexcept : key_(derived) {}
    std::uint64_t key_;
};

class CounterRng {
public:
    explicit constexpr CounterRng(StreamKey key) noexcept : key_(key.value()) {}

    constexpr std::uint64_t next_u64() noexcept { return mix64(key_ ^ mix64(++counter_)); }

    /// Uniform on the open interval (0,1).
    constexpr double uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Standard normal draw by inversion.
    double normal();

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) noexcept;

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace resqu
