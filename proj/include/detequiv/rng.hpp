#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace detequiv {

/// Seeded generator used by every instance generator. The raw stream is
/// std::mt19937_64 (fully specified by the C++ standard); bounded draws use
/// rejection on the raw 64-bit output, so streams are identical across
/// standard libraries. The identifier is recorded in reports.
class Rng {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64+reject";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(below(span));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace detequiv
