#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>

#include "detequiv/kernel.hpp"
#include "detequiv/recovery.hpp"
#include "detequiv/rng.hpp"

namespace detequiv {

struct GenConfig {
    std::size_t n = 4;
    FieldSpec spec = FieldSpec::rationals();
    std::uint64_t seed = 0;
    bool require_cross_minor = false;
    std::size_t max_rejections = 100'000;
    /// Sample K(y,x) = K(x,y).
    bool symmetric = false;
};

/// Over Q, values are num/den with |num| <= kRationalNumerator and
/// 1 <= den <= kRationalDenominator.
inline constexpr std::int64_t kRationalNumerator = 20;
inline constexpr std::int64_t kRationalDenominator = 6;

/// Uniform nonzero element (rationals: from the range above).
Scalar random_nonzero(Rng& rng, const FieldSpec& spec);
/// Uniform element, zero allowed.
Scalar random_scalar(Rng& rng, const FieldSpec& spec);

/// Nonzero off-diagonal entries, free diagonal. With require_cross_minor the
/// kernel is resampled until no cross minor vanishes; throws
/// RejectionLimitExceeded after cfg.max_rejections attempts.
Kernel gen_random_kernel(const GenConfig& cfg);

/// Random nonzero g normalized to g(0) = 1, and Q = apply_transformation(K, t).
std::pair<Kernel, Transformation> gen_conjugated_pair(const Kernel& k, std::uint64_t seed, bool transpose);

enum class BlockVariant { ZeroBlocks, OnesBlocks };

std::string_view to_string(BlockVariant v);
BlockVariant parse_block_variant(std::string_view text);

/// K = [[C, B], [B, D]] and Q = [[C^T, B], [B, D]] with B all zeros or all
/// ones. C and D have nonzero off-diagonals and are resampled (at most 100
/// times) until neither is symmetric.
std::pair<Kernel, Kernel> gen_block_counterexample(std::size_t half, BlockVariant variant, std::uint64_t seed,
                                                   const FieldSpec& spec = FieldSpec::rationals());

}  // namespace detequiv
