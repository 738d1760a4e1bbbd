#include "detequiv/generate.hpp"

namespace detequiv {

Scalar random_nonzero(Rng& rng, const FieldSpec& spec) {
    if (spec.is_prime()) {
        return Scalar::from_residue(1 + rng.below(spec.modulus() - 1), spec.modulus());
    }
    std::int64_t num = 0;
    while (num == 0) num = rng.between(-kRationalNumerator, kRationalNumerator);
    return Scalar::from_fraction(spec, num, rng.between(1, kRationalDenominator));
}

Scalar random_scalar(Rng& rng, const FieldSpec& spec) {
    if (spec.is_prime()) return Scalar::from_residue(rng.below(spec.modulus()), spec.modulus());
    const auto num = rng.between(-kRationalNumerator, kRationalNumerator);
    return Scalar::from_fraction(spec, num, rng.between(1, kRationalDenominator));
}

namespace {

Kernel sample_kernel(Rng& rng, const GenConfig& cfg) {
    Matrix m(cfg.n, Scalar::zero(cfg.spec));
    for (std::size_t i = 0; i < cfg.n; ++i)
        for (std::size_t j = 0; j < cfg.n; ++j) {
            if (cfg.symmetric && j < i) {
                m(i, j) = m(j, i);
            } else {
                m(i, j) = i == j ? random_scalar(rng, cfg.spec) : random_nonzero(rng, cfg.spec);
            }
        }
    return Kernel::with_default_labels(cfg.spec, std::move(m));
}

}  // namespace

Kernel gen_random_kernel(const GenConfig& cfg) {
    if (cfg.n == 0) throw Error(ErrorCode::ShapeMismatch, "n must be at least 1");
    Rng rng(cfg.seed);
    if (!cfg.require_cross_minor || cfg.n < 4) return sample_kernel(rng, cfg);
    std::size_t last_offending = 0;
    for (std::size_t attempt = 0; attempt < cfg.max_rejections; ++attempt) {
        Kernel k = sample_kernel(rng, cfg);
        if (!first_cross_minor_violation(k)) return k;
        if (attempt + 1 == cfg.max_rejections) last_offending = check_cross_minor_condition(k).size();
    }
    throw Error(ErrorCode::RejectionLimitExceeded,
                std::to_string(cfg.max_rejections) + " samples rejected; the last had " +
                    std::to_string(last_offending) + " vanishing cross minors");
}

std::pair<Kernel, Transformation> gen_conjugated_pair(const Kernel& k, std::uint64_t seed, bool transpose) {
    Rng rng(seed);
    Transformation t;
    t.transpose = transpose;
    t.base_index = 0;
    for (std::size_t i = 0; i < k.size(); ++i) t.g.push_back(random_nonzero(rng, k.field()));
    const Scalar scale = t.g[0].inverse();
    for (auto& v : t.g) v *= scale;
    Kernel q = apply_transformation(k, t);
    return {std::move(q), std::move(t)};
}

std::string_view to_string(BlockVariant v) { return v == BlockVariant::ZeroBlocks ? "zero" : "ones"; }

BlockVariant parse_block_variant(std::string_view text) {
    if (text == "zero" || text == "zeros" || text == "ZeroBlocks") return BlockVariant::ZeroBlocks;
    if (text == "ones" || text == "OnesBlocks") return BlockVariant::OnesBlocks;
    throw Error(ErrorCode::ParseError, "unknown block variant '" + std::string(text) + "'");
}

namespace {

Matrix nonsymmetric_block(Rng& rng, std::size_t half, const FieldSpec& spec) {
    constexpr int kMaxAttempts = 100;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Matrix c(half, Scalar::zero(spec));
        for (std::size_t i = 0; i < half; ++i)
            for (std::size_t j = 0; j < half; ++j)
                c(i, j) = i == j ? random_scalar(rng, spec) : random_nonzero(rng, spec);
        if (!(c == c.transposed())) return c;
    }
    throw Error(ErrorCode::RejectionLimitExceeded, "could not sample a non-symmetric block");
}

}  // namespace

std::pair<Kernel, Kernel> gen_block_counterexample(std::size_t half, BlockVariant variant, std::uint64_t seed,
                                                   const FieldSpec& spec) {
    if (half < 2) throw Error(ErrorCode::ShapeMismatch, "block counterexample needs half >= 2");
    Rng rng(seed);
    const Matrix c = nonsymmetric_block(rng, half, spec);
    const Matrix d = nonsymmetric_block(rng, half, spec);
    const Scalar fill = variant == BlockVariant::OnesBlocks ? Scalar::one(spec) : Scalar::zero(spec);
    const auto n = 2 * half;
    Matrix k(n, fill);
    Matrix q(n, fill);
    for (std::size_t i = 0; i < half; ++i)
        for (std::size_t j = 0; j < half; ++j) {
            k(i, j) = c(i, j);
            q(i, j) = c(j, i);
            k(half + i, half + j) = d(i, j);
            q(half + i, half + j) = d(i, j);
        }
    return {Kernel::with_default_labels(spec, std::move(k)), Kernel::with_default_labels(spec, std::move(q))};
}

}  // namespace detequiv
