#include "detequiv/selftest.hpp"

#include "detequiv/classify.hpp"
#include "detequiv/generate.hpp"

namespace detequiv {

bool SelftestResult::passed() const {
    for (const auto& p : properties)
        if (!p.passed) return false;
    return true;
}

std::string SelftestResult::first_failure() const {
    for (const auto& p : properties)
        if (!p.passed) return p.name;
    return {};
}

namespace {

PairFunction random_pair_function(Rng& rng, const FieldSpec& spec, std::size_t n) {
    PairFunction h(n, Scalar::zero(spec));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = i == j ? random_scalar(rng, spec) : random_nonzero(rng, spec);
    return h;
}

PairFunction ratio_function(Rng& rng, const FieldSpec& spec, std::size_t n) {
    std::vector<Scalar> g;
    for (std::size_t i = 0; i < n; ++i) g.push_back(random_nonzero(rng, spec));
    PairFunction c(n, Scalar::one(spec));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = g[i] / g[j];
    return c;
}

PropertyResult decomposition_identities(const SelftestOptions& opt) {
    PropertyResult r{"decomposition identities", true, 0, {}};
    Rng rng(0x5eed0001);
    const std::pair<FieldSpec, std::size_t> runs[] = {{FieldSpec::prime(101), opt.identity_samples_gf},
                                                      {FieldSpec::rationals(), opt.identity_samples_q}};
    for (const auto& [spec, samples] : runs) {
        for (std::size_t s = 0; s < samples; ++s) {
            ++r.cases;
            const auto h = random_pair_function(rng, spec, 4);
            if (auto failure = find_decomposition_failure(h, opt.product)) {
                r.passed = false;
                r.detail = *failure + " over " + spec.to_string();
                return r;
            }
        }
    }
    return r;
}

PropertyResult cocycle_shortcut_vs_bruteforce(const SelftestOptions& opt) {
    PropertyResult r{"cocycle shortcut agrees with brute force", true, 0, {}};
    Rng rng(0x5eed0002);
    const auto spec = FieldSpec::prime(101);
    constexpr std::size_t n = 6;
    for (std::size_t s = 0; s < opt.cocycle_samples; ++s) {
        auto c = ratio_function(rng, spec, n);
        if (s % 2 == 1) {
            // Perturb one off-diagonal entry.
            const auto i = rng.below(n);
            const auto j = (i + 1 + rng.below(n - 1)) % n;
            c(i, j) *= Scalar::from_residue(2 + rng.below(99), 101);
        }
        ++r.cases;
        const bool shortcut = !check_cocycle_shortcut(c).has_value();
        const bool brute = !check_cocycle_bruteforce(c, n).has_value();
        if (shortcut != brute) {
            r.passed = false;
            r.detail = "sample " + std::to_string(s) + ": shortcut " + (shortcut ? "passes" : "fails") +
                       ", brute force " + (brute ? "passes" : "fails");
            return r;
        }
    }
    return r;
}

PropertyResult key_lemma() {
    PropertyResult r{"key quadratic lemma over GF(7)", true, 0, {}};
    const auto result = key_lemma_exhaustive(7);
    r.cases = result.tuples;
    if (result.exceptions != 0) {
        r.passed = false;
        r.detail = std::to_string(result.exceptions) + " exceptions";
    }
    return r;
}

PropertyResult triangle_dichotomy() {
    PropertyResult r{"conjugated pairs never classify Neither", true, 0, {}};
    const auto spec = FieldSpec::prime(101);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GenConfig cfg;
        cfg.n = 3 + seed % 4;
        cfg.spec = spec;
        cfg.seed = 0x5eed1000 + seed;
        const auto k = gen_random_kernel(cfg);
        const bool transpose = seed % 2 == 1;
        const auto [q, t] = gen_conjugated_pair(k, cfg.seed + 1, transpose);
        const auto cases = classify_all_serial(k, q);
        ++r.cases;
        const auto expected = transpose ? GlobalCase::TransposeConjugation : GlobalCase::Conjugation;
        if (cases.global != expected && cases.global != GlobalCase::EitherWorks) {
            r.passed = false;
            r.detail = "seed " + std::to_string(seed) + " resolved to " + std::string(to_string(cases.global));
            return r;
        }
    }
    return r;
}

}  // namespace

SelftestResult run_selftest(const SelftestOptions& options) {
    SelftestResult result;
    result.properties.push_back(decomposition_identities(options));
    result.properties.push_back(cocycle_shortcut_vs_bruteforce(options));
    result.properties.push_back(key_lemma());
    result.properties.push_back(triangle_dichotomy());
    return result;
}

}  // namespace detequiv
