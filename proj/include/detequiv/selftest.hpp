#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "detequiv/cycle.hpp"

namespace detequiv {

struct SelftestOptions {
    /// Product used by the decomposition-identity check.
    CycleProductFn product = cycle_product;
    std::size_t identity_samples_gf = 200;
    std::size_t identity_samples_q = 50;
    std::size_t cocycle_samples = 100;
};

struct PropertyResult {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::string detail;
};

struct SelftestResult {
    std::vector<PropertyResult> properties;
    bool passed() const;
    /// Name of the first failing property, empty when all pass.
    std::string first_failure() const;
};

/// Fixed-seed run of the decomposition identities, the cocycle shortcut
/// against brute force, the exhaustive GF(7) key lemma and the triangle
/// dichotomy on generated pairs.
SelftestResult run_selftest(const SelftestOptions& options = {});

}  // namespace detequiv
