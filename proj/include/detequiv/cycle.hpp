#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "detequiv/matrix.hpp"

namespace detequiv {

/// A two-argument table h(i, j) over an index set; diagonal unconstrained.
using PairFunction = Matrix;

/// Directed simple cycle (v0, ..., v_{r-1}, v0) stored without the closing
/// vertex and rotated so the smallest vertex comes first. Direction is kept.
/// Length 1 is the loop (x, x); length 2 is (x, y, x).
class Cycle {
public:
    /// Accepts open (v0..v_{r-1}) or closed (v0..v_{r-1}, v0) sequences.
    /// Throws ShapeMismatch on repeated vertices or an empty sequence.
    explicit Cycle(std::vector<std::size_t> vertices);
    Cycle(std::initializer_list<std::size_t> vertices) : Cycle(std::vector<std::size_t>(vertices)) {}

    std::size_t length() const noexcept { return vertices_.size(); }
    const std::vector<std::size_t>& vertices() const noexcept { return vertices_; }
    /// With the first vertex repeated at the end.
    std::vector<std::size_t> closed() const;
    std::string to_string() const;

    friend bool operator==(const Cycle&, const Cycle&) = default;
    friend auto operator<=>(const Cycle&, const Cycle&) = default;

private:
    std::vector<std::size_t> vertices_;
};

Cycle reverse(const Cycle& p);

/// h[p]: product of h(v_{i-1}, v_i) over the edges of p. The reverse product
/// h'[p] is cycle_product(h, reverse(p)).
Scalar cycle_product(const PairFunction& h, const Cycle& p);

using CycleProductFn = std::function<Scalar(const PairFunction&, const Cycle&)>;

/// One (i, j, k, i) per triple i < j < k, lexicographic.
std::vector<Cycle> enumerate_triangles(std::span<const std::size_t> indices);
std::vector<Cycle> enumerate_triangles(std::size_t n);

/// All canonical directed simple cycles of exactly `length` over {0..n-1}.
std::vector<Cycle> enumerate_cycles(std::size_t n, std::size_t length);

/// Number of canonical directed simple cycles of length 1..max_len over n vertices.
std::size_t count_cycles_up_to(std::size_t n, std::size_t max_len);

struct CocycleViolation {
    Cycle cycle;
    Scalar product;
};

/// Checks c(x,x) = 1, c(x,y)c(y,x) = 1 and c(x,y)c(y,z)c(z,x) = 1. Passing
/// these is enough for every cycle product to be 1.
std::optional<CocycleViolation> check_cocycle_shortcut(const PairFunction& c);

inline constexpr std::size_t kDefaultCycleCap = 5'000'000;

/// Tests every simple cycle of length <= max_len, shortest first.
/// Throws LimitExceeded above `cycle_cap` cycles and IndexOutOfRange if
/// max_len exceeds the index set.
std::optional<CocycleViolation> check_cocycle_bruteforce(const PairFunction& c, std::size_t max_len,
                                                         std::size_t cycle_cap = kDefaultCycleCap);

/// Name of the first decomposition identity that fails on the 4-element
/// table `h`, or nothing when all hold. The paired 4-cycle identities are
/// checked for every 4-cycle pair, the 4-cycle splittings for every directed
/// 4-cycle, and the star decomposition for every directed 3-cycle.
/// `product` replaces cycle_product (used to mutation-test the suite).
/// Throws ShapeMismatch unless h is 4x4 and ZeroOffDiagonal if an
/// off-diagonal entry is zero.
std::optional<std::string> find_decomposition_failure(const PairFunction& h,
                                                      const CycleProductFn& product = cycle_product);

bool verify_decomposition_identities(const PairFunction& h);

}  // namespace detequiv
