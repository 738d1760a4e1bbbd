#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "detequiv/cycle.hpp"
#include "detequiv/kernel.hpp"

namespace detequiv {

/// How the four products K[p], K'[p], Q[p], Q'[p] of one 3-cycle pair up.
///   Case1:   K[p] = Q[p]  and K'[p] = Q'[p]   (and not Case2)
///   Case2:   K[p] = Q'[p] and K'[p] = Q[p]    (and not Case1)
///   Both:    both assignments hold
///   Neither: no assignment holds
enum class TriangleCase { Case1, Case2, Both, Neither };

enum class GlobalCase { Conjugation, TransposeConjugation, EitherWorks, Mixed, Inequivalent };

std::string_view to_string(TriangleCase c);
std::string_view to_string(GlobalCase c);

struct CaseReport {
    std::map<Cycle, TriangleCase> triangles;
    GlobalCase global = GlobalCase::EitherWorks;
    /// Mixed: first Case1 and first Case2 triangle. Inequivalent: first Neither.
    std::vector<Cycle> witnesses;
};

TriangleCase classify_triangle(const Kernel& k, const Kernel& q, const Cycle& p);

struct TriangleIdentities {
    bool sum_ok;   // K[p] + K'[p] == Q[p] + Q'[p]
    bool prod_ok;  // K[p] K'[p] == Q[p] Q'[p]
};

TriangleIdentities check_triangle_identities(const Kernel& k, const Kernel& q, const Cycle& p);

/// Applies the resolution rules to a complete per-triangle map over an
/// n-element ground set. Throws IncompleteReport if a triangle is missing.
CaseReport resolve_global_case(std::map<Cycle, TriangleCase> triangles, std::size_t n);

/// Classifies every canonical triangle (OpenMP over triangles) and resolves.
/// For n < 3 there are no triangles and the result is EitherWorks.
CaseReport classify_all(const Kernel& k, const Kernel& q);

/// Single-threaded reference for classify_all.
CaseReport classify_all_serial(const Kernel& k, const Kernel& q);

/// Sum over the three undirected 4-cycles of the 4-element `subset` of
/// K[q] + K'[q], compared against the same sum for Q.
bool four_cycle_sum_diagnostic(const Kernel& k, const Kernel& q, std::span<const std::size_t> subset);

struct KeyLemmaResult {
    std::size_t tuples = 0;
    std::size_t satisfying = 0;  // tuples with a+b = a'+b' and ab = a'b'
    std::size_t exceptions = 0;  // satisfying tuples where {a,b} != {a',b'}
};

inline constexpr std::uint64_t kKeyLemmaMaxPrime = 251;

/// Exhaustive check over GF(p)^4 that equal sums and products force equal
/// multisets {a, b} = {a', b'}.
/// Throws InvalidField unless p is prime, LimitExceeded above kKeyLemmaMaxPrime.
KeyLemmaResult key_lemma_exhaustive(std::uint64_t p);

}  // namespace detequiv
