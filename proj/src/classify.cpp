#include "detequiv/classify.hpp"

#include <array>

namespace detequiv {

std::string_view to_string(TriangleCase c) {
    switch (c) {
        case TriangleCase::Case1: return "Case1";
        case TriangleCase::Case2: return "Case2";
        case TriangleCase::Both: return "Both";
        case TriangleCase::Neither: return "Neither";
    }
    return "?";
}

std::string_view to_string(GlobalCase c) {
    switch (c) {
        case GlobalCase::Conjugation: return "Conjugation";
        case GlobalCase::TransposeConjugation: return "TransposeConjugation";
        case GlobalCase::EitherWorks: return "EitherWorks";
        case GlobalCase::Mixed: return "Mixed";
        case GlobalCase::Inequivalent: return "Inequivalent";
    }
    return "?";
}

namespace {

struct TriangleProducts {
    Scalar k, k_rev, q, q_rev;
};

TriangleProducts products(const Kernel& k, const Kernel& q, const Cycle& p) {
    if (p.length() != 3) throw Error(ErrorCode::ShapeMismatch, "expected a 3-cycle, got " + p.to_string());
    const Cycle rev = reverse(p);
    return {cycle_product(k.entries(), p), cycle_product(k.entries(), rev), cycle_product(q.entries(), p),
            cycle_product(q.entries(), rev)};
}

}  // namespace

TriangleCase classify_triangle(const Kernel& k, const Kernel& q, const Cycle& p) {
    const auto t = products(k, q, p);
    const bool case1 = t.k == t.q && t.k_rev == t.q_rev;
    const bool case2 = t.k == t.q_rev && t.k_rev == t.q;
    if (case1 && case2) return TriangleCase::Both;
    if (case1) return TriangleCase::Case1;
    if (case2) return TriangleCase::Case2;
    return TriangleCase::Neither;
}

TriangleIdentities check_triangle_identities(const Kernel& k, const Kernel& q, const Cycle& p) {
    const auto t = products(k, q, p);
    return {t.k + t.k_rev == t.q + t.q_rev, t.k * t.k_rev == t.q * t.q_rev};
}

CaseReport resolve_global_case(std::map<Cycle, TriangleCase> triangles, std::size_t n) {
    CaseReport report;
    if (n >= 3) {
        for (const auto& t : enumerate_triangles(n)) {
            if (!triangles.contains(t)) throw Error(ErrorCode::IncompleteReport, "no case for triangle " + t.to_string());
        }
    }
    report.triangles = std::move(triangles);

    const Cycle* first_case1 = nullptr;
    const Cycle* first_case2 = nullptr;
    const Cycle* first_neither = nullptr;
    for (const auto& [cycle, c] : report.triangles) {
        if (c == TriangleCase::Case1 && !first_case1) first_case1 = &cycle;
        if (c == TriangleCase::Case2 && !first_case2) first_case2 = &cycle;
        if (c == TriangleCase::Neither && !first_neither) first_neither = &cycle;
    }
    if (first_neither) {
        report.global = GlobalCase::Inequivalent;
        report.witnesses = {*first_neither};
    } else if (first_case1 && first_case2) {
        report.global = GlobalCase::Mixed;
        report.witnesses = {*first_case1, *first_case2};
    } else if (first_case1) {
        report.global = GlobalCase::Conjugation;
    } else if (first_case2) {
        report.global = GlobalCase::TransposeConjugation;
    } else {
        report.global = GlobalCase::EitherWorks;
    }
    return report;
}

CaseReport classify_all_serial(const Kernel& k, const Kernel& q) {
    require_comparable(k, q);
    std::map<Cycle, TriangleCase> map;
    if (k.size() >= 3) {
        for (const auto& t : enumerate_triangles(k.size())) map.emplace(t, classify_triangle(k, q, t));
    }
    return resolve_global_case(std::move(map), k.size());
}

CaseReport classify_all(const Kernel& k, const Kernel& q) {
    require_comparable(k, q);
    if (k.size() < 3) return resolve_global_case({}, k.size());
    const auto triangles = enumerate_triangles(k.size());
    std::vector<TriangleCase> cases(triangles.size());
    const auto count = static_cast<std::ptrdiff_t>(triangles.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto u = static_cast<std::size_t>(i);
        cases[u] = classify_triangle(k, q, triangles[u]);
    }
    std::map<Cycle, TriangleCase> map;
    for (std::size_t i = 0; i < triangles.size(); ++i) map.emplace(triangles[i], cases[i]);
    return resolve_global_case(std::move(map), k.size());
}

bool four_cycle_sum_diagnostic(const Kernel& k, const Kernel& q, std::span<const std::size_t> subset) {
    require_comparable(k, q);
    if (subset.size() != 4) throw Error(ErrorCode::ShapeMismatch, "four-cycle sums need exactly 4 indices");
    const auto a = subset[0], b = subset[1], c = subset[2], d = subset[3];
    // One orientation of each of the three undirected 4-cycles on {a,b,c,d}.
    const std::array<Cycle, 3> quads{Cycle{a, b, c, d}, Cycle{a, b, d, c}, Cycle{a, c, b, d}};
    Scalar k_sum = Scalar::zero(k.field());
    Scalar q_sum = Scalar::zero(k.field());
    for (const auto& p : quads) {
        const Cycle rev = reverse(p);
        k_sum += cycle_product(k.entries(), p) + cycle_product(k.entries(), rev);
        q_sum += cycle_product(q.entries(), p) + cycle_product(q.entries(), rev);
    }
    return k_sum == q_sum;
}

KeyLemmaResult key_lemma_exhaustive(std::uint64_t p) {
    if (!is_prime_u64(p)) throw Error(ErrorCode::InvalidField, std::to_string(p) + " is not prime");
    if (p > kKeyLemmaMaxPrime) throw Error(ErrorCode::LimitExceeded, "exhaustive search needs p <= 251");
    KeyLemmaResult r;
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b)
            for (std::uint64_t a2 = 0; a2 < p; ++a2)
                for (std::uint64_t b2 = 0; b2 < p; ++b2) {
                    ++r.tuples;
                    if ((a + b) % p != (a2 + b2) % p || (a * b) % p != (a2 * b2) % p) continue;
                    ++r.satisfying;
                    const bool same = (a == a2 && b == b2) || (a == b2 && b == a2);
                    if (!same) ++r.exceptions;
                }
    return r;
}

}  // namespace detequiv
