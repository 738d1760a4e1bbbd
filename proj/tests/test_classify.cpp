#include <doctest.h>

#include "detequiv/classify.hpp"
#include "detequiv/generate.hpp"
#include "detequiv/recovery.hpp"
#include "oracles.hpp"

using namespace detequiv;

namespace {
const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F101 = FieldSpec::prime(101);

// K(1,2)=2, K(2,3)=3, K(3,1)=5, K(2,1)=7, K(3,2)=11, K(1,3)=13 in 1-based labels.
Kernel triangle_example() {
    return Kernel::with_default_labels(Q, Matrix::from_ints(Q, {{1, 2, 13}, {7, 1, 3}, {5, 11, 1}}));
}

// Q agrees with K on every principal minor of order <= 3 but mixes triangle
// cases so that the order-4 minor can differ. K(3,0) is solved so that the
// triangles (0,1,2) and (0,1,3) need the same rescaling r.
std::pair<Kernel, Kernel> order_four_only_pair(std::uint64_t seed) {
    GenConfig cfg;
    cfg.n = 4;
    cfg.spec = F101;
    cfg.seed = seed;
    auto m = gen_random_kernel(cfg).entries();
    const auto r = m(0, 2) * m(2, 1) * m(1, 0) / (m(0, 1) * m(1, 2) * m(2, 0));
    m(3, 0) = m(0, 3) * m(3, 1) * m(1, 0) / (r * m(0, 1) * m(1, 3));
    auto q = m;
    q(1, 2) *= r;
    q(2, 1) /= r;
    q(1, 3) *= r;
    q(3, 1) /= r;
    return {Kernel::with_default_labels(F101, m), Kernel::with_default_labels(F101, q)};
}
}  // namespace

TEST_CASE("triangle classification") {
    const auto k = triangle_example();
    const Cycle p({0, 1, 2});
    CHECK(cycle_product(k.entries(), p) == Scalar::from_int(Q, 30));
    CHECK(cycle_product(k.entries(), reverse(p)) == Scalar::from_int(Q, 1001));
    CHECK(classify_triangle(k, k, p) == TriangleCase::Case1);
    CHECK(classify_triangle(k, k.transposed(), p) == TriangleCase::Case2);
    const auto sym = Kernel::with_default_labels(Q, Matrix::from_ints(Q, {{1, 2, 3}, {2, 1, 4}, {3, 4, 1}}));
    CHECK(classify_triangle(sym, sym, p) == TriangleCase::Both);
    auto m = k.entries();
    m(0, 1) = Scalar::from_int(Q, 4);
    const auto doubled = Kernel::with_default_labels(Q, m);
    CHECK(classify_triangle(k, doubled, p) == TriangleCase::Neither);
}

TEST_CASE("triangle identities") {
    const auto k = triangle_example();
    const Cycle p({0, 1, 2});
    auto ids = check_triangle_identities(k, k, p);
    CHECK(ids.sum_ok);
    CHECK(ids.prod_ok);
    auto m = k.entries();
    m(0, 1) = Scalar::from_int(Q, 4);
    ids = check_triangle_identities(k, Kernel::with_default_labels(Q, m), p);
    CHECK_FALSE(ids.sum_ok);
    GenConfig cfg;
    cfg.n = 5;
    cfg.spec = F101;
    cfg.seed = 3;
    const auto r = gen_random_kernel(cfg);
    const auto [q, t] = gen_conjugated_pair(r, 4, false);
    for (const auto& tri : enumerate_triangles(5)) {
        const auto v = check_triangle_identities(r, q, tri);
        CHECK(v.sum_ok);
        CHECK(v.prod_ok);
    }
}

TEST_CASE("global resolution") {
    const auto tris = enumerate_triangles(4);
    auto all = [&](TriangleCase c) {
        std::map<Cycle, TriangleCase> m;
        for (const auto& t : tris) m.emplace(t, c);
        return m;
    };
    CHECK(resolve_global_case(all(TriangleCase::Both), 4).global == GlobalCase::EitherWorks);
    CHECK(resolve_global_case(all(TriangleCase::Case1), 4).global == GlobalCase::Conjugation);
    CHECK(resolve_global_case(all(TriangleCase::Case2), 4).global == GlobalCase::TransposeConjugation);
    auto mixed = all(TriangleCase::Both);
    mixed[tris[3]] = TriangleCase::Case1;
    mixed[tris[1]] = TriangleCase::Case2;
    const auto r = resolve_global_case(mixed, 4);
    CHECK(r.global == GlobalCase::Mixed);
    CHECK(r.witnesses == std::vector<Cycle>{tris[3], tris[1]});
    mixed[tris[2]] = TriangleCase::Neither;
    CHECK(resolve_global_case(mixed, 4).global == GlobalCase::Inequivalent);
    auto partial = all(TriangleCase::Case1);
    partial.erase(tris[0]);
    CHECK_THROWS_AS(resolve_global_case(partial, 4), Error);
}

TEST_CASE("block counterexamples classify Mixed") {
    for (auto variant : {BlockVariant::ZeroBlocks, BlockVariant::OnesBlocks}) {
        const auto [k, q] = gen_block_counterexample(3, variant, 21);
        CHECK(classify_all(k, q).global == GlobalCase::Mixed);
    }
    const auto [k, q] = gen_block_counterexample(2, BlockVariant::OnesBlocks, 21);
    CHECK(classify_all(k, q).global == GlobalCase::Mixed);
}

TEST_CASE("parallel and serial classification agree") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        GenConfig cfg;
        cfg.n = 8;
        cfg.spec = F101;
        cfg.seed = seed;
        const auto k = gen_random_kernel(cfg);
        const auto [q, t] = gen_conjugated_pair(k, seed + 50, seed % 2 == 1);
        const auto a = classify_all(k, q);
        const auto b = classify_all_serial(k, q);
        CHECK(a.triangles == b.triangles);
        CHECK(a.global == b.global);
    }
}

TEST_CASE("four-cycle sums") {
    const auto k = triangle_example();
    GenConfig cfg;
    cfg.n = 5;
    cfg.spec = Q;
    cfg.seed = 8;
    const auto r = gen_random_kernel(cfg);
    const std::size_t s[] = {0, 1, 3, 4};
    CHECK(four_cycle_sum_diagnostic(r, r, s));
    const auto [q, t] = gen_conjugated_pair(r, 9, true);
    CHECK(four_cycle_sum_diagnostic(r, q, s));
    CHECK_THROWS_AS(four_cycle_sum_diagnostic(r, r, std::span<const std::size_t>(s, 3)), Error);
}

TEST_CASE("a perturbation invisible below order four") {
    const auto [k, q] = order_four_only_pair(31);
    CHECK(oracle::minors_equal(k, q, 3));
    CHECK_FALSE(oracle::minors_equal(k, q, 4));
    const std::size_t all4[] = {0, 1, 2, 3};
    CHECK_FALSE(four_cycle_sum_diagnostic(k, q, all4));
    CHECK(classify_all(k, q).global == GlobalCase::Mixed);
    const auto rec = recover(k, q);
    REQUIRE_FALSE(rec.ok());
    CHECK(rec.diagnosis().kind == DiagnosisKind::NotEquivalent);
    REQUIRE(rec.diagnosis().minor);
    CHECK(rec.diagnosis().minor->subset == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("key quadratic lemma") {
    const auto r = key_lemma_exhaustive(7);
    CHECK(r.tuples == 2401);
    CHECK(r.exceptions == 0);
    CHECK(r.satisfying > 0);
    CHECK(key_lemma_exhaustive(5).exceptions == 0);
    CHECK_THROWS_AS(key_lemma_exhaustive(8), Error);
    CHECK_THROWS_AS(key_lemma_exhaustive(257), Error);
}
