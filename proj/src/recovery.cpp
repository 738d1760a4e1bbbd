#include "detequiv/recovery.hpp"

#include <algorithm>
#include <array>

namespace detequiv {

std::string_view to_string(DiagnosisKind kind) {
    switch (kind) {
        case DiagnosisKind::NotEquivalent: return "NotEquivalent";
        case DiagnosisKind::MixedPartialTransposition: return "MixedPartialTransposition";
        case DiagnosisKind::HypothesisViolation: return "HypothesisViolation";
    }
    return "?";
}

PairFunction build_ratio(const Kernel& k, const Kernel& q, bool transpose) {
    require_comparable(k, q);
    const auto n = k.size();
    PairFunction s(n, Scalar::one(k.field()));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y) continue;
            const Scalar& denom = transpose ? k(y, x) : k(x, y);
            if (denom.is_zero()) {
                const auto [r, c] = transpose ? std::pair{y, x} : std::pair{x, y};
                throw Error(ErrorCode::ZeroOffDiagonal,
                            "K(" + k.labels()[r] + "," + k.labels()[c] + ") is zero");
            }
            s(x, y) = q(x, y) / denom;
        }
    return s;
}

std::vector<Scalar> recover_conjugation(const PairFunction& c, std::size_t base) {
    if (base >= c.size()) throw Error(ErrorCode::IndexOutOfRange, "base index " + std::to_string(base));
    if (auto v = check_cocycle_shortcut(c)) {
        throw Error(ErrorCode::NotACocycle,
                    "product over " + v->cycle.to_string() + " is " + format_scalar(v->product));
    }
    std::vector<Scalar> g;
    g.reserve(c.size());
    for (std::size_t z = 0; z < c.size(); ++z) g.push_back(c(z, base));
    return g;
}

Kernel apply_transformation(const Kernel& k, const Transformation& t) {
    const auto n = k.size();
    if (t.g.size() != n) {
        throw Error(ErrorCode::ShapeMismatch,
                    "conjugation function has " + std::to_string(t.g.size()) + " values for " + std::to_string(n));
    }
    std::vector<Scalar> inv;
    inv.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (t.g[i].is_zero()) throw Error(ErrorCode::ZeroConjugationValue, "g(" + k.labels()[i] + ") is zero");
        inv.push_back(t.g[i].inverse());
    }
    Matrix out(n, Scalar::zero(k.field()));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Scalar& src = t.transpose ? k(y, x) : k(x, y);
            out(x, y) = x == y ? src : t.g[x] * inv[y] * src;
        }
    return Kernel(k.field(), k.labels(), std::move(out));
}

bool verify_transformation(const Kernel& k, const Kernel& q, const Transformation& t) {
    if (k.size() != q.size() || k.field() != q.field() || t.g.size() != k.size()) return false;
    for (const auto& v : t.g) {
        if (v.field() != k.field() || v.is_zero()) return false;
    }
    return apply_transformation(k, t).entries() == q.entries();
}

bool proportional(const std::vector<Scalar>& g1, const std::vector<Scalar>& g2) {
    if (g1.size() != g2.size() || g1.empty()) return false;
    if (g2[0].is_zero() || g1[0].is_zero()) return false;
    const Scalar lambda = g1[0] / g2[0];
    for (std::size_t i = 0; i < g1.size(); ++i) {
        if (!(g1[i] == lambda * g2[i])) return false;
    }
    return true;
}

namespace {

Diagnosis not_equivalent(const Kernel& k, const Kernel& q, std::vector<std::size_t> subset, std::string message) {
    Diagnosis d;
    d.kind = DiagnosisKind::NotEquivalent;
    d.message = std::move(message);
    auto km = principal_minor(k, subset);
    auto qm = principal_minor(q, subset);
    d.minor = MinorViolation{std::move(subset), std::move(km), std::move(qm)};
    return d;
}

Transformation finish(const Kernel& k, const Kernel& q, Transformation t) {
    if (!verify_transformation(k, q, t)) {
        throw Error(ErrorCode::InvariantBreach, "recovered transformation does not reproduce Q");
    }
    return t;
}

// No triangles exist below three elements: solve the single off-diagonal
// pair directly, trying the plain conjugation first.
Recovery recover_small(const Kernel& k, const Kernel& q) {
    const auto one = Scalar::one(k.field());
    if (k.size() == 1) return {Transformation{false, {one}, 0}, std::nullopt};

    if (!k(0, 1).is_zero() && !q(0, 1).is_zero()) {
        return {finish(k, q, Transformation{false, {one, k(0, 1) / q(0, 1)}, 0}), std::nullopt};
    }
    for (bool transpose : {false, true}) {
        // Q(0,1) = K'(0,1) / g1 and Q(1,0) = g1 * K'(1,0), K' = K or its transpose.
        const Scalar& k01 = transpose ? k(1, 0) : k(0, 1);
        const Scalar& k10 = transpose ? k(0, 1) : k(1, 0);
        Scalar g1 = one;
        if (!k01.is_zero() && !q(0, 1).is_zero()) {
            g1 = k01 / q(0, 1);
        } else if (!k10.is_zero() && !q(1, 0).is_zero()) {
            g1 = q(1, 0) / k10;
        }
        Transformation t{transpose, {one, g1}, 0};
        if (verify_transformation(k, q, t)) return {std::move(t), std::nullopt};
    }
    Diagnosis d;
    d.kind = DiagnosisKind::HypothesisViolation;
    d.message = "zero off-diagonal entries admit no conjugation or transposition";
    d.zero_entries = check_support(k);
    return {std::move(d), std::nullopt};
}

}  // namespace

Recovery recover(const Kernel& k, const Kernel& q) {
    require_comparable(k, q);
    const auto n = k.size();

    for (std::size_t i = 0; i < n; ++i) {
        if (!(k(i, i) == q(i, i))) {
            return {not_equivalent(k, q, {i}, "diagonal entries differ"), std::nullopt};
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(k(i, j) * k(j, i) == q(i, j) * q(j, i))) {
                return {not_equivalent(k, q, {i, j}, "2x2 principal minors differ"), std::nullopt};
            }
        }

    if (n <= 2) return recover_small(k, q);

    const auto zeros = check_support(k);
    CaseReport cases = classify_all(k, q);

    if (cases.global == GlobalCase::Inequivalent) {
        const auto& v = cases.witnesses.front().vertices();
        std::vector<std::size_t> subset(v.begin(), v.end());
        std::sort(subset.begin(), subset.end());
        auto d = not_equivalent(k, q, std::move(subset), "3-cycle products match neither case");
        d.triangles = cases.witnesses;
        return {std::move(d), std::move(cases)};
    }

    if (cases.global == GlobalCase::Mixed) {
        // Under the support and cross-minor hypotheses a Mixed pattern forces
        // a differing minor of order <= 4; look for it before blaming a
        // partial transposition.
        const auto order4 = check_determinantal_equivalence(k, q, std::min<std::size_t>(n, 4));
        if (!order4.equivalent) {
            Diagnosis d;
            d.kind = DiagnosisKind::NotEquivalent;
            d.message = "triangles disagree on their case and a principal minor differs";
            d.minor = order4.first_violation;
            d.triangles = cases.witnesses;
            return {std::move(d), std::move(cases)};
        }
        Diagnosis d;
        d.kind = DiagnosisKind::MixedPartialTransposition;
        d.message = "some triangles need a transposition and others do not";
        d.triangles = cases.witnesses;
        d.zero_entries = zeros;
        d.cross_minor_violations = check_cross_minor_condition(k);
        return {std::move(d), std::move(cases)};
    }

    if (!zeros.empty()) {
        Diagnosis d;
        d.kind = DiagnosisKind::HypothesisViolation;
        d.message = "K has zero off-diagonal entries";
        d.zero_entries = zeros;
        return {std::move(d), std::move(cases)};
    }

    const bool transpose = cases.global == GlobalCase::TransposeConjugation;
    const PairFunction ratio = build_ratio(k, q, transpose);
    if (auto v = check_cocycle_shortcut(ratio)) {
        throw Error(ErrorCode::InvariantBreach, "resolved case " + std::string(to_string(cases.global)) +
                                                    " but the ratio fails the cocycle check on " +
                                                    v->cycle.to_string());
    }
    Transformation t{transpose, recover_conjugation(ratio, 0), 0};
    return {finish(k, q, std::move(t)), std::move(cases)};
}

}  // namespace detequiv
