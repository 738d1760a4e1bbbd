#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "detequiv/classify.hpp"
#include "detequiv/cycle.hpp"
#include "detequiv/kernel.hpp"

namespace detequiv {

/// Q(x,y) = g(x) g(y)^{-1} K(x,y), or with K(y,x) when `transpose` is set.
/// g is pinned by g(base_index) = 1.
struct Transformation {
    bool transpose = false;
    std::vector<Scalar> g;
    std::size_t base_index = 0;
};

enum class DiagnosisKind { NotEquivalent, MixedPartialTransposition, HypothesisViolation };

std::string_view to_string(DiagnosisKind kind);

struct Diagnosis {
    DiagnosisKind kind = DiagnosisKind::NotEquivalent;
    std::string message;
    /// NotEquivalent: a principal minor that differs.
    std::optional<MinorViolation> minor;
    /// MixedPartialTransposition: one Case1 and one Case2 triangle.
    /// NotEquivalent from classification: the Neither triangle.
    std::vector<Cycle> triangles;
    /// Off-diagonal zeros of K (HypothesisViolation, or alongside a Mixed diagnosis).
    std::vector<IndexPair> zero_entries;
    /// Vanishing cross minors of K, reported with a Mixed diagnosis.
    std::vector<Quadruple> cross_minor_violations;
};

struct Recovery {
    std::variant<Transformation, Diagnosis> result;
    /// Present whenever the triangles were classified.
    std::optional<CaseReport> cases;

    bool ok() const { return std::holds_alternative<Transformation>(result); }
    const Transformation& transformation() const { return std::get<Transformation>(result); }
    const Diagnosis& diagnosis() const { return std::get<Diagnosis>(result); }
};

/// S(x,y) = Q(x,y)/K(x,y), or S~(x,y) = Q(x,y)/K(y,x) when `transpose`;
/// diagonal 1. Throws ZeroOffDiagonal naming the first zero divisor.
PairFunction build_ratio(const Kernel& k, const Kernel& q, bool transpose);

/// g(z) = c(z, base). Throws NotACocycle with the violating cycle when the
/// length 1/2/3 checks fail.
std::vector<Scalar> recover_conjugation(const PairFunction& c, std::size_t base);

/// Throws ZeroConjugationValue for a zero g entry, ShapeMismatch for a wrong length.
Kernel apply_transformation(const Kernel& k, const Transformation& t);

/// Exact entrywise Q == apply_transformation(K, t); false for malformed t.
bool verify_transformation(const Kernel& k, const Kernel& q, const Transformation& t);

/// Recovers the conjugation/transposition taking K to Q, or explains why
/// none exists. Throws ShapeMismatch/FieldMismatch for incomparable kernels
/// and InvariantBreach if a recovered transform fails its final check.
Recovery recover(const Kernel& k, const Kernel& q);

/// True when g1 = lambda * g2 for a single nonzero lambda.
bool proportional(const std::vector<Scalar>& g1, const std::vector<Scalar>& g2);

}  // namespace detequiv
