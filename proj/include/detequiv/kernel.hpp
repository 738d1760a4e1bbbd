#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "detequiv/matrix.hpp"

namespace detequiv {

/// A square table of field values over a finite labeled ground set.
/// Immutable once built; no symmetry is assumed.
class Kernel {
public:
    /// Validates n >= 1, distinct labels, label count == matrix size and that
    /// every entry belongs to `spec`.
    Kernel(FieldSpec spec, std::vector<std::string> labels, Matrix entries);

    /// Labels "1".."n".
    static std::vector<std::string> default_labels(std::size_t n);
    static Kernel with_default_labels(FieldSpec spec, Matrix entries);

    const FieldSpec& field() const noexcept { return spec_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const Matrix& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

    Kernel transposed() const;
    bool is_symmetric() const;

    friend bool operator==(const Kernel&, const Kernel&) = default;

private:
    FieldSpec spec_;
    std::vector<std::string> labels_;
    Matrix entries_;
};

/// Throws ShapeMismatch / FieldMismatch unless K and Q can be compared.
void require_comparable(const Kernel& k, const Kernel& q);

/// Determinant of the rows/columns in `subset`. Throws EmptySubset or IndexOutOfRange.
Scalar principal_minor(const Kernel& k, std::span<const std::size_t> subset);

struct MinorViolation {
    std::vector<std::size_t> subset;
    Scalar k_minor;
    Scalar q_minor;
};

struct MinorReport {
    bool equivalent = true;
    std::size_t max_order_checked = 0;
    std::size_t minors_checked = 0;
    std::optional<MinorViolation> first_violation;
};

/// Compares every principal minor of order <= max_order, subsets visited by
/// size and then lexicographically; stops at the first mismatch.
/// Uses OpenMP over batches of subsets; the reported violation is the same
/// as the serial scan's.
MinorReport check_determinantal_equivalence(const Kernel& k, const Kernel& q, std::size_t max_order);

/// Single-threaded reference for check_determinantal_equivalence.
MinorReport check_determinantal_equivalence_serial(const Kernel& k, const Kernel& q, std::size_t max_order);

struct IndexPair {
    std::size_t row;
    std::size_t col;
    friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Off-diagonal positions holding zero; empty means the support hypothesis holds.
std::vector<IndexPair> check_support(const Kernel& k);

/// Rows {x, z}, columns {y, w}: the minor K(x,y)K(z,w) - K(x,w)K(z,y).
struct Quadruple {
    std::size_t x, z, y, w;
    friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

/// All ordered quadruples of distinct indices whose cross minor vanishes.
std::vector<Quadruple> check_cross_minor_condition(const Kernel& k);

/// First vanishing cross minor in the same order, without building the list.
std::optional<Quadruple> first_cross_minor_violation(const Kernel& k);

/// Visits all size-k subsets of {0..n-1} in lexicographic order.
/// `fn` returns false to stop early; the function then returns false.
template <typename Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!fn(std::span<const std::size_t>(idx))) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detequiv
