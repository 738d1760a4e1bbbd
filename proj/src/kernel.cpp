#include "detequiv/kernel.hpp"

#include <set>

namespace detequiv {

Kernel::Kernel(FieldSpec spec, std::vector<std::string> labels, Matrix entries)
    : spec_(spec), labels_(std::move(labels)), entries_(std::move(entries)) {
    if (entries_.size() == 0) throw Error(ErrorCode::ShapeMismatch, "kernel must have at least one element");
    if (labels_.size() != entries_.size()) {
        throw Error(ErrorCode::ShapeMismatch, std::to_string(labels_.size()) + " labels for a " +
                                                  std::to_string(entries_.size()) + "x" +
                                                  std::to_string(entries_.size()) + " kernel");
    }
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty()) throw Error(ErrorCode::ParseError, "empty label");
        if (!seen.insert(l).second) throw Error(ErrorCode::ParseError, "duplicate label '" + l + "'");
    }
    for (const auto& v : entries_.values()) {
        if (v.field() != spec_) throw Error(ErrorCode::FieldMismatch, "entry outside " + spec_.to_string());
    }
}

std::vector<std::string> Kernel::default_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return labels;
}

Kernel Kernel::with_default_labels(FieldSpec spec, Matrix entries) {
    auto n = entries.size();
    return Kernel(spec, default_labels(n), std::move(entries));
}

Kernel Kernel::transposed() const { return Kernel(spec_, labels_, entries_.transposed()); }

bool Kernel::is_symmetric() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (!(entries_(i, j) == entries_(j, i))) return false;
    return true;
}

void require_comparable(const Kernel& k, const Kernel& q) {
    if (k.field() != q.field()) {
        throw Error(ErrorCode::FieldMismatch, k.field().to_string() + " vs " + q.field().to_string());
    }
    if (k.size() != q.size()) {
        throw Error(ErrorCode::ShapeMismatch, std::to_string(k.size()) + " vs " + std::to_string(q.size()));
    }
    if (k.labels() != q.labels()) throw Error(ErrorCode::ShapeMismatch, "kernels have different labels");
}

Scalar principal_minor(const Kernel& k, std::span<const std::size_t> subset) {
    if (subset.empty()) throw Error(ErrorCode::EmptySubset, "principal minor of an empty subset");
    return determinant(k.entries().submatrix(subset), k.field());
}

namespace {

void check_order(const Kernel& k, std::size_t max_order) {
    if (max_order < 1 || max_order > k.size()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "max order " + std::to_string(max_order) + " outside [1, " + std::to_string(k.size()) + "]");
    }
}

}  // namespace

MinorReport check_determinantal_equivalence_serial(const Kernel& k, const Kernel& q, std::size_t max_order) {
    require_comparable(k, q);
    check_order(k, max_order);
    MinorReport report;
    report.max_order_checked = max_order;
    for (std::size_t order = 1; order <= max_order && report.equivalent; ++order) {
        for_each_combination(k.size(), order, [&](std::span<const std::size_t> subset) {
            ++report.minors_checked;
            auto km = principal_minor(k, subset);
            auto qm = principal_minor(q, subset);
            if (km == qm) return true;
            report.equivalent = false;
            report.first_violation = MinorViolation{{subset.begin(), subset.end()}, std::move(km), std::move(qm)};
            return false;
        });
    }
    return report;
}

MinorReport check_determinantal_equivalence(const Kernel& k, const Kernel& q, std::size_t max_order) {
    require_comparable(k, q);
    check_order(k, max_order);
    constexpr std::size_t kBatch = 256;

    MinorReport report;
    report.max_order_checked = max_order;
    std::vector<std::vector<std::size_t>> batch;
    batch.reserve(kBatch);

    // Returns false once a violation has been recorded.
    auto flush = [&]() {
        const auto count = static_cast<std::ptrdiff_t>(batch.size());
        std::vector<char> mismatch(batch.size(), 0);
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            const auto& s = batch[static_cast<std::size_t>(i)];
            mismatch[static_cast<std::size_t>(i)] = principal_minor(k, s) == principal_minor(q, s) ? 0 : 1;
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            ++report.minors_checked;
            if (mismatch[i]) {
                report.equivalent = false;
                report.first_violation = MinorViolation{batch[i], principal_minor(k, batch[i]), principal_minor(q, batch[i])};
                batch.clear();
                return false;
            }
        }
        batch.clear();
        return true;
    };

    for (std::size_t order = 1; order <= max_order; ++order) {
        bool keep_going = for_each_combination(k.size(), order, [&](std::span<const std::size_t> subset) {
            batch.emplace_back(subset.begin(), subset.end());
            return batch.size() < kBatch || flush();
        });
        if (!keep_going || !flush()) break;
    }
    return report;
}

std::vector<IndexPair> check_support(const Kernel& k) {
    std::vector<IndexPair> out;
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = 0; j < k.size(); ++j)
            if (i != j && k(i, j).is_zero()) out.push_back({i, j});
    return out;
}

namespace {

template <typename Fn>
void for_each_vanishing_cross_minor(const Kernel& k, Fn&& fn) {
    const auto n = k.size();
    if (n < 4) return;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            if (z == x) continue;
            for (std::size_t y = 0; y < n; ++y) {
                if (y == x || y == z) continue;
                for (std::size_t w = 0; w < n; ++w) {
                    if (w == x || w == z || w == y) continue;
                    if (k(x, y) * k(z, w) == k(x, w) * k(z, y)) {
                        if (!fn(Quadruple{x, z, y, w})) return;
                    }
                }
            }
        }
}

}  // namespace

std::vector<Quadruple> check_cross_minor_condition(const Kernel& k) {
    std::vector<Quadruple> out;
    for_each_vanishing_cross_minor(k, [&](const Quadruple& qd) {
        out.push_back(qd);
        return true;
    });
    return out;
}

std::optional<Quadruple> first_cross_minor_violation(const Kernel& k) {
    std::optional<Quadruple> out;
    for_each_vanishing_cross_minor(k, [&](const Quadruple& qd) {
        out = qd;
        return false;
    });
    return out;
}

}  // namespace detequiv
