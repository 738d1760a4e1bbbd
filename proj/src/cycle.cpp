#include "detequiv/cycle.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "detequiv/kernel.hpp"

namespace detequiv {

Cycle::Cycle(std::vector<std::size_t> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() >= 2 && vertices_.front() == vertices_.back()) vertices_.pop_back();
    if (vertices_.empty()) throw Error(ErrorCode::ShapeMismatch, "empty cycle");
    std::set<std::size_t> seen(vertices_.begin(), vertices_.end());
    if (seen.size() != vertices_.size()) throw Error(ErrorCode::ShapeMismatch, "cycle repeats a vertex");
    std::rotate(vertices_.begin(), std::min_element(vertices_.begin(), vertices_.end()), vertices_.end());
}

std::vector<std::size_t> Cycle::closed() const {
    auto out = vertices_;
    out.push_back(vertices_.front());
    return out;
}

std::string Cycle::to_string() const {
    std::string s = "(";
    for (auto v : closed()) {
        if (s.size() > 1) s += ",";
        s += std::to_string(v);
    }
    return s + ")";
}

Cycle reverse(const Cycle& p) {
    std::vector<std::size_t> v(p.vertices().rbegin(), p.vertices().rend());
    return Cycle(std::move(v));
}

Scalar cycle_product(const PairFunction& h, const Cycle& p) {
    const auto& v = p.vertices();
    const auto r = v.size();
    Scalar prod = h.at(v[r - 1], v[0]);
    for (std::size_t i = 1; i < r; ++i) prod *= h.at(v[i - 1], v[i]);
    return prod;
}

std::vector<Cycle> enumerate_triangles(std::span<const std::size_t> indices) {
    if (indices.size() < 3) {
        throw Error(ErrorCode::TooFewVertices, "triangles need at least 3 vertices, got " + std::to_string(indices.size()));
    }
    std::vector<std::size_t> sorted(indices.begin(), indices.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<Cycle> out;
    for_each_combination(sorted.size(), 3, [&](std::span<const std::size_t> c) {
        out.push_back(Cycle{sorted[c[0]], sorted[c[1]], sorted[c[2]]});
        return true;
    });
    return out;
}

std::vector<Cycle> enumerate_triangles(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return enumerate_triangles(idx);
}

namespace {

// Extends `path` (whose first vertex is its minimum) with larger vertices.
template <typename Fn>
bool extend_paths(std::size_t n, std::size_t length, std::vector<std::size_t>& path, std::vector<char>& used, Fn& fn) {
    if (path.size() == length) return fn(path);
    for (std::size_t v = path.front() + 1; v < n; ++v) {
        if (used[v]) continue;
        used[v] = 1;
        path.push_back(v);
        bool keep = extend_paths(n, length, path, used, fn);
        path.pop_back();
        used[v] = 0;
        if (!keep) return false;
    }
    return true;
}

template <typename Fn>
void for_each_cycle(std::size_t n, std::size_t length, Fn&& fn) {
    std::vector<char> used(n, 0);
    std::vector<std::size_t> path;
    for (std::size_t s = 0; s < n; ++s) {
        path.assign(1, s);
        used[s] = 1;
        bool keep = extend_paths(n, length, path, used, fn);
        used[s] = 0;
        if (!keep) return;
    }
}

}  // namespace

std::vector<Cycle> enumerate_cycles(std::size_t n, std::size_t length) {
    std::vector<Cycle> out;
    if (length == 0) return out;
    for_each_cycle(n, length, [&](const std::vector<std::size_t>& path) {
        out.emplace_back(path);
        return true;
    });
    return out;
}

std::size_t count_cycles_up_to(std::size_t n, std::size_t max_len) {
    // C(n, r) * (r - 1)! canonical cycles of length r.
    std::size_t total = 0;
    for (std::size_t r = 1; r <= std::min(n, max_len); ++r) {
        long double count = 1;
        for (std::size_t i = 0; i < r; ++i) count = count * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
        for (std::size_t i = 2; i < r; ++i) count *= static_cast<long double>(i);
        if (count > 1e18L) return static_cast<std::size_t>(-1);
        total += static_cast<std::size_t>(count + 0.5L);
    }
    return total;
}

std::optional<CocycleViolation> check_cocycle_shortcut(const PairFunction& c) {
    const auto n = c.size();
    for (std::size_t x = 0; x < n; ++x) {
        if (!c(x, x).is_one()) return CocycleViolation{Cycle{x}, c(x, x)};
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            auto prod = c(x, y) * c(y, x);
            if (!prod.is_one()) return CocycleViolation{Cycle{x, y}, std::move(prod)};
        }
    if (n < 3) return std::nullopt;
    for (const auto& t : enumerate_triangles(n)) {
        for (const auto& p : {t, reverse(t)}) {
            auto prod = cycle_product(c, p);
            if (!prod.is_one()) return CocycleViolation{p, std::move(prod)};
        }
    }
    return std::nullopt;
}

std::optional<CocycleViolation> check_cocycle_bruteforce(const PairFunction& c, std::size_t max_len,
                                                         std::size_t cycle_cap) {
    const auto n = c.size();
    if (max_len > n) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "max length " + std::to_string(max_len) + " exceeds " + std::to_string(n) + " vertices");
    }
    const auto total = count_cycles_up_to(n, max_len);
    if (total > cycle_cap) {
        throw Error(ErrorCode::LimitExceeded,
                    std::to_string(total) + " cycles exceed the cap of " + std::to_string(cycle_cap));
    }
    std::optional<CocycleViolation> found;
    for (std::size_t len = 1; len <= max_len && !found; ++len) {
        for_each_cycle(n, len, [&](const std::vector<std::size_t>& path) {
            Scalar prod = c(path.back(), path.front());
            for (std::size_t i = 1; i < path.size(); ++i) prod *= c(path[i - 1], path[i]);
            if (prod.is_one()) return true;
            found = CocycleViolation{Cycle(path), std::move(prod)};
            return false;
        });
    }
    return found;
}

std::optional<std::string> find_decomposition_failure(const PairFunction& h, const CycleProductFn& product) {
    if (h.size() != 4) throw Error(ErrorCode::ShapeMismatch, "decomposition identities need a 4-element set");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j && h(i, j).is_zero()) {
                throw Error(ErrorCode::ZeroOffDiagonal,
                            "h(" + std::to_string(i) + "," + std::to_string(j) + ") is zero");
            }

    auto prod = [&](std::initializer_list<std::size_t> v) { return product(h, Cycle(v)); };
    auto two = [&](std::size_t a, std::size_t b) { return h(a, b) * h(b, a); };

    std::array<std::size_t, 4> sigma{0, 1, 2, 3};
    do {
        for (std::size_t i = 0; i < 4; ++i) {
            const auto a = sigma[i], b = sigma[(i + 1) % 4], c = sigma[(i + 2) % 4], d = sigma[(i + 3) % 4];
            // q1 = (a,b,c,d,a) and q2 = (a,b,d,c,a) share the edge a->b and are
            // not reverses of each other.
            const Scalar q1 = prod({a, b, c, d});
            if (!(q1 * prod({a, b, d, c}) == prod({c, d}) * prod({a, b, c}) * prod({a, b, d}))) {
                return "paired 4-cycles: h[q1]h[q2] = h[r]h[p]h[q]";
            }
            if (!(q1 * prod({c, d, b, a}) == prod({a, b}) * prod({a, c, d}) * prod({c, d, b}))) {
                return "paired 4-cycles: h[q1]h'[q2] = h[rho]h[u]h[s]";
            }
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    for (const auto& q : enumerate_cycles(4, 4)) {
        const auto& p = q.vertices();
        const Scalar hp = product(h, q);
        if (!(hp == prod({p[0], p[1], p[2]}) * prod({p[0], p[2], p[3]}) / two(p[0], p[2]))) {
            return "4-cycle splitting through the p0-p2 chord";
        }
        if (!(hp == prod({p[3], p[0], p[1]}) * prod({p[3], p[1], p[2]}) / two(p[1], p[3]))) {
            return "4-cycle splitting through the p1-p3 chord";
        }
    }

    for (const auto& t : enumerate_cycles(4, 3)) {
        const auto& p = t.vertices();
        std::size_t apex = 0;
        while (apex == p[0] || apex == p[1] || apex == p[2]) ++apex;
        const Scalar lhs = product(h, t);
        const Scalar rhs = prod({p[0], p[1], apex}) * prod({p[1], p[2], apex}) * prod({p[2], p[0], apex}) /
                           (two(apex, p[0]) * two(p[2], apex) * two(p[1], apex));
        if (!(lhs == rhs)) return "star decomposition of a 3-cycle through the fourth vertex";
    }
    return std::nullopt;
}

bool verify_decomposition_identities(const PairFunction& h) { return !find_decomposition_failure(h).has_value(); }

}  // namespace detequiv
