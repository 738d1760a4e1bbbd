#include "detequiv/matrix.hpp"

#include <utility>

namespace detequiv {

Matrix::Matrix(std::size_t n, std::vector<Scalar> row_major) : n_(n), data_(std::move(row_major)) {
    if (data_.size() != n * n) {
        throw Error(ErrorCode::ShapeMismatch,
                    "expected " + std::to_string(n * n) + " entries, got " + std::to_string(data_.size()));
    }
}

Matrix Matrix::identity(const FieldSpec& spec, std::size_t n) {
    Matrix m(n, Scalar::zero(spec));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(spec);
    return m;
}

Matrix Matrix::from_ints(const FieldSpec& spec, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::vector<Scalar> data;
    const std::size_t n = rows.size();
    for (const auto& row : rows) {
        if (row.size() != n) throw Error(ErrorCode::ShapeMismatch, "ragged integer matrix");
        for (auto v : row) data.push_back(Scalar::from_int(spec, v));
    }
    return Matrix(n, std::move(data));
}

const Scalar& Matrix::at(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "(" + std::to_string(i) + "," + std::to_string(j) + ") outside " + std::to_string(n_) + "x" +
                        std::to_string(n_));
    }
    return (*this)(i, j);
}

Matrix Matrix::transposed() const {
    Matrix t = *this;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(i, j) = (*this)(j, i);
    return t;
}

Matrix Matrix::submatrix(std::span<const std::size_t> indices) const {
    std::vector<Scalar> data;
    data.reserve(indices.size() * indices.size());
    for (auto i : indices)
        for (auto j : indices) data.push_back(at(i, j));
    return Matrix(indices.size(), std::move(data));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "matrix product of different sizes");
    const auto n = a.size();
    if (n == 0) return a;
    Matrix c(n, Scalar::zero(a(0, 0).field()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

Scalar determinant(const Matrix& m, const FieldSpec& spec) {
    const auto n = m.size();
    if (n == 0) return Scalar::one(spec);
    Matrix a = m;
    Scalar det = Scalar::one(a(0, 0).field());
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = n, pc = n;
        for (std::size_t i = k; i < n && pr == n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (!a(i, j).is_zero()) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr == n) return Scalar::zero(det.field());
        if (pr != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(pr, j));
            negate = !negate;
        }
        if (pc != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, pc));
            negate = !negate;
        }
        const Scalar pivot = a(k, k);
        det *= pivot;
        const Scalar inv = pivot.inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k).is_zero()) continue;
            const Scalar factor = a(i, k) * inv;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
        }
    }
    return negate ? -det : det;
}

}  // namespace detequiv
