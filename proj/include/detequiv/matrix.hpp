#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "detequiv/scalar.hpp"

namespace detequiv {

/// Dense square array of Scalars, row-major. Also serves as the two-argument
/// table h(i, j) that cycle products are taken over.
class Matrix {
public:
    Matrix() = default;
    /// n x n filled with `fill`.
    Matrix(std::size_t n, const Scalar& fill) : n_(n), data_(n * n, fill) {}
    Matrix(std::size_t n, std::vector<Scalar> row_major);

    static Matrix identity(const FieldSpec& spec, std::size_t n);
    /// Rows of integers; convenient in tests.
    static Matrix from_ints(const FieldSpec& spec, std::initializer_list<std::initializer_list<std::int64_t>> rows);

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

    /// Bounds-checked access; throws IndexOutOfRange.
    const Scalar& at(std::size_t i, std::size_t j) const;

    std::span<const Scalar> values() const noexcept { return data_; }

    Matrix transposed() const;
    /// Rows and columns restricted to `indices`, in the given order.
    Matrix submatrix(std::span<const std::size_t> indices) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Scalar> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

/// Exact determinant by Gaussian elimination with full pivoting on the first
/// nonzero entry of the trailing block. The empty matrix has determinant 1.
/// The result field is taken from the entries; for an empty matrix pass `spec`.
Scalar determinant(const Matrix& m, const FieldSpec& spec = FieldSpec::rationals());

}  // namespace detequiv
