#pragma once

#include "ctilt/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace ctilt {

/// Dense matrix over the rationals, row-major. Zero rows or zero columns are
/// allowed and behave as the corresponding zero-dimensional linear maps.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);
    static Matrix column(std::span<const Rational> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> entries() const { return data_; }

    bool is_zero() const;
    Matrix transpose() const;
    Matrix col(std::size_t c) const;
    Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
    Matrix select_columns(std::span<const std::size_t> cols) const;
    Matrix select_rows(std::span<const std::size_t> rows) const;
    void set_block(std::size_t row0, std::size_t col0, const Matrix& m);

    friend bool operator==(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Rational& s, const Matrix& m);
    Matrix& operator+=(const Matrix& other);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// [a | b] and [a ; b]. Shapes must agree on the shared side.
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(std::span<const Matrix> blocks);

struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Columns form a basis of {x : m x = 0}; one column per free variable, with
/// that variable set to 1 and the other free variables to 0.
Matrix kernel_basis(const Matrix& m);

/// Columns at the pivot positions of m: a basis of its column space.
Matrix image_basis(const Matrix& m);

/// Some x with a x = b (b may have several columns), or nullopt if the system
/// is inconsistent. Throws std::invalid_argument when row counts differ.
std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b);

/// Inverse of a square matrix, nullopt if singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Extends the independent columns of `basis` by standard basis vectors to a
/// basis of the ambient space and returns only the added columns.
Matrix complement_basis(const Matrix& basis);

/// Coordinates with respect to a fixed set of independent columns. Builds a
/// left inverse once so that repeated coordinate queries are cheap.
class CoordinateSolver {
public:
    CoordinateSolver() = default;
    explicit CoordinateSolver(Matrix basis_columns);

    std::size_t dimension() const { return basis_.cols(); }
    /// Coordinates of v (a column of length rows(basis)); nullopt if v lies
    /// outside the span.
    std::optional<Matrix> coordinates(const Matrix& v) const;

private:
    Matrix basis_;
    std::vector<std::size_t> rows_;
    Matrix left_inverse_;
};

}  // namespace ctilt
