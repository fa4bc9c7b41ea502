#include "ctilt/matrix.hpp"

#include <stdexcept>
#include <string>

namespace ctilt {

namespace {

void require(bool condition, const char* what)
{
    if (!condition) throw std::invalid_argument(what);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        require(row.size() == cols_, "ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::column(std::span<const Rational> entries)
{
    Matrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
}

bool Matrix::is_zero() const
{
    for (const auto& x : data_) {
        if (sgn(x) != 0) return false;
    }
    return true;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::col(std::size_t c) const
{
    return block(0, c, rows_, 1);
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const
{
    require(row0 + nrows <= rows_ && col0 + ncols <= cols_, "block out of range");
    Matrix b(nrows, ncols);
    for (std::size_t r = 0; r < nrows; ++r)
        for (std::size_t c = 0; c < ncols; ++c) b(r, c) = (*this)(row0 + r, col0 + c);
    return b;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const
{
    Matrix b(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols.size(); ++k) b(r, k) = (*this)(r, cols[k]);
    return b;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const
{
    Matrix b(rows.size(), cols_);
    for (std::size_t k = 0; k < rows.size(); ++k)
        for (std::size_t c = 0; c < cols_; ++c) b(k, c) = (*this)(rows[k], c);
    return b;
}

void Matrix::set_block(std::size_t row0, std::size_t col0, const Matrix& m)
{
    require(row0 + m.rows() <= rows_ && col0 + m.cols() <= cols_, "set_block out of range");
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) (*this)(row0 + r, col0 + c) = m(r, c);
}

bool operator==(const Matrix& a, const Matrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    Matrix s = a;
    s += b;
    return s;
}

Matrix& Matrix::operator+=(const Matrix& other)
{
    require(rows_ == other.rows_ && cols_ == other.cols_, "shape mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "shape mismatch in -");
    Matrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
    return s;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    require(a.cols_ == b.rows_, "shape mismatch in *");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (sgn(b(k, j)) != 0) p(i, j) += aik * b(k, j);
            }
        }
    }
    return p;
}

Matrix operator*(const Rational& s, const Matrix& m)
{
    Matrix p = m;
    for (auto& x : p.data_) x *= s;
    return p;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m)
{
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r > 0) os << "; ";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c > 0) os << ' ';
            os << to_string(m(r, c));
        }
    }
    return os << ']';
}

Matrix hstack(const Matrix& a, const Matrix& b)
{
    require(a.rows() == b.rows(), "hstack row mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b)
{
    require(a.cols() == b.cols(), "vstack column mismatch");
    Matrix m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

Matrix block_diagonal(std::span<const Matrix> blocks)
{
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix m(rows, cols);
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

RowEchelon rref(const Matrix& input)
{
    Matrix m = input;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && sgn(m(p, col)) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row) {
            for (std::size_t c = col; c < m.cols(); ++c) swap(m(p, c), m(row, c));
        }
        const Rational inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || sgn(m(r, col)) == 0) continue;
            const Rational factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) {
                if (sgn(m(row, c)) != 0) m(r, c) -= factor * m(row, c);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m)
{
    if (m.empty()) return 0;
    return rref(m).pivots.size();
}

Matrix kernel_basis(const Matrix& m)
{
    const auto [reduced, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    Matrix basis(m.cols(), m.cols() - pivots.size());
    std::size_t k = 0;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        basis(free, k) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -reduced(r, free);
        ++k;
    }
    return basis;
}

Matrix image_basis(const Matrix& m)
{
    if (m.empty()) return Matrix(m.rows(), 0);
    return m.select_columns(rref(m).pivots);
}

std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("solve_linear: " + std::to_string(a.rows()) + " equations but right-hand side has " +
                                    std::to_string(b.rows()) + " rows");
    }
    const auto [reduced, pivots] = rref(hstack(a, b));
    for (auto p : pivots) {
        if (p >= a.cols()) return std::nullopt;
    }
    Matrix x(a.cols(), b.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) x(pivots[r], c) = reduced(r, a.cols() + c);
    return x;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    const auto [reduced, pivots] = rref(hstack(m, Matrix::identity(n)));
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
    return reduced.block(0, n, n, n);
}

Matrix complement_basis(const Matrix& basis)
{
    const std::size_t n = basis.rows();
    const auto [reduced, pivots] = rref(hstack(basis, Matrix::identity(n)));
    std::vector<std::size_t> added;
    for (auto p : pivots) {
        if (p >= basis.cols()) added.push_back(p - basis.cols());
    }
    return Matrix::identity(n).select_columns(added);
}

CoordinateSolver::CoordinateSolver(Matrix basis_columns) : basis_(std::move(basis_columns))
{
    // Independent rows of the basis matrix give an invertible square block.
    rows_ = rref(basis_.transpose()).pivots;
    if (rows_.size() != basis_.cols()) throw std::invalid_argument("CoordinateSolver: dependent basis columns");
    left_inverse_ = *inverse(basis_.select_rows(rows_));
}

std::optional<Matrix> CoordinateSolver::coordinates(const Matrix& v) const
{
    if (v.rows() != basis_.rows()) throw std::invalid_argument("CoordinateSolver: vector length mismatch");
    Matrix x = left_inverse_ * v.select_rows(rows_);
    if (!(basis_ * x == v)) return std::nullopt;
    return x;
}

}  // namespace ctilt
