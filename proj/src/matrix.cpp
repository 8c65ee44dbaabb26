#include "hft/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace hft {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (const auto& x : r) data_.push_back(x);
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::column(const Vec& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
}

Vec Matrix::col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Matrix::row(std::size_t i) const {
    return Vec(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
}

void Matrix::set_col(std::size_t j, const Vec& v) {
    if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void Matrix::put(std::size_t r0, std::size_t c0, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

Scalar Matrix::trace() const {
    Scalar t;
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Scalar& b = o(k, j);
                if (!b.is_zero()) r(i, j) += a * b;
            }
        }
    return r;
}

Vec Matrix::operator*(const Vec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    Vec r(rows_);
    for (std::size_t k = 0; k < cols_; ++k) {
        if (v[k].is_zero()) continue;
        for (std::size_t i = 0; i < rows_; ++i) {
            const Scalar& a = (*this)(i, k);
            if (!a.is_zero()) r[i] += a * v[k];
        }
    }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix r = *this;
    for (auto& x : r.data_) x *= s;
    return r;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

RrefResult rref(const Matrix& m) {
    RrefResult res;
    Matrix a = m;
    const std::size_t R = a.rows(), C = a.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        std::size_t p = row;
        while (p < R && a(p, col).is_zero()) ++p;
        if (p == R) continue;
        if (p != row)
            for (std::size_t j = 0; j < C; ++j) std::swap(a(p, j), a(row, j));
        Scalar inv = a(row, col).inverse();
        for (std::size_t j = col; j < C; ++j) a(row, j) *= inv;
        for (std::size_t r = 0; r < R; ++r) {
            if (r == row || a(r, col).is_zero()) continue;
            Scalar f = a(r, col);
            for (std::size_t j = col; j < C; ++j)
                if (!a(row, j).is_zero()) a(r, j) -= f * a(row, j);
        }
        res.pivots.push_back(col);
        ++row;
    }
    res.rank = row;
    res.reduced = std::move(a);
    return res;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel(const Matrix& m) {
    auto r = rref(m);
    const std::size_t C = m.cols();
    std::vector<bool> is_pivot(C, false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        Vec v(C);
        v[f] = 1;
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return Matrix::from_columns(C, basis);
}

Cokernel cokernel(const Matrix& m) {
    // The column space of m is the row space of m^T; its RREF pivots pick
    // which coordinates get eliminated, the rest index the quotient.
    const std::size_t R = m.rows();
    auto r = rref(m.transpose());
    std::vector<bool> is_pivot(R, false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < R; ++j)
        if (!is_pivot[j]) free.push_back(j);
    Cokernel ck{Matrix(free.size(), R), Matrix(R, free.size())};
    for (std::size_t a = 0; a < free.size(); ++a) {
        ck.projection(a, free[a]) = 1;
        ck.section(free[a], a) = 1;
        for (std::size_t i = 0; i < r.rank; ++i) ck.projection(a, r.pivots[i]) = -r.reduced(i, free[a]);
    }
    return ck;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
    auto r = rref(hstack(a, b));
    const std::size_t n = a.cols();
    for (auto p : r.pivots)
        if (p >= n) return std::nullopt;
    Matrix x(n, b.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivots[i], j) = r.reduced(i, n + j);
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    if (rank(m) != m.rows()) return std::nullopt;
    return solve(m, Matrix::identity(m.rows()));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& x = a(i, j);
            if (x.is_zero()) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    if (!b(p, q).is_zero()) k(i * b.rows() + p, j * b.cols() + q) = x * b(p, q);
        }
    return k;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    Matrix r(a.rows(), a.cols() + b.cols());
    r.put(0, 0, a);
    r.put(0, a.cols(), b);
    return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    Matrix r(a.rows() + b.rows(), a.cols());
    r.put(0, 0, a);
    r.put(a.rows(), 0, b);
    return r;
}

Matrix column_space_basis(const Matrix& m) {
    auto r = rref(m.transpose());
    return r.reduced.block(0, 0, r.rank, m.rows()).transpose();
}

Vec vadd(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}
Vec vsub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}
Vec vscale(const Vec& a, const Scalar& s) {
    Vec r = a;
    for (auto& x : r) x *= s;
    return r;
}
bool vzero(const Vec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}
Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

}  // namespace hft

namespace hft {

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
    auto x = solve(a, Matrix::column(b));
    if (!x) return std::nullopt;
    return x->col(0);
}

Vec zero_vec(std::size_t n) { return Vec(n, Scalar(0)); }

}  // namespace hft
