#pragma once

#include "hft/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hft {

using Vec = std::vector<Scalar>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix column(const Vec& v);
    static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec col(std::size_t j) const;
    Vec row(std::size_t i) const;
    void set_col(std::size_t j, const Vec& v);
    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void put(std::size_t r0, std::size_t c0, const Matrix& m);
    bool is_zero() const;
    Scalar trace() const;

    Matrix operator*(const Matrix& o) const;
    Vec operator*(const Vec& v) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& s) const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

struct RrefResult {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    Matrix reduced;
};

struct Cokernel {
    Matrix projection;  // (rows(m) - rank) x rows(m)
    Matrix section;     // rows(m) x (rows(m) - rank)
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Matrix kernel(const Matrix& m);
Cokernel cokernel(const Matrix& m);
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Vec> solve(const Matrix& a, const Vec& b);
std::optional<Matrix> inverse(const Matrix& m);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

// Reduced row echelon basis of the column span; columns of the result.
Matrix column_space_basis(const Matrix& m);

Vec vadd(const Vec& a, const Vec& b);
Vec vsub(const Vec& a, const Vec& b);
Vec vscale(const Vec& a, const Scalar& s);
bool vzero(const Vec& a);
Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);

}  // namespace hft
