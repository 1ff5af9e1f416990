#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabfun/field.hpp"

namespace sf {

// Dense row-major matrix over F_p. Zero-sized shapes are legal.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, elem p);

    static Matrix identity(int n, elem p);
    static Matrix from_rows(const std::vector<std::vector<long long>>& rows, int cols, elem p);
    static Matrix column(const std::vector<elem>& v, elem p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    elem prime() const { return p_; }

    elem operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }
    elem& at(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    void set(int i, int j, long long v) { at(i, j) = reduce(v, p_); }

    elem* row(int i) { return data_.data() + std::size_t(i) * cols_; }
    const elem* row(int i) const { return data_.data() + std::size_t(i) * cols_; }
    std::vector<elem> col(int j) const;
    void set_col(int j, const std::vector<elem>& v);

    bool is_zero() const;
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    const std::vector<elem>& data() const { return data_; }

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    int rows_ = 0;
    int cols_ = 0;
    elem p_ = kDefaultPrime;
    std::vector<elem> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix scaled(const Matrix& a, elem c);
Matrix transpose(const Matrix& a);
Matrix hcat(const Matrix& a, const Matrix& b);
Matrix vcat(const Matrix& a, const Matrix& b);
Matrix block(const Matrix& a, int r0, int c0, int nr, int nc);
void put_block(Matrix& dst, int r0, int c0, const Matrix& src);
Matrix select_cols(const Matrix& a, const std::vector<int>& cols);
Matrix select_rows(const Matrix& a, const std::vector<int>& rows);
std::vector<elem> mat_vec(const Matrix& a, const std::vector<elem>& v);

struct Rref {
    Matrix form;
    std::vector<int> pivots;
};

Rref rref(Matrix m);
int rank(const Matrix& m);
// Columns form a basis of the right kernel, normalised by the rref of m.
Matrix nullspace(const Matrix& m);
// Some x with a*x = b, or nullopt when inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);
// Indices of a maximal independent subset of columns, chosen greedily left to right.
std::vector<int> independent_cols(const Matrix& m);
// Columns of `extra` that extend the span of `base`, chosen greedily.
std::vector<int> extending_cols(const Matrix& base, const Matrix& extra);
// Basis (as columns) of the intersection of two column spaces in the same ambient space.
Matrix intersect_spans(const Matrix& a, const Matrix& b);
bool in_span(const Matrix& span, const Matrix& v);

std::string to_string(const Matrix& m);

// Reusable solver for coordinates with respect to a fixed set of
// independent columns.
class Coordinates {
public:
    Coordinates() = default;
    explicit Coordinates(const Matrix& basis);
    int size() const { return k_; }
    // Coordinates of v (a column); throws when v is outside the span.
    std::vector<elem> of(const std::vector<elem>& v) const;
    std::optional<std::vector<elem>> try_of(const std::vector<elem>& v) const;

private:
    Matrix basis_;
    std::vector<int> rows_;
    Matrix inv_;
    int k_ = 0;
};

}  // namespace sf
