#include "stabfun/matrix.hpp"

#include <sstream>
#include <stdexcept>

#include "stabfun/kernels.hpp"

namespace sf {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Matrix::Matrix(int rows, int cols, elem p) : rows_(rows), cols_(cols), p_(p) {
    require(rows >= 0 && cols >= 0, "negative matrix dimension");
    data_.assign(std::size_t(rows) * cols, 0);
}

Matrix Matrix::identity(int n, elem p) {
    Matrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows, int cols, elem p) {
    Matrix m(int(rows.size()), cols, p);
    for (int i = 0; i < m.rows(); ++i) {
        require(int(rows[i].size()) == cols, "ragged matrix rows");
        for (int j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::column(const std::vector<elem>& v, elem p) {
    Matrix m(int(v.size()), 1, p);
    for (int i = 0; i < m.rows(); ++i) m.at(i, 0) = v[i] % p;
    return m;
}

std::vector<elem> Matrix::col(int j) const {
    std::vector<elem> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_col(int j, const std::vector<elem>& v) {
    for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

bool Matrix::is_zero() const {
    for (elem x : data_)
        if (x) return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && data_ == o.data_;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "matrix product shape mismatch");
    Matrix c(a.rows(), b.cols(), a.prime());
    const std::size_t n = std::size_t(b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) kernels::axpy(c.row(i), b.row(k), a(i, k), a.prime(), n);
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum shape mismatch");
    Matrix c = a;
    for (int i = 0; i < a.rows(); ++i) kernels::axpy(c.row(i), b.row(i), 1, a.prime(), std::size_t(a.cols()));
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference shape mismatch");
    Matrix c = a;
    for (int i = 0; i < a.rows(); ++i)
        kernels::axpy(c.row(i), b.row(i), a.prime() - 1, a.prime(), std::size_t(a.cols()));
    return c;
}

Matrix operator-(const Matrix& a) { return scaled(a, a.prime() - 1); }

Matrix scaled(const Matrix& a, elem c) {
    Matrix r = a;
    for (int i = 0; i < a.rows(); ++i) kernels::scale(r.row(i), c % a.prime(), a.prime(), std::size_t(a.cols()));
    return r;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows(), a.prime());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t.at(j, i) = a(i, j);
    return t;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows(), "hcat row mismatch");
    Matrix c(a.rows(), a.cols() + b.cols(), a.prime());
    put_block(c, 0, 0, a);
    put_block(c, 0, a.cols(), b);
    return c;
}

Matrix vcat(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.cols(), "vcat column mismatch");
    Matrix c(a.rows() + b.rows(), a.cols(), a.prime());
    put_block(c, 0, 0, a);
    put_block(c, a.rows(), 0, b);
    return c;
}

Matrix block(const Matrix& a, int r0, int c0, int nr, int nc) {
    require(r0 >= 0 && c0 >= 0 && r0 + nr <= a.rows() && c0 + nc <= a.cols(), "block out of range");
    Matrix b(nr, nc, a.prime());
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b.at(i, j) = a(r0 + i, c0 + j);
    return b;
}

void put_block(Matrix& dst, int r0, int c0, const Matrix& src) {
    require(r0 + src.rows() <= dst.rows() && c0 + src.cols() <= dst.cols(), "put_block out of range");
    for (int i = 0; i < src.rows(); ++i)
        for (int j = 0; j < src.cols(); ++j) dst.at(r0 + i, c0 + j) = src(i, j);
}

Matrix select_cols(const Matrix& a, const std::vector<int>& cols) {
    Matrix b(a.rows(), int(cols.size()), a.prime());
    for (int i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) b.at(i, int(j)) = a(i, cols[j]);
    return b;
}

Matrix select_rows(const Matrix& a, const std::vector<int>& rows) {
    Matrix b(int(rows.size()), a.cols(), a.prime());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < a.cols(); ++j) b.at(int(i), j) = a(rows[i], j);
    return b;
}

std::vector<elem> mat_vec(const Matrix& a, const std::vector<elem>& v) {
    require(int(v.size()) == a.cols(), "apply shape mismatch");
    std::vector<elem> out(a.rows(), 0);
    const elem p = a.prime();
    for (int i = 0; i < a.rows(); ++i) {
        std::uint64_t s = 0;
        for (int j = 0; j < a.cols(); ++j) s = (s + std::uint64_t(a(i, j)) * v[j]) % p;
        out[i] = elem(s);
    }
    return out;
}

Rref rref(Matrix m) {
    const elem p = m.prime();
    const std::size_t n = std::size_t(m.cols());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        kernels::scale(m.row(r), inv_mod(m(r, c), p), p, n);
        for (int i = 0; i < m.rows(); ++i)
            if (i != r && m(i, c)) kernels::axpy(m.row(i), m.row(r), p - m(i, c), p, n);
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

int rank(const Matrix& m) { return int(rref(m).pivots.size()); }

Matrix nullspace(const Matrix& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivots) is_pivot[c] = true;
    std::vector<int> free;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    const elem p = m.prime();
    Matrix basis(m.cols(), int(free.size()), p);
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis.at(free[k], int(k)) = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            basis.at(r.pivots[i], int(k)) = neg_mod(r.form(int(i), free[k]), p);
    }
    return basis;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows(), "solve row mismatch");
    Rref r = rref(hcat(a, b));
    const elem p = a.prime();
    for (int c : r.pivots)
        if (c >= a.cols()) return std::nullopt;
    Matrix x(a.cols(), b.cols(), p);
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
        for (int j = 0; j < b.cols(); ++j) x.at(r.pivots[i], j) = r.form(int(i), a.cols() + j);
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    Rref r = rref(hcat(m, Matrix::identity(m.rows(), m.prime())));
    if (int(r.pivots.size()) < m.rows() || (m.rows() > 0 && r.pivots[m.rows() - 1] >= m.cols())) return std::nullopt;
    return block(r.form, 0, m.cols(), m.rows(), m.rows());
}

std::vector<int> independent_cols(const Matrix& m) { return rref(m).pivots; }

std::vector<int> extending_cols(const Matrix& base, const Matrix& extra) {
    require(base.rows() == extra.rows(), "extending_cols row mismatch");
    Rref r = rref(hcat(base, extra));
    std::vector<int> out;
    for (int c : r.pivots)
        if (c >= base.cols()) out.push_back(c - base.cols());
    return out;
}

Matrix intersect_spans(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows(), "intersect_spans row mismatch");
    Matrix n = nullspace(hcat(a, b));
    Matrix coeff = block(n, 0, 0, a.cols(), n.cols());
    Matrix vecs = a * coeff;
    return select_cols(vecs, independent_cols(vecs));
}

bool in_span(const Matrix& span, const Matrix& v) { return solve(span, v).has_value(); }

std::string to_string(const Matrix& m) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

Coordinates::Coordinates(const Matrix& basis) : basis_(basis), k_(basis.cols()) {
    // pick k independent rows so that the square block is invertible
    Rref r = rref(transpose(basis));
    require(int(r.pivots.size()) == k_, "coordinate basis is not independent");
    rows_ = r.pivots;
    auto inv = inverse(select_rows(basis, rows_));
    inv_ = *inv;
}

std::optional<std::vector<elem>> Coordinates::try_of(const std::vector<elem>& v) const {
    std::vector<elem> sub(k_);
    for (int i = 0; i < k_; ++i) sub[i] = v[rows_[i]];
    std::vector<elem> c = mat_vec(inv_, sub);
    if (mat_vec(basis_, c) != v) return std::nullopt;
    return c;
}

std::vector<elem> Coordinates::of(const std::vector<elem>& v) const {
    auto c = try_of(v);
    if (!c) throw std::runtime_error("vector outside coordinate span");
    return *c;
}

}  // namespace sf
