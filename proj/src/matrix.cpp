#include "numrange/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "numrange/parallel.hpp"

namespace numrange {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, CVector entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionError("CMatrix: entry count does not match rows*cols");
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(const CVector& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::from_rows(std::size_t rows, std::size_t cols,
                           std::initializer_list<Complex> entries) {
    return CMatrix(rows, cols, CVector(entries));
}

CVector CMatrix::col(std::size_t j) const {
    CVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void CMatrix::set_col(std::size_t j, const CVector& v) {
    if (v.size() != rows_) throw DimensionError("set_col: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::leading_block(std::size_t k) const {
    if (k > rows_ || k > cols_) throw DimensionError("leading_block: block too large");
    CMatrix r(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) r(i, j) = (*this)(i, j);
    return r;
}

double CMatrix::frobenius_norm() const { return norm2(data_); }

double CMatrix::max_abs() const {
    double m = 0.0;
    for (Complex z : data_) m = std::max(m, std::abs(z));
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix +=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix -=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex c) {
    for (Complex& z : data_) z *= c;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex c, CMatrix a) { return a *= c; }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimension mismatch");
    CMatrix r(a.rows(), b.cols());
    const std::size_t n = a.cols(), bc = b.cols();
    auto row_job = [&](std::size_t i) {
        Complex* ri = r.row_ptr(i);
        const Complex* ai = a.row_ptr(i);
        for (std::size_t k = 0; k < n; ++k) {
            Complex aik = ai[k];
            if (aik == Complex(0.0)) continue;
            const Complex* bk = b.row_ptr(k);
            for (std::size_t j = 0; j < bc; ++j) ri[j] += aik * bk[j];
        }
    };
    if (a.rows() * n * bc >= (std::size_t)1 << 22)
        parallel_for(a.rows(), row_job);
    else
        for (std::size_t i = 0; i < a.rows(); ++i) row_job(i);
    return r;
}

CVector matvec(const CMatrix& a, const CVector& x) {
    if (a.cols() != x.size()) throw DimensionError("matvec: dimension mismatch");
    CVector y(a.rows());
    auto row_job = [&](std::size_t i) {
        const Complex* ai = a.row_ptr(i);
        Complex s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
        y[i] = s;
    };
    if (a.rows() * a.cols() >= (std::size_t)1 << 22)
        parallel_for(a.rows(), row_job);
    else
        for (std::size_t i = 0; i < a.rows(); ++i) row_job(i);
    return y;
}

CVector adjoint_matvec(const CMatrix& a, const CVector& x) {
    if (a.rows() != x.size()) throw DimensionError("adjoint_matvec: dimension mismatch");
    CVector y(a.cols(), Complex(0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const Complex* ai = a.row_ptr(i);
        Complex xi = x[i];
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += std::conj(ai[j]) * xi;
    }
    return y;
}

CMatrix hermitian_part(const CMatrix& m) {
    require_square(m, "hermitian_part");
    CMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return r;
}

void require_square(const CMatrix& m, const char* what) {
    if (!m.square() || m.rows() == 0)
        throw DimensionError(std::string(what) + ": square nonempty matrix required");
}

void require_finite(const CMatrix& m, const char* what) {
    if (!m.finite()) throw DomainError(std::string(what) + ": non-finite entries");
}

}  // namespace numrange
