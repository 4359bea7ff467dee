#pragma once

#include <cstddef>
#include <initializer_list>

#include "numrange/types.hpp"

namespace numrange {

// Dense complex matrix, row-major. The universal numeric carrier of the
// library; everything desk-scale (n up to ~10^4) lives in one of these.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0)) {}
    CMatrix(std::size_t rows, std::size_t cols, CVector entries);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(const CVector& d);
    // Row-major initializer, e.g. CMatrix::from_rows(2, 2, {a, b, c, d}).
    static CMatrix from_rows(std::size_t rows, std::size_t cols,
                             std::initializer_list<Complex> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Complex* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    const Complex* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

    const CVector& data() const { return data_; }
    CVector& data() { return data_; }

    CVector col(std::size_t j) const;
    void set_col(std::size_t j, const CVector& v);

    CMatrix adjoint() const;
    CMatrix transpose() const;
    // Leading principal k x k block.
    CMatrix leading_block(std::size_t k) const;

    bool finite() const { return all_finite(data_); }

    double frobenius_norm() const;
    double max_abs() const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(Complex c);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    CVector data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(Complex c, CMatrix a);

// Dense product; rows of the result are computed in parallel for large sizes.
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CVector matvec(const CMatrix& a, const CVector& x);
// y = A* x without forming the adjoint.
CVector adjoint_matvec(const CMatrix& a, const CVector& x);

// (M + M*) / 2
CMatrix hermitian_part(const CMatrix& m);

void require_square(const CMatrix& m, const char* what);
void require_finite(const CMatrix& m, const char* what);

}  // namespace numrange
