#pragma once

#include <random>

#include "numrange/linalg.hpp"
#include "numrange/matrix.hpp"

namespace testutil {

using numrange::CMatrix;
using numrange::Complex;
using numrange::CVector;

inline CMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(dist(gen), dist(gen));
    return m;
}

inline CMatrix random_hermitian(std::size_t n, std::uint32_t seed) {
    return numrange::hermitian_part(random_matrix(n, n, seed));
}

inline CVector random_vector(std::size_t n, std::uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CVector v(n);
    for (Complex& z : v) z = Complex(dist(gen), dist(gen));
    return v;
}

// Orthonormal columns via arnoldi-free Gram-Schmidt on a random matrix.
inline CMatrix random_orthonormal(std::size_t rows, std::size_t cols, std::uint32_t seed) {
    CMatrix m = random_matrix(rows, cols, seed);
    for (std::size_t j = 0; j < cols; ++j) {
        CVector v = m.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i < j; ++i) {
                CVector qi = m.col(i);
                numrange::axpy(-numrange::dot(qi, v), qi, v);
            }
        double nv = numrange::norm2(v);
        for (Complex& z : v) z /= nv;
        m.set_col(j, v);
    }
    return m;
}

inline double reconstruction_error(const CMatrix& m, const numrange::HermEigResult& eig) {
    const std::size_t n = m.rows();
    CMatrix vd(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            vd(i, j) = eig.eigenvectors(i, j) * eig.eigenvalues[j];
    CMatrix rec = numrange::matmul(vd, eig.eigenvectors.adjoint());
    return numrange::two_norm(m - rec);
}

}  // namespace testutil
