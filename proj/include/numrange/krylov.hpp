#pragma once

#include "numrange/matrix.hpp"

namespace numrange {

// Arnoldi output: orthonormal basis Q of the Krylov space and the projection
// H = Q* A Q (upper Hessenberg, k x k). On early breakdown the decomposition
// is truncated to the invariant subspace reached (H_m = H_k convention).
struct KrylovDecomposition {
    CMatrix q;           // n x k, orthonormal columns
    CMatrix h;           // k x k upper Hessenberg
    int requested_m = 0;
    int effective_k = 0;
    bool breakdown = false;
};

// Arnoldi iteration with classical Gram-Schmidt performed twice per step.
// tol scales the breakdown test (residual <= tol * ||A||_F).
KrylovDecomposition arnoldi(const CMatrix& a, const CVector& b, int m,
                            double tol = 1e-12);

// x* A x / x* x
Complex rayleigh_quotient(const CMatrix& a, const CVector& x);

// sum_j coeffs[j] A^j b via Horner on matrix-vector products.
CVector poly_apply(const CMatrix& a, const CVector& b, const CVector& coeffs);

// || v - Q Q* v ||_2
double projection_residual(const KrylovDecomposition& decomp, const CVector& v);

}  // namespace numrange
