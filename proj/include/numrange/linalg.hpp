#pragma once

#include <utility>
#include <vector>

#include "numrange/matrix.hpp"

namespace numrange {

struct HermEigResult {
    std::vector<double> eigenvalues;  // ascending
    CMatrix eigenvectors;             // unitary, column j pairs with eigenvalues[j]
};

// Full Hermitian eigendecomposition: Householder tridiagonalization followed
// by implicitly shifted QL on the tridiagonal form. Input is symmetrized as
// (M + M*)/2 before decomposition, absorbing roundoff from upstream products.
HermEigResult hermitian_eig(const CMatrix& m);

// Eigenvalues only (ascending); same reduction without accumulating vectors.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

// Extreme eigenpair of a Hermitian matrix. Small matrices go through the
// dense reduction; larger ones through Lanczos with full reorthogonalization
// and a dense fallback if it fails to settle. Deterministic for fixed input.
std::pair<double, CVector> hermitian_top_eigenpair(const CMatrix& m);

// Polar factors of a full-column-rank B: B = Q H with Q* Q = I and H
// Hermitian PSD, computed from the eigendecomposition of B* B.
struct PolarDecomposition {
    CMatrix orthonormal;  // Q, n x k
    CMatrix hermitian;    // H, k x k PSD
};
PolarDecomposition polar_decompose(const CMatrix& b);

// Largest singular value (via the Gram matrix on the smaller side).
double two_norm(const CMatrix& m);

// sigma_max / sigma_min; throws SingularityError when the matrix is
// numerically singular (sigma_min <= 1e-12 * sigma_max).
double condition_number(const CMatrix& v);

}  // namespace numrange
