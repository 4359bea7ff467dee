#pragma once

#include "numrange/matrix.hpp"

namespace numrange {

// Eigenvalues of a complex upper Hessenberg matrix via single-shift QR with
// Wilkinson shifts (values only). Used for Ritz-value diagnostics in the
// experiment harness. Result sorted lexicographically by (re, im).
CVector hessenberg_eigenvalues(const CMatrix& h);

}  // namespace numrange
