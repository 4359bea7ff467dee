#include "numrange/krylov.hpp"

#include <cmath>

namespace numrange {

KrylovDecomposition arnoldi(const CMatrix& a, const CVector& b, int m, double tol) {
    require_square(a, "arnoldi");
    require_finite(a, "arnoldi");
    if (m < 1) throw DomainError("arnoldi: m must be >= 1");
    if (b.size() != a.rows()) throw DimensionError("arnoldi: b length mismatch");
    if (!all_finite(b)) throw DomainError("arnoldi: non-finite b");
    double nb = norm2(b);
    if (nb == 0.0) throw DomainError("arnoldi: b must be nonzero");

    const std::size_t n = a.rows();
    const double scale = a.frobenius_norm();

    CMatrix q(n, m);
    CMatrix h(m, m);
    {
        CVector q0 = b;
        for (Complex& z : q0) z /= nb;
        q.set_col(0, q0);
    }

    int k = m;
    bool breakdown = false;
    for (int j = 0; j < m; ++j) {
        CVector w = matvec(a, q.col(j));
        // classical Gram-Schmidt, twice
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= j; ++i) {
                CVector qi = q.col(i);
                Complex hij = dot(qi, w);
                axpy(-hij, qi, w);
                h(i, j) += hij;
            }
        }
        double res = norm2(w);
        if (j + 1 < m) {
            if (res <= tol * scale) {
                k = j + 1;
                breakdown = true;
                break;
            }
            h(j + 1, j) = res;
            for (Complex& z : w) z /= res;
            q.set_col(j + 1, w);
        }
    }

    KrylovDecomposition d;
    d.requested_m = m;
    d.effective_k = k;
    d.breakdown = breakdown;
    if (k == m) {
        d.q = std::move(q);
        d.h = std::move(h);
    } else {
        CMatrix qk(n, k), hk(k, k);
        for (std::size_t i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) qk(i, j) = q(i, j);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) hk(i, j) = h(i, j);
        d.q = std::move(qk);
        d.h = std::move(hk);
    }
    return d;
}

Complex rayleigh_quotient(const CMatrix& a, const CVector& x) {
    require_square(a, "rayleigh_quotient");
    if (x.size() != a.rows()) throw DimensionError("rayleigh_quotient: length mismatch");
    double nx2 = norm2_squared(x);
    if (nx2 == 0.0) throw DomainError("rayleigh_quotient: x must be nonzero");
    return dot(x, matvec(a, x)) / nx2;
}

CVector poly_apply(const CMatrix& a, const CVector& b, const CVector& coeffs) {
    require_square(a, "poly_apply");
    if (coeffs.empty()) throw DomainError("poly_apply: empty coefficient list");
    if (b.size() != a.rows()) throw DimensionError("poly_apply: b length mismatch");

    CVector v(b.size(), Complex(0.0));
    for (std::size_t i = 0; i < b.size(); ++i) v[i] = coeffs.back() * b[i];
    for (std::size_t c = coeffs.size() - 1; c-- > 0;) {
        v = matvec(a, v);
        axpy(coeffs[c], b, v);
    }
    return v;
}

double projection_residual(const KrylovDecomposition& decomp, const CVector& v) {
    if (v.size() != decomp.q.rows())
        throw DimensionError("projection_residual: length mismatch");
    CVector r = v;
    // r -= Q (Q* v), done column-wise to avoid forming Q Q*
    for (std::size_t j = 0; j < decomp.q.cols(); ++j) {
        CVector qj = decomp.q.col(j);
        axpy(-dot(qj, v), qj, r);
    }
    return norm2(r);
}

}  // namespace numrange
