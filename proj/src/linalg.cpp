#include "numrange/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace numrange {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// ---------------------------------------------------------------------------
// Householder tridiagonalization of a Hermitian matrix.
//
// A is overwritten; on exit the reflector vectors live below the first
// subdiagonal, d holds the real diagonal and e the complex subdiagonal
// entries e[k] = T(k+1, k) of the reduced Hermitian tridiagonal T.
// ---------------------------------------------------------------------------
void householder_tridiagonalize(CMatrix& a, std::vector<double>& d, CVector& e) {
    const std::size_t n = a.rows();
    d.assign(n, 0.0);
    e.assign(n > 0 ? n - 1 : 0, Complex(0.0));

    CVector v(n), p(n), w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;  // entries below the diagonal
        double xnorm2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) xnorm2 += std::norm(a(k + 1 + i, k));
        double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) {
            e[k] = 0.0;
            a(k + 1, k) = 0.0;  // marks an empty reflector
            continue;
        }

        Complex alpha = a(k + 1, k);
        Complex phase = alpha == Complex(0.0) ? Complex(1.0) : alpha / std::abs(alpha);
        Complex beta = -phase * xnorm;

        // v = x - beta*e1, tau = 2/||v||^2  (no cancellation by sign choice)
        for (std::size_t i = 0; i < len; ++i) v[i] = a(k + 1 + i, k);
        v[0] -= beta;
        double vnorm2 = 2.0 * xnorm * (xnorm + std::abs(alpha));
        double tau = 2.0 / vnorm2;

        // Similarity update of the trailing block B <- (I - tau v v*) B (I - tau v v*)
        // via p = tau B v, w = p - (tau/2)(v* p) v, B -= v w* + w v*.
        for (std::size_t i = 0; i < len; ++i) {
            const Complex* row = a.row_ptr(k + 1 + i) + (k + 1);
            Complex s = 0.0;
            for (std::size_t j = 0; j < len; ++j) s += row[j] * v[j];
            p[i] = tau * s;
        }
        Complex vp = 0.0;
        for (std::size_t i = 0; i < len; ++i) vp += std::conj(v[i]) * p[i];
        Complex half = 0.5 * tau * vp;
        for (std::size_t i = 0; i < len; ++i) w[i] = p[i] - half * v[i];
        for (std::size_t i = 0; i < len; ++i) {
            Complex* row = a.row_ptr(k + 1 + i) + (k + 1);
            Complex vi = v[i], wi = w[i];
            for (std::size_t j = 0; j < len; ++j)
                row[j] -= vi * std::conj(w[j]) + wi * std::conj(v[j]);
        }

        e[k] = beta;
        // Stash the reflector in the annihilated column, v normalized so
        // v[0] = 1 with |v[0]|^2 folded into tau.
        for (std::size_t i = 1; i < len; ++i) a(k + 1 + i, k) = v[i] / v[0];
        a(k + 1, k) = Complex(tau * std::norm(v[0]), 0.0);
    }
    if (n >= 2) e[n - 2] = a(n - 1, n - 2);
    for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
}

// Applies the accumulated reflectors to the columns of z (z <- U z where
// A = U T U*). z has n rows.
void apply_reflectors(const CMatrix& factors, CMatrix& z) {
    const std::size_t n = factors.rows();
    if (n < 3) return;
    const std::size_t m = z.cols();
    CVector v(n), s(m);
    for (std::size_t kk = 0; kk + 2 < n; ++kk) {
        const std::size_t k = n - 3 - kk;
        const std::size_t len = n - k - 1;
        double tau = factors(k + 1, k).real();
        if (tau == 0.0) continue;
        v[0] = 1.0;
        for (std::size_t i = 1; i < len; ++i) v[i] = factors(k + 1 + i, k);
        // s = v* Z(rows k+1..), then Z -= tau v s
        std::fill(s.begin(), s.end(), Complex(0.0));
        for (std::size_t i = 0; i < len; ++i) {
            Complex vi = std::conj(v[i]);
            const Complex* row = z.row_ptr(k + 1 + i);
            for (std::size_t j = 0; j < m; ++j) s[j] += vi * row[j];
        }
        for (std::size_t i = 0; i < len; ++i) {
            Complex tvi = tau * v[i];
            Complex* row = z.row_ptr(k + 1 + i);
            for (std::size_t j = 0; j < m; ++j) row[j] -= tvi * s[j];
        }
    }
}

// Phase-normalizes a complex Hermitian tridiagonal to a real symmetric one:
// T_c = Phi T_r Phi*. Returns the diagonal phases.
CVector phase_normalize(const CVector& e_complex, std::vector<double>& e_real) {
    const std::size_t n = e_complex.size() + 1;
    CVector phi(n, Complex(1.0));
    e_real.assign(e_complex.size(), 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double r = std::abs(e_complex[k]);
        e_real[k] = r;
        Complex ph = r == 0.0 ? Complex(1.0) : e_complex[k] / r;
        phi[k + 1] = phi[k] * ph;
    }
    return phi;
}

double hypot2(double a, double b) { return std::hypot(a, b); }

// Implicit-shift QL on a real symmetric tridiagonal (tql2-style). When z is
// non-null the rotations are accumulated into its columns (z is n x n
// complex, initialized by the caller).
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, CMatrix* z) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    e.resize(n, 0.0);  // e[n-1] used as workspace

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
            }
            if (m != l) {
                if (iter++ == 100)
                    throw std::runtime_error("tridiag_ql: too many iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        for (std::size_t row = 0; row < z->rows(); ++row) {
                            Complex zi = (*z)(row, i);
                            Complex zi1 = (*z)(row, i + 1);
                            (*z)(row, i + 1) = s * zi + c * zi1;
                            (*z)(row, i) = c * zi - s * zi1;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void sort_eigensystem(std::vector<double>& d, CMatrix* z) {
    const std::size_t n = d.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    std::vector<double> ds(n);
    for (std::size_t j = 0; j < n; ++j) ds[j] = d[idx[j]];
    d = std::move(ds);
    if (z) {
        CMatrix zs(z->rows(), n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < z->rows(); ++i) zs(i, j) = (*z)(i, idx[j]);
        *z = std::move(zs);
    }
}

// Inverse iteration on a real symmetric tridiagonal for the eigenvector of
// the eigenvalue closest to shift. Solves with partial pivoting.
std::vector<double> tridiag_eigenvector(const std::vector<double>& d,
                                        const std::vector<double>& e, double shift) {
    const std::size_t n = d.size();
    std::vector<double> x(n);
    // Fixed pseudo-random start keeps the routine deterministic.
    std::uint64_t state = 0x9e3779b97f4a7c15ull ^ (n * 0x2545f4914f6cdd1dull);
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return 2.0 * (double)(state >> 11) / 9007199254740992.0 - 1.0;
    };
    for (double& xi : x) xi = next();

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(d[i]));
    for (std::size_t i = 0; i + 1 < n; ++i) scale = std::max(scale, std::abs(e[i]));
    double pert = std::max(scale, 1.0) * kEps;

    for (int pass = 0; pass < 3; ++pass) {
        // LU factorization of (T - shift I) with partial pivoting; bands
        // sub/diag/super plus fill-in above the superdiagonal.
        std::vector<double> diag(n), sup(n, 0.0), sup2(n, 0.0), sub(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) diag[i] = d[i] - shift;
        for (std::size_t i = 0; i + 1 < n; ++i) sup[i] = e[i], sub[i] = e[i];

        std::vector<double> b = x;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(diag[i]) < std::abs(sub[i])) {
                std::swap(diag[i], sub[i]);
                std::swap(sup[i], diag[i + 1]);
                std::swap(sup2[i], sup[i + 1]);
                std::swap(b[i], b[i + 1]);
            }
            double piv = diag[i];
            if (piv == 0.0) piv = pert;
            double mult = sub[i] / piv;
            diag[i + 1] -= mult * sup[i];
            sup[i + 1] -= mult * sup2[i];
            b[i + 1] -= mult * b[i];
            diag[i] = piv;
        }
        if (diag[n - 1] == 0.0) diag[n - 1] = pert;
        // Back substitution.
        for (std::size_t i = n; i-- > 0;) {
            double s = b[i];
            if (i + 1 < n) s -= sup[i] * b[i + 1];
            if (i + 2 < n) s -= sup2[i] * b[i + 2];
            b[i] = s / diag[i];
        }
        double nb = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
        if (nb == 0.0) {
            for (double& xi : x) xi = next();
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / nb;
    }
    return x;
}

CMatrix symmetrized_copy(const CMatrix& m, const char* what) {
    require_square(m, what);
    require_finite(m, what);
    return hermitian_part(m);
}

std::vector<double> gram_eigenvalues(const CMatrix& m) {
    // Gram matrix on the smaller side.
    const bool wide = m.cols() > m.rows();
    const CMatrix& a = m;
    std::size_t k = wide ? m.rows() : m.cols();
    CMatrix g(k, k);
    if (wide) {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                Complex s = 0.0;
                for (std::size_t l = 0; l < m.cols(); ++l)
                    s += a(i, l) * std::conj(a(j, l));
                g(i, j) = s;
            }
    } else {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                Complex s = 0.0;
                for (std::size_t l = 0; l < m.rows(); ++l)
                    s += std::conj(a(l, i)) * a(l, j);
                g(i, j) = s;
            }
    }
    return hermitian_eigenvalues(g);
}

// Deterministic unit start vector for Lanczos.
CVector lanczos_start(std::size_t n, unsigned attempt) {
    std::uint64_t state = 0x853c49e6748fea9bull + attempt * 0xda3e39cb94b95bdbull + n;
    auto next = [&]() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
        return (double)(z >> 11) / 9007199254740992.0 - 0.5;
    };
    CVector v(n);
    for (Complex& z : v) z = Complex(next(), next());
    double nv = norm2(v);
    for (Complex& z : v) z /= nv;
    return v;
}

}  // namespace

HermEigResult hermitian_eig(const CMatrix& m) {
    CMatrix a = symmetrized_copy(m, "hermitian_eig");
    const std::size_t n = a.rows();

    std::vector<double> d;
    CVector e_c;
    CMatrix factors = a;
    householder_tridiagonalize(factors, d, e_c);

    std::vector<double> e;
    CVector phi = phase_normalize(e_c, e);

    CMatrix z = CMatrix::identity(n);
    apply_reflectors(factors, z);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) z(i, j) *= phi[j];

    tridiag_ql(d, e, &z);
    sort_eigensystem(d, &z);
    return HermEigResult{std::move(d), std::move(z)};
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
    CMatrix a = symmetrized_copy(m, "hermitian_eigenvalues");
    std::vector<double> d;
    CVector e_c;
    householder_tridiagonalize(a, d, e_c);
    std::vector<double> e;
    phase_normalize(e_c, e);
    tridiag_ql(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

std::pair<double, CVector> hermitian_top_eigenpair(const CMatrix& m) {
    CMatrix a = symmetrized_copy(m, "hermitian_top_eigenpair");
    const std::size_t n = a.rows();

    auto dense_path = [&]() -> std::pair<double, CVector> {
        CMatrix factors = a;
        std::vector<double> d;
        CVector e_c;
        householder_tridiagonalize(factors, d, e_c);
        std::vector<double> e;
        CVector phi = phase_normalize(e_c, e);
        std::vector<double> dv = d, ev = e;
        tridiag_ql(dv, ev, nullptr);
        double top = *std::max_element(dv.begin(), dv.end());
        std::vector<double> y = tridiag_eigenvector(d, e, top);
        CMatrix x(n, 1);
        for (std::size_t i = 0; i < n; ++i) x(i, 0) = phi[i] * y[i];
        apply_reflectors(factors, x);
        CVector vec = x.col(0);
        double nv = norm2(vec);
        for (Complex& z : vec) z /= nv;
        return {top, std::move(vec)};
    };

    if (n <= 128) return dense_path();

    // Lanczos with full reorthogonalization (twice per step).
    const std::size_t max_steps = std::min<std::size_t>(n, 320);
    double scale = a.frobenius_norm();
    if (scale == 0.0) {
        CVector e0(n, Complex(0.0));
        e0[0] = 1.0;
        return {0.0, e0};
    }

    for (unsigned attempt = 0; attempt < 2; ++attempt) {
        std::vector<CVector> basis;
        basis.push_back(lanczos_start(n, attempt));
        std::vector<double> alpha, beta;
        bool invariant = false;
        for (std::size_t j = 0; j < max_steps; ++j) {
            CVector w = matvec(a, basis[j]);
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    Complex h = dot(basis[i], w);
                    axpy(-h, basis[i], w);
                    if (pass == 0 && i == j) alpha.push_back(h.real());
                    else if (pass != 0 && i == j) alpha[j] += h.real();
                }
            double b = norm2(w);
            if (b <= 1e-14 * scale) {
                invariant = true;
                break;
            }
            // Convergence test on the projected tridiagonal every few steps.
            if (j >= 8 && (j % 4 == 0 || j + 1 == max_steps)) {
                std::vector<double> dv = alpha, ev = beta;
                std::vector<double> dcopy = dv, ecopy = ev;
                tridiag_ql(dcopy, ecopy, nullptr);
                double top = *std::max_element(dcopy.begin(), dcopy.end());
                std::vector<double> y = tridiag_eigenvector(dv, ev, top);
                double resid = b * std::abs(y.back());
                if (resid <= 1e-13 * scale) {
                    CVector x(n, Complex(0.0));
                    for (std::size_t i = 0; i < basis.size(); ++i)
                        axpy(Complex(y[i], 0.0), basis[i], x);
                    double nx = norm2(x);
                    for (Complex& z : x) z /= nx;
                    return {top, std::move(x)};
                }
            }
            beta.push_back(b);
            for (Complex& z : w) z /= b;
            basis.push_back(std::move(w));
        }
        if (invariant && !alpha.empty()) {
            // Exact invariant subspace: solve the small problem exactly.
            std::vector<double> dv = alpha, ev = beta;
            std::vector<double> dcopy = dv, ecopy = ev;
            tridiag_ql(dcopy, ecopy, nullptr);
            double top = *std::max_element(dcopy.begin(), dcopy.end());
            std::vector<double> y = tridiag_eigenvector(dv, ev, top);
            CVector x(n, Complex(0.0));
            for (std::size_t i = 0; i < basis.size() && i < y.size(); ++i)
                axpy(Complex(y[i], 0.0), basis[i], x);
            double nx = norm2(x);
            if (nx > 0) {
                for (Complex& z : x) z /= nx;
                // The invariant subspace may not contain the global top;
                // another start vector decides. Accept on second attempt.
                if (attempt == 1) return {top, std::move(x)};
                continue;
            }
        }
    }
    return dense_path();
}

PolarDecomposition polar_decompose(const CMatrix& b) {
    require_finite(b, "polar_decompose");
    if (b.rows() < b.cols() || b.cols() == 0)
        throw DimensionError("polar_decompose: need n x k with n >= k >= 1");
    const std::size_t k = b.cols();

    CMatrix g(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Complex s = 0.0;
            for (std::size_t l = 0; l < b.rows(); ++l) s += std::conj(b(l, i)) * b(l, j);
            g(i, j) = s;
        }
    HermEigResult eg = hermitian_eig(g);
    double lmax = std::max(eg.eigenvalues.back(), 0.0);
    double floor2 = std::max(1e-24 * lmax, 1e-300);
    if (eg.eigenvalues.front() <= floor2)
        throw SingularityError("polar_decompose: rank-deficient input");

    const CMatrix& u = eg.eigenvectors;
    std::vector<double> s(k), sinv(k);
    for (std::size_t i = 0; i < k; ++i) {
        s[i] = std::sqrt(eg.eigenvalues[i]);
        sinv[i] = 1.0 / s[i];
    }
    auto scaled = [&](const std::vector<double>& diag) {
        CMatrix r(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                Complex acc = 0.0;
                for (std::size_t l = 0; l < k; ++l)
                    acc += u(i, l) * diag[l] * std::conj(u(j, l));
                r(i, j) = acc;
            }
        return r;
    };
    CMatrix h = scaled(s);
    h = hermitian_part(h);
    CMatrix q = matmul(b, scaled(sinv));
    return PolarDecomposition{std::move(q), std::move(h)};
}

double two_norm(const CMatrix& m) {
    require_finite(m, "two_norm");
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    if (m.frobenius_norm() == 0.0) return 0.0;
    std::vector<double> ev = gram_eigenvalues(m);
    return std::sqrt(std::max(ev.back(), 0.0));
}

double condition_number(const CMatrix& v) {
    require_square(v, "condition_number");
    require_finite(v, "condition_number");
    std::vector<double> ev = gram_eigenvalues(v);
    double lmax = std::max(ev.back(), 0.0);
    double lmin = ev.front();
    if (lmax == 0.0 || lmin <= 1e-24 * lmax)
        throw SingularityError("condition_number: numerically singular matrix");
    return std::sqrt(lmax / lmin);
}

}  // namespace numrange
