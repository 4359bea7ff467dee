#include <doctest.h>

#include <cmath>
#include <random>

#include "numrange/convexgeom.hpp"
#include "numrange/krylov.hpp"
#include "numrange/linalg.hpp"
#include "test_helpers.hpp"

using namespace numrange;
using testutil::random_hermitian;
using testutil::random_matrix;
using testutil::random_vector;

namespace {

CVector unit(CVector v) {
    double n = norm2(v);
    for (Complex& z : v) z /= n;
    return v;
}

double hessenberg_defect(const CMatrix& h, double scale) {
    double worst = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j + 1 < i; ++j)
            worst = std::max(worst, std::abs(h(i, j)));
    return worst / scale;
}

}  // namespace

TEST_CASE("arnoldi: eigenvector start breaks down immediately") {
    CMatrix a = CMatrix::diagonal({1.0, 2.0, 3.0});
    CVector e1 = {1.0, 0.0, 0.0};
    KrylovDecomposition d = arnoldi(a, e1, 3);
    CHECK(d.breakdown);
    CHECK(d.effective_k == 1);
    REQUIRE(d.h.rows() == 1);
    CHECK(std::abs(d.h(0, 0) - Complex(1.0)) <= 1e-14);
}

TEST_CASE("arnoldi: Lanczos specialization is tridiagonal") {
    CMatrix a = random_hermitian(40, 13);
    CVector b = random_vector(40, 14);
    KrylovDecomposition d = arnoldi(a, b, 10);
    double na = two_norm(a);
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 10; ++j)
            if (i > j + 1 || j > i + 1)
                CHECK(std::abs(d.h(i, j)) <= 1e-10 * na);
}

TEST_CASE("arnoldi: circle-multiplicity matrix with flat start gives the shift form") {
    // eigenvalues theta (x) 1 with b = all-ones: the projected matrix has unit
    // subdiagonal and zeros elsewhere
    const int kk = 16, ll = 4, m = 8;
    CVector diag(kk * ll);
    for (int j = 0; j < kk; ++j)
        for (int l = 0; l < ll; ++l)
            diag[j * ll + l] = std::polar(1.0, 2.0 * M_PI * (j + 1) / kk);
    CMatrix a = CMatrix::diagonal(diag);
    CVector ones(kk * ll, Complex(1.0));
    KrylovDecomposition d = arnoldi(a, ones, m);
    REQUIRE(d.effective_k == m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double expected = (i == j + 1) ? 1.0 : 0.0;
            CHECK(std::abs(d.h(i, j) - Complex(expected)) <= 1e-10);
        }
}

TEST_CASE("arnoldi: invariants on random instances") {
    for (std::uint32_t seed = 0; seed < 6; ++seed) {
        std::size_t n = 30 + 17 * seed;
        int m = 8 + int(seed);
        CMatrix a = random_matrix(n, n, 100 + seed);
        CVector b = random_vector(n, 200 + seed);
        KrylovDecomposition d = arnoldi(a, b, m);
        REQUIRE(d.effective_k == m);

        CMatrix qtq = matmul(d.q.adjoint(), d.q);
        CHECK(two_norm(qtq - CMatrix::identity(m)) <= 1e-10);

        CMatrix hq = matmul(matmul(d.q.adjoint(), a), d.q);
        double na = two_norm(a);
        CHECK(two_norm(hq - d.h) <= 1e-10 * na);
        CHECK(hessenberg_defect(d.h, na) <= 1e-12);
    }
}

TEST_CASE("arnoldi: nesting, scale invariance, shift covariance") {
    CMatrix a = random_matrix(50, 50, 31);
    CVector b = random_vector(50, 32);

    KrylovDecomposition big = arnoldi(a, b, 12);
    KrylovDecomposition small = arnoldi(a, b, 7);
    // columns agree up to unit phase
    for (int j = 0; j < 7; ++j) {
        CVector qb = big.q.col(j), qs = small.q.col(j);
        Complex phase = dot(qs, qb);
        CHECK(std::abs(std::abs(phase) - 1.0) <= 1e-10);
        axpy(-phase, qs, qb);
        CHECK(norm2(qb) <= 1e-9);
    }
    // H nests exactly up to the same phases (real positive here by CGS)
    CHECK(two_norm(big.h.leading_block(7) - small.h) <= 1e-10 * two_norm(a));

    // subspace is invariant under scaling b
    CVector b2 = b;
    scale(b2, Complex(0.3, -1.7));
    KrylovDecomposition scaled = arnoldi(a, b2, 7);
    for (int j = 0; j < 7; ++j) {
        CHECK(projection_residual(scaled, unit(small.q.col(j))) <= 1e-10);
        CHECK(projection_residual(small, unit(scaled.q.col(j))) <= 1e-10);
    }

    // H(A + cI) = H(A) + cI
    Complex c(0.8, -0.3);
    CMatrix ashift = a;
    for (std::size_t i = 0; i < 50; ++i) ashift(i, i) += c;
    KrylovDecomposition shifted = arnoldi(ashift, b, 7);
    CMatrix expected = small.h;
    for (int i = 0; i < 7; ++i) expected(i, i) += c;
    CHECK(two_norm(shifted.h - expected) <= 1e-10 * (two_norm(a) + std::abs(c)));
}

TEST_CASE("arnoldi: errors") {
    CMatrix a = CMatrix::identity(4);
    CVector zero(4, Complex(0.0));
    CHECK_THROWS_AS(arnoldi(a, zero, 2), DomainError);
    CVector b(4, Complex(1.0));
    CHECK_THROWS_AS(arnoldi(a, b, 0), DomainError);
    CVector wrong(3, Complex(1.0));
    CHECK_THROWS_AS(arnoldi(a, wrong, 2), DimensionError);
}

TEST_CASE("rayleigh_quotient basics") {
    CMatrix eye = CMatrix::identity(5);
    CVector x = random_vector(5, 3);
    Complex r = rayleigh_quotient(eye, x);
    CHECK(std::abs(r - Complex(1.0)) <= 1e-14);

    CMatrix d01 = CMatrix::diagonal({0.0, 1.0});
    CVector half = {Complex(M_SQRT1_2), Complex(M_SQRT1_2)};
    CHECK(std::abs(rayleigh_quotient(d01, half) - Complex(0.5)) <= 1e-14);

    CVector zero(5, Complex(0.0));
    CHECK_THROWS_AS(rayleigh_quotient(eye, zero), DomainError);
}

TEST_CASE("poly_apply: anchors and membership in W(H_m)") {
    CMatrix a = random_matrix(20, 20, 71);
    CVector b = random_vector(20, 72);

    CVector constant = poly_apply(a, b, {Complex(1.0)});
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(constant[i] - b[i]) == 0.0);

    CMatrix two_i = 2.0 * CMatrix::identity(20);
    CVector lin = poly_apply(two_i, b, {Complex(0.0), Complex(1.0)});
    for (std::size_t i = 0; i < b.size(); ++i)
        CHECK(std::abs(lin[i] - 2.0 * b[i]) <= 1e-14);

    // Rayleigh quotients of Krylov vectors live in W(H_m)
    const int m = 6;
    KrylovDecomposition d = arnoldi(a, b, m);
    ConvexPolygon w = numerical_range(d.h, SweepConfig{1024});
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        CVector coeffs(m);  // degree < m
        for (Complex& z : coeffs) z = Complex(dist(gen), dist(gen));
        CVector x = poly_apply(a, b, coeffs);
        Complex rq = rayleigh_quotient(a, x);
        double sweep_err = (w.perimeter() / 2048.0) * std::tan(M_PI / 1024.0);
        CHECK(point_distance(w, rq) <= sweep_err + 1e-9);
    }
}

TEST_CASE("poly_apply matches the eigenvalue-weighted quotient for normal A") {
    // For diagonal A the Rayleigh quotient of p(A)b is the |alpha|^2 |p|^2
    // weighted mean of the eigenvalues.
    std::mt19937 gen(6);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const std::size_t n = 30;
    CVector lambda(n);
    for (Complex& z : lambda) z = Complex(dist(gen), dist(gen));
    CMatrix a = CMatrix::diagonal(lambda);
    for (int rep = 0; rep < 100; ++rep) {
        CVector b = random_vector(n, 700 + rep);
        CVector coeffs(1 + gen() % 6);
        for (Complex& z : coeffs) z = Complex(dist(gen), dist(gen));
        CVector x = poly_apply(a, b, coeffs);
        if (norm2(x) < 1e-12) continue;
        Complex lhs = rayleigh_quotient(a, x);

        Complex num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            Complex p = 0.0;
            for (std::size_t c = coeffs.size(); c-- > 0;) p = p * lambda[j] + coeffs[c];
            double w = std::norm(b[j]) * std::norm(p);
            num += w * lambda[j];
            den += w;
        }
        CHECK(std::abs(lhs - num / den) <= 1e-9);
    }
}

TEST_CASE("projection_residual: contained, orthogonal, separated-eigenvalue bound") {
    CMatrix a = random_matrix(25, 25, 81);
    CVector b = random_vector(25, 82);
    KrylovDecomposition d = arnoldi(a, b, 8);

    CHECK(projection_residual(d, d.q.col(0)) <= 1e-12);

    // vector orthogonal to the basis keeps its norm
    CVector v = random_vector(25, 83);
    for (int pass = 0; pass < 2; ++pass)
        for (int j = 0; j < 8; ++j) {
            CVector qj = d.q.col(j);
            axpy(-dot(qj, v), qj, v);
        }
    CVector vu = unit(v);
    CHECK(projection_residual(d, vu) == doctest::Approx(1.0).epsilon(1e-10));

    CVector wrong(10, Complex(1.0));
    CHECK_THROWS_AS(projection_residual(d, wrong), DimensionError);

    // separated extreme eigenvalue: residual of its eigenvector obeys the
    // exp(-(m-1) eps / 72) bound
    const std::size_t n = 120;
    CVector lam(n);
    lam[0] = 1.0;
    for (std::size_t j = 1; j < n; ++j)
        lam[j] = 0.05 * std::polar(1.0, 2.0 * M_PI * double(j) / double(n - 1));
    CMatrix sep = CMatrix::diagonal(lam);
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            diam = std::max(diam, std::abs(lam[i] - lam[j]));
    double eps = std::abs(lam[0] - Complex(0.05)) / diam;  // separation / diameter

    CVector start(n, Complex(0.0));
    start[0] = 10.0;  // strong overlap with the separated eigenvector
    for (std::size_t j = 1; j < n; ++j) start[j] = 1.0;
    const int m = 161;
    KrylovDecomposition dk = arnoldi(sep, start, m);
    CVector e0(n, Complex(0.0));
    e0[0] = 1.0;
    double resid = projection_residual(dk, e0);
    double ratio = norm2_squared(start) / std::norm(start[0]);
    double bound = ratio * std::exp(-double(m - 1) * eps / 72.0);
    CHECK(bound < 1.0);  // the instance is chosen so the bound is informative
    CHECK(resid <= bound);
}
