#include "numrange/hessenberg_eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace numrange {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Givens {
    double c;
    Complex s;
};

Givens make_givens(Complex a, Complex b) {
    double na = std::abs(a), nb = std::abs(b);
    if (nb == 0.0) return {1.0, Complex(0.0)};
    if (na == 0.0) return {0.0, Complex(1.0)};
    double r = std::hypot(na, nb);
    // [c, s; -conj(s), c] [a; b] = [r a/|a|; 0]
    return {na / r, (a / na) * std::conj(b) / r};
}

Complex wilkinson_shift(const CMatrix& h, std::size_t hi) {
    Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
    Complex c = h(hi, hi - 1), d = h(hi, hi);
    Complex tr2 = 0.5 * (a + d);
    Complex disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
    Complex e1 = tr2 + disc, e2 = tr2 - disc;
    return std::abs(e1 - d) < std::abs(e2 - d) ? e1 : e2;
}

}  // namespace

CVector hessenberg_eigenvalues(const CMatrix& input) {
    require_square(input, "hessenberg_eigenvalues");
    require_finite(input, "hessenberg_eigenvalues");
    const std::size_t n = input.rows();
    CMatrix h = input;
    CVector eig;
    eig.reserve(n);

    std::size_t hi = n - 1;
    int stall = 0;
    while (true) {
        // deflate negligible subdiagonals
        for (std::size_t i = 1; i <= hi; ++i) {
            double scale = std::abs(h(i - 1, i - 1)) + std::abs(h(i, i));
            if (std::abs(h(i, i - 1)) <= kEps * std::max(scale, 1e-300))
                h(i, i - 1) = 0.0;
        }
        while (hi > 0 && h(hi, hi - 1) == Complex(0.0)) {
            eig.push_back(h(hi, hi));
            --hi;
            stall = 0;
        }
        if (hi == 0) {
            eig.push_back(h(0, 0));
            break;
        }

        // active block [lo, hi]
        std::size_t lo = hi;
        while (lo > 0 && h(lo, lo - 1) != Complex(0.0)) --lo;

        Complex sigma = wilkinson_shift(h, hi);
        if (++stall % 16 == 0)  // exceptional shift to break cycles
            sigma = h(hi, hi) + std::abs(h(hi, hi - 1));
        if (stall > 400)
            throw std::runtime_error("hessenberg_eigenvalues: no convergence");

        // explicit single-shift QR step on the active block
        std::vector<Givens> rot(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) h(i, i) -= sigma;
        h(hi, hi) -= sigma;
        for (std::size_t i = lo; i < hi; ++i) {
            Givens g = make_givens(h(i, i), h(i + 1, i));
            rot[i - lo] = g;
            for (std::size_t j = i; j <= hi; ++j) {
                Complex x = h(i, j), y = h(i + 1, j);
                h(i, j) = g.c * x + g.s * y;
                h(i + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
        }
        for (std::size_t i = lo; i < hi; ++i) {
            Givens g = rot[i - lo];
            std::size_t top = lo;
            for (std::size_t r = top; r <= std::min(i + 1, hi); ++r) {
                Complex x = h(r, i), y = h(r, i + 1);
                h(r, i) = g.c * x + std::conj(g.s) * y;
                h(r, i + 1) = -g.s * x + g.c * y;
            }
        }
        for (std::size_t i = lo; i <= hi; ++i) h(i, i) += sigma;
    }

    std::sort(eig.begin(), eig.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return eig;
}

}  // namespace numrange
