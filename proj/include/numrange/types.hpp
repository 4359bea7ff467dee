#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace numrange {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Error taxonomy shared by all modules.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool all_finite(const CVector& v) {
    for (Complex z : v)
        if (!is_finite(z)) return false;
    return true;
}

// Conjugated inner product <x, y> = x* y (conjugate-linear in the first slot).
inline Complex dot(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
    Complex s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

inline double norm2_squared(const CVector& x) {
    double s = 0.0;
    for (Complex z : x) s += std::norm(z);
    return s;
}

inline double norm2(const CVector& x) { return std::sqrt(norm2_squared(x)); }

inline void scale(CVector& x, Complex c) {
    for (Complex& z : x) z *= c;
}

// y += c * x
inline void axpy(Complex c, const CVector& x, CVector& y) {
    if (x.size() != y.size()) throw DimensionError("axpy: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

}  // namespace numrange
