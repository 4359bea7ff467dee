#include "numrange/extremal_polys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace numrange {

namespace {

constexpr double kPoleRadius = 1e-3;  // below this, switch to coefficients

void validate(const PolySpec& s) {
    if (s.m < 1) throw DomainError("PolySpec: m must be >= 1");
    switch (s.family) {
        case PolyFamily::circle:
            if (!(s.delta >= 0.0 && s.delta < 1.0))
                throw DomainError("PolySpec(circle): delta in [0,1) required");
            if (!(-1.0 <= s.c1 && s.c1 < s.c2 && s.c2 <= 1.0))
                throw DomainError("PolySpec(circle): need -1 <= c1 < c2 <= 1");
            break;
        case PolyFamily::disk:
            if (!(s.eps > 0.0 && s.eps < 1.0))
                throw DomainError("PolySpec(disk): eps in (0,1) required");
            break;
        case PolyFamily::annulus:
            if (!(s.delta >= 0.0 && s.delta < 1.0))
                throw DomainError("PolySpec(annulus): delta in [0,1) required");
            break;
    }
}

// Coefficient rows of T_0..T_m in the monomial basis.
std::vector<std::vector<double>> chebyshev_rows(int m) {
    std::vector<std::vector<double>> t(m + 1);
    t[0] = {1.0};
    if (m >= 1) t[1] = {0.0, 1.0};
    for (int k = 2; k <= m; ++k) {
        t[k].assign(k + 1, 0.0);
        for (int j = 0; j < k; ++j) t[k][j + 1] += 2.0 * t[k - 1][j];
        for (std::size_t j = 0; j < t[k - 2].size(); ++j) t[k][j] -= t[k - 2][j];
    }
    return t;
}

std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> c(a.size() + b.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

Complex horner(const std::vector<Complex>& coeffs, Complex z) {
    Complex v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * z + coeffs[i];
    return v;
}

// sum_j w_j z^{base-j} q(z)^j with q quadratic; shared shape of the three
// cleared forms.
std::vector<Complex> cleared_form(int m, int base, const std::vector<Complex>& q,
                                  const std::vector<double>& weights) {
    std::vector<Complex> acc(base + m + 1, Complex(0.0));
    std::vector<Complex> qpow = {1.0};
    for (int j = 0; j <= m; ++j) {
        if (weights[j] != 0.0) {
            for (std::size_t i = 0; i < qpow.size(); ++i)
                acc[base - j + i] += weights[j] * qpow[i];
        }
        if (j < m) qpow = poly_mul(qpow, q);
    }
    return acc;
}

double arg_in_2pi(Complex z) {
    double a = std::arg(z);
    if (a < 0) a += 2.0 * M_PI;
    return a;
}

}  // namespace

PolySpec PolySpec::circle(int m, double c1, double c2, double delta) {
    PolySpec s;
    s.family = PolyFamily::circle;
    s.m = m;
    s.c1 = c1;
    s.c2 = c2;
    s.delta = delta;
    validate(s);
    return s;
}

PolySpec PolySpec::disk(int m, double eps) {
    PolySpec s;
    s.family = PolyFamily::disk;
    s.m = m;
    s.eps = eps;
    validate(s);
    return s;
}

PolySpec PolySpec::annulus(int m, double delta) {
    PolySpec s;
    s.family = PolyFamily::annulus;
    s.m = m;
    s.delta = delta;
    validate(s);
    return s;
}

int PolySpec::degree() const {
    switch (family) {
        case PolyFamily::circle: return 2 * m;
        case PolyFamily::disk: return 3 * m;
        case PolyFamily::annulus: return 6 * m;
    }
    return 0;
}

Complex chebyshev_T(int m, Complex z) {
    if (m < 0) throw DomainError("chebyshev_T: m must be >= 0");
    if (m == 0) return 1.0;
    Complex prev = 1.0, cur = z;
    for (int k = 1; k < m; ++k) {
        Complex next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double chebyshev_log_abs(int m, Complex z) {
    // |T_m(z)| = |cos(m acos z)|; stable in log form for any magnitude.
    Complex w = double(m) * std::acos(z);
    double a = w.real(), b = std::abs(w.imag());
    double log_cosh = b + std::log1p(std::exp(-2.0 * b)) - std::log(2.0);
    double sin_a = std::sin(a);
    double ratio = sin_a * sin_a * std::exp(-2.0 * log_cosh);
    ratio = std::min(ratio, 1.0);
    return log_cosh + 0.5 * std::log1p(-ratio);
}

Complex quad_map(double delta, Complex z) {
    if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("quad_map: delta in [0,1)");
    return (1.0 - delta / 4.0) * z * z + (1.0 - delta / 8.0) * z + 1.0;
}

std::vector<Complex> poly_coefficients(const PolySpec& spec) {
    validate(spec);
    const int m = spec.m;
    auto t = chebyshev_rows(m);

    switch (spec.family) {
        case PolyFamily::circle: {
            // z^m T_m((z + z^-1 - 2 c1)/s - 1), s = (1-delta)(c2-c1):
            // sum_j t_j s^-j z^(m-j) (z^2 - (2 c1 + s) z + 1)^j
            double s = (1.0 - spec.delta) * (spec.c2 - spec.c1);
            std::vector<Complex> q = {1.0, -(2.0 * spec.c1 + s), 1.0};
            std::vector<double> w(m + 1, 0.0);
            double sj = 1.0;
            for (int j = 0; j <= m; ++j) {
                w[j] = (j < int(t[m].size()) ? t[m][j] : 0.0) / sj;
                sj *= s;
            }
            return cleared_form(m, m, q, w);
        }
        case PolyFamily::disk: {
            // z^{2m} T_m((z + z^-1)/(2 cos eps))
            double c = 2.0 * std::cos(spec.eps);
            std::vector<Complex> q = {1.0, 0.0, 1.0};
            std::vector<double> w(m + 1, 0.0);
            double cj = 1.0;
            for (int j = 0; j <= m; ++j) {
                w[j] = (j < int(t[m].size()) ? t[m][j] : 0.0) / cj;
                cj *= c;
            }
            return cleared_form(m, 2 * m, q, w);
        }
        case PolyFamily::annulus: {
            // G(w) = w^{2m} T_m((w + w^-1)/(2 cos(2 delta/3))), then w = P(z).
            double c = 2.0 * std::cos(2.0 * spec.delta / 3.0);
            std::vector<Complex> q = {1.0, 0.0, 1.0};
            std::vector<double> w(m + 1, 0.0);
            double cj = 1.0;
            for (int j = 0; j <= m; ++j) {
                w[j] = (j < int(t[m].size()) ? t[m][j] : 0.0) / cj;
                cj *= c;
            }
            std::vector<Complex> g = cleared_form(m, 2 * m, q, w);
            std::vector<Complex> p = {1.0, 1.0 - spec.delta / 8.0, 1.0 - spec.delta / 4.0};
            // Horner composition g(P(z))
            std::vector<Complex> res = {g.back()};
            for (std::size_t i = g.size() - 1; i-- > 0;) {
                res = poly_mul(res, p);
                res[0] += g[i];
            }
            return res;
        }
    }
    return {};
}

Complex circle_poly_eval(const PolySpec& spec, Complex z) {
    validate(spec);
    if (spec.family != PolyFamily::circle)
        throw DomainError("circle_poly_eval: wrong family");
    if (std::abs(z) < kPoleRadius) {
        if (z == Complex(0.0)) throw DomainError("circle_poly_eval: pole at z = 0");
        return horner(poly_coefficients(spec), z);
    }
    double s = (1.0 - spec.delta) * (spec.c2 - spec.c1);
    Complex u = (z + 1.0 / z - 2.0 * spec.c1) / s - 1.0;
    return std::pow(z, spec.m) * chebyshev_T(spec.m, u);
}

Complex disk_poly_eval(const PolySpec& spec, Complex z) {
    validate(spec);
    if (spec.family != PolyFamily::disk) throw DomainError("disk_poly_eval: wrong family");
    if (std::abs(z) < kPoleRadius) return horner(poly_coefficients(spec), z);
    Complex u = (z + 1.0 / z) / (2.0 * std::cos(spec.eps));
    return std::pow(z, 2 * spec.m) * chebyshev_T(spec.m, u);
}

Complex annulus_poly_eval(const PolySpec& spec, Complex z) {
    validate(spec);
    if (spec.family != PolyFamily::annulus)
        throw DomainError("annulus_poly_eval: wrong family");
    Complex p = quad_map(spec.delta, z);
    if (std::abs(p) < kPoleRadius) return horner(poly_coefficients(spec), z);
    Complex u = (p + 1.0 / p) / (2.0 * std::cos(2.0 * spec.delta / 3.0));
    return std::pow(p, 2 * spec.m) * chebyshev_T(spec.m, u);
}

double circle_poly_log_abs(const PolySpec& spec, Complex z) {
    if (std::abs(z) < kPoleRadius)
        return std::log(std::abs(circle_poly_eval(spec, z)));
    double s = (1.0 - spec.delta) * (spec.c2 - spec.c1);
    Complex u = (z + 1.0 / z - 2.0 * spec.c1) / s - 1.0;
    return spec.m * std::log(std::abs(z)) + chebyshev_log_abs(spec.m, u);
}

double disk_poly_log_abs(const PolySpec& spec, Complex z) {
    if (std::abs(z) < kPoleRadius)
        return std::log(std::abs(disk_poly_eval(spec, z)));
    Complex u = (z + 1.0 / z) / (2.0 * std::cos(spec.eps));
    return 2.0 * spec.m * std::log(std::abs(z)) + chebyshev_log_abs(spec.m, u);
}

double annulus_poly_log_abs(const PolySpec& spec, Complex z) {
    Complex p = quad_map(spec.delta, z);
    if (std::abs(p) < kPoleRadius)
        return std::log(std::abs(annulus_poly_eval(spec, z)));
    Complex u = (p + 1.0 / p) / (2.0 * std::cos(2.0 * spec.delta / 3.0));
    return 2.0 * spec.m * std::log(std::abs(p)) + chebyshev_log_abs(spec.m, u);
}

bool in_region(const RegionSpec& spec, Complex z) {
    switch (spec.kind) {
        case RegionKind::half_annulus_D: {
            double r = std::abs(z);
            return spec.delta <= r && r <= 1.0 && z.real() <= 0.0;
        }
        case RegionKind::slit_disk_R: {
            double r = std::abs(z);
            if (r <= 1.0 - spec.eps / 8.0) return true;
            if (r > 1.0) return false;
            double a = arg_in_2pi(z);
            return (spec.eps <= a && a <= M_PI - spec.eps) ||
                   (M_PI + spec.eps <= a && a <= 2.0 * M_PI - spec.eps);
        }
        case RegionKind::circle_arc: {
            if (std::abs(std::abs(z) - 1.0) > 1e-12) return false;
            double c = std::cos(std::arg(z));
            return spec.c1 <= c && c <= spec.c2 - spec.delta * (spec.c2 - spec.c1);
        }
    }
    return false;
}

namespace {

// Boundary + interior grids per region; the density applies to the boundary
// and about a thousand interior points serve as a maximum-modulus cross-check.
std::vector<Complex> circle_arc_grid(const PolySpec& s, int density) {
    double upper = s.c2 - s.delta * (s.c2 - s.c1);
    double th_lo = std::acos(std::clamp(upper, -1.0, 1.0));
    double th_hi = std::acos(std::clamp(s.c1, -1.0, 1.0));
    std::vector<Complex> g;
    g.reserve(2 * density);
    for (int i = 0; i < density; ++i) {
        double th = th_lo + (th_hi - th_lo) * double(i) / double(density - 1);
        g.push_back(std::polar(1.0, th));
        g.push_back(std::polar(1.0, -th));  // both semicircle branches
    }
    return g;
}

std::vector<Complex> slit_disk_grid(double eps, int density, bool with_interior) {
    std::vector<Complex> g;
    double rin = 1.0 - eps / 8.0;
    // unit-circle arcs inside the sectors
    int n1 = density / 3 + 2;
    for (int i = 0; i < n1; ++i) {
        double t = double(i) / double(n1 - 1);
        g.push_back(std::polar(1.0, eps + t * (M_PI - 2.0 * eps)));
        g.push_back(std::polar(1.0, M_PI + eps + t * (M_PI - 2.0 * eps)));
    }
    // inner-radius arcs near the real axis
    int n2 = density / 6 + 2;
    for (int i = 0; i < n2; ++i) {
        double t = double(i) / double(n2 - 1);
        g.push_back(std::polar(rin, -eps + t * (2.0 * eps)));
        g.push_back(std::polar(rin, M_PI - eps + t * (2.0 * eps)));
    }
    // radial seams
    int n3 = density / 12 + 2;
    for (double th : {eps, M_PI - eps, M_PI + eps, 2.0 * M_PI - eps})
        for (int i = 0; i < n3; ++i) {
            double r = rin + (1.0 - rin) * double(i) / double(n3 - 1);
            g.push_back(std::polar(r, th));
        }
    if (with_interior) {
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) {
                double r = rin * (double(i) + 0.5) / 32.0;
                double th = 2.0 * M_PI * (double(j) + 0.5) / 32.0;
                g.push_back(std::polar(r, th));
            }
    }
    return g;
}

std::vector<Complex> half_annulus_grid(double delta, int density, bool with_interior) {
    std::vector<Complex> g;
    int n1 = density * 2 / 5 + 2;
    for (int i = 0; i < n1; ++i) {
        double th = M_PI / 2.0 + M_PI * double(i) / double(n1 - 1);
        g.push_back(std::polar(1.0, th));
        g.push_back(std::polar(std::max(delta, 1e-12), th));
    }
    int n2 = density / 10 + 2;
    for (int i = 0; i < n2; ++i) {
        double r = delta + (1.0 - delta) * double(i) / double(n2 - 1);
        g.push_back(Complex(0.0, r));
        g.push_back(Complex(0.0, -r));
    }
    if (with_interior) {
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) {
                double r = delta + (1.0 - delta) * (double(i) + 0.5) / 32.0;
                double th = M_PI / 2.0 + M_PI * (double(j) + 0.5) / 32.0;
                g.push_back(std::polar(r, th));
            }
    }
    return g;
}

}  // namespace

CertReport certify_remez(const PolySpec& spec, int grid_density) {
    validate(spec);
    if (grid_density < 1000)
        throw DomainError("certify_remez: grid_density must be >= 1000");

    CertReport rep;
    rep.params = {{"m", spec.m}};
    std::vector<Complex> grid;
    double log_const = 0.0;
    Complex point;

    switch (spec.family) {
        case PolyFamily::circle:
            rep.family = "circle";
            rep.params["delta"] = spec.delta;
            rep.params["c1"] = spec.c1;
            rep.params["c2"] = spec.c2;
            grid = circle_arc_grid(spec, grid_density);
            log_const = 2.0 * spec.m * std::sqrt(spec.delta) - std::log(2.0);
            point = std::polar(1.0, std::acos(spec.c2));
            break;
        case PolyFamily::disk:
            rep.family = "disk";
            rep.params["eps"] = spec.eps;
            grid = slit_disk_grid(spec.eps, grid_density, true);
            log_const = spec.m * spec.eps / 8.0;
            point = 1.0;
            break;
        case PolyFamily::annulus:
            rep.family = "annulus";
            rep.params["delta"] = spec.delta;
            grid = half_annulus_grid(spec.delta, grid_density, true);
            log_const = spec.m * spec.delta / 12.0;
            point = 1.0;
            break;
    }

    auto log_abs = [&](Complex z) {
        switch (spec.family) {
            case PolyFamily::circle: return circle_poly_log_abs(spec, z);
            case PolyFamily::disk: return disk_poly_log_abs(spec, z);
            case PolyFamily::annulus: return annulus_poly_log_abs(spec, z);
        }
        return 0.0;
    };

    double log_max = -std::numeric_limits<double>::infinity();
    for (Complex z : grid) log_max = std::max(log_max, log_abs(z));

    rep.grid_size = grid.size();
    rep.log_max_on_region = log_max;
    rep.log_value_at_point = log_abs(point);
    rep.ratio = std::exp(rep.log_value_at_point - log_const - log_max);
    rep.pass = rep.log_value_at_point >= log_const + log_max;
    return rep;
}

bool certify_appendix_map(double delta, int grid_density) {
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("certify_appendix_map: delta in (0,1)");
    if (grid_density < 10000)
        throw DomainError("certify_appendix_map: grid_density must be >= 1e4");

    RegionSpec target;
    target.kind = RegionKind::slit_disk_R;
    target.eps = 2.0 * delta / 3.0;

    int n = grid_density;
    for (int i = 0; i < n; ++i) {
        double t = double(i) / double(n - 1);
        double th = M_PI / 2.0 + M_PI * t;
        Complex z1 = std::polar(1.0, th);                       // outer arc
        double c = delta + (1.0 - delta) * t;
        Complex z2a = Complex(0.0, c);                          // imaginary seams
        Complex z2b = Complex(0.0, -c);
        Complex z3 = std::polar(delta, th);                     // inner arc
        for (Complex z : {z1, z2a, z2b, z3})
            if (!in_region(target, quad_map(delta, z))) return false;
    }
    return true;
}

void to_json(nlohmann::json& j, const CertReport& r) {
    j = {{"family", r.family},
         {"params", r.params},
         {"log_max_on_region", r.log_max_on_region},
         {"log_value_at_point", r.log_value_at_point},
         {"ratio", r.ratio},
         {"grid_size", r.grid_size},
         {"pass", r.pass}};
}

}  // namespace numrange
