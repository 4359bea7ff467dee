#include <doctest.h>

#include <cmath>
#include <random>

#include "numrange/extremal_polys.hpp"

using namespace numrange;

TEST_CASE("chebyshev_T: analytic anchor values") {
    CHECK(chebyshev_T(3, Complex(0.5)).real() == doctest::Approx(-1.0));
    for (int m = 0; m <= 50; ++m)
        CHECK(chebyshev_T(m, Complex(1.0)).real() == doctest::Approx(1.0));
    CHECK(chebyshev_T(2, Complex(2.0)).real() == doctest::Approx(7.0));
}

TEST_CASE("chebyshev_T: bounded on [-1,1] and matches cos(m theta)") {
    for (int m : {1, 7, 31, 64}) {
        for (int i = 0; i < 10000; i += 7) {
            double x = -1.0 + 2.0 * double(i) / 9999.0;
            CHECK(std::abs(chebyshev_T(m, Complex(x))) <= 1.0 + 1e-12);
        }
    }
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> th(0.0, M_PI);
    for (int rep = 0; rep < 200; ++rep) {
        int m = 1 + int(gen() % 64);
        double theta = th(gen);
        double lhs = chebyshev_T(m, Complex(std::cos(theta))).real();
        CHECK(lhs == doctest::Approx(std::cos(m * theta)).epsilon(1e-9));
    }
}

TEST_CASE("chebyshev_log_abs agrees with direct evaluation") {
    std::mt19937 gen(4);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int rep = 0; rep < 200; ++rep) {
        int m = 1 + int(gen() % 20);
        Complex z(dist(gen), dist(gen));
        double direct = std::log(std::abs(chebyshev_T(m, z)));
        if (!std::isfinite(direct) || direct < -30) continue;
        CHECK(chebyshev_log_abs(m, z) == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("quad_map fixed values") {
    for (double d : {0.0, 0.3, 0.9}) {
        Complex v = quad_map(d, Complex(0.0));
        CHECK(v.real() == doctest::Approx(1.0));
        CHECK(v.imag() == doctest::Approx(0.0));
    }
    CHECK(quad_map(0.0, Complex(-1.0)).real() == doctest::Approx(1.0));
    // direct arithmetic: (1 - 0.125)(-1) + (1 - 0.0625) i + 1
    Complex v = quad_map(0.5, Complex(0.0, 1.0));
    CHECK(v.real() == doctest::Approx(0.125));
    CHECK(v.imag() == doctest::Approx(0.9375));
}

TEST_CASE("circle family: bounded on the arc, large at the endpoint") {
    PolySpec spec = PolySpec::circle(6, -1.0, 0.5, 0.2);
    double upper = spec.c2 - spec.delta * (spec.c2 - spec.c1);
    for (int i = 0; i < 1000; ++i) {
        double c = spec.c1 + (upper - spec.c1) * double(i) / 999.0;
        double th = std::acos(c);
        CHECK(std::abs(circle_poly_eval(spec, std::polar(1.0, th))) <= 1.0 + 1e-9);
        CHECK(std::abs(circle_poly_eval(spec, std::polar(1.0, -th))) <= 1.0 + 1e-9);
    }
    double at_c2 = std::abs(circle_poly_eval(spec, std::polar(1.0, std::acos(spec.c2))));
    CHECK(at_c2 >= 0.5 * std::exp(2.0 * spec.m * std::sqrt(spec.delta)));

    // delta = 0: bounded on the full arc
    PolySpec flat = PolySpec::circle(5, -0.8, 0.9, 0.0);
    for (int i = 0; i < 1000; ++i) {
        double c = flat.c1 + (flat.c2 - flat.c1) * double(i) / 999.0;
        CHECK(std::abs(circle_poly_eval(flat, std::polar(1.0, std::acos(c)))) <= 1.0 + 1e-9);
    }
}

TEST_CASE("disk family: endpoint value and formula anchor") {
    PolySpec spec = PolySpec::disk(4, 0.2);
    RegionSpec region;
    region.kind = RegionKind::slit_disk_R;
    region.eps = spec.eps;

    double max_on_grid = 0.0;
    for (int i = 0; i < 200; ++i)
        for (int j = 0; j < 200; ++j) {
            Complex z = std::polar(double(i) / 199.0, 2.0 * M_PI * double(j) / 200.0);
            if (in_region(region, z))
                max_on_grid = std::max(max_on_grid, std::abs(disk_poly_eval(spec, z)));
        }
    double at_one = std::abs(disk_poly_eval(spec, Complex(1.0)));
    CHECK(at_one >= std::exp(spec.m * spec.eps / 8.0) * max_on_grid);

    // membership consequence at arg = pi/2
    Complex zi = std::polar(1.0, M_PI / 2.0);
    CHECK(std::abs(disk_poly_eval(spec, zi)) <= max_on_grid + 1e-9);

    PolySpec one = PolySpec::disk(1, 0.1);
    CHECK(std::abs(disk_poly_eval(one, Complex(1.0))) ==
          doctest::Approx(1.0 / std::cos(0.1)).epsilon(1e-12));
}

TEST_CASE("annulus family: composition identity and anchors") {
    PolySpec spec = PolySpec::annulus(3, 0.3);
    PolySpec diskspec = PolySpec::disk(3, 2.0 * 0.3 / 3.0);
    std::mt19937 gen(9);
    std::uniform_real_distribution<double> dist(-1.2, 1.2);
    for (int rep = 0; rep < 100; ++rep) {
        Complex z(dist(gen), dist(gen));
        Complex w = quad_map(spec.delta, z);
        if (std::abs(w) < 2e-3 || std::abs(w) > 3.0) continue;
        Complex a = annulus_poly_eval(spec, z);
        Complex b = disk_poly_eval(diskspec, w);
        CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
    }

    // delta = 0 at z = -1: P(-1) = 1 so the value is T_m(1) = 1
    PolySpec flat = PolySpec::annulus(5, 0.0);
    Complex v = annulus_poly_eval(flat, Complex(-1.0));
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(v.imag()) <= 1e-12);
}

TEST_CASE("cleared coefficient form matches the rational form") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> dist(-1.1, 1.1);
    std::vector<PolySpec> specs = {
        PolySpec::circle(4, -1.0, 0.7, 0.15), PolySpec::circle(8, -0.5, 1.0, 0.0),
        PolySpec::disk(5, 0.25),              PolySpec::disk(8, 0.6),
        PolySpec::annulus(3, 0.4),            PolySpec::annulus(4, 0.05)};
    for (const PolySpec& spec : specs) {
        auto coeffs = poly_coefficients(spec);
        CHECK(int(coeffs.size()) == spec.degree() + 1);
        int checked = 0;
        for (int rep = 0; checked < 1000 && rep < 5000; ++rep) {
            Complex z(dist(gen), dist(gen));
            if (std::abs(z) < 5e-3) continue;
            if (spec.family == PolyFamily::annulus &&
                std::abs(quad_map(spec.delta, z)) < 5e-3)
                continue;
            Complex rational = spec.family == PolyFamily::circle
                                   ? circle_poly_eval(spec, z)
                                   : spec.family == PolyFamily::disk
                                         ? disk_poly_eval(spec, z)
                                         : annulus_poly_eval(spec, z);
            Complex cleared = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 0;) cleared = cleared * z + coeffs[i];
            CHECK(std::abs(rational - cleared) <=
                  1e-8 * std::max(1.0, std::abs(rational)));
            ++checked;
        }
        CHECK(checked == 1000);
    }
}

TEST_CASE("evaluation at and near the pole uses the cleared form") {
    PolySpec circle = PolySpec::circle(4, -1.0, 0.6, 0.1);
    CHECK_THROWS_AS(circle_poly_eval(circle, Complex(0.0)), DomainError);
    // the two evaluation paths agree at a point just outside the switch radius
    Complex z(1.01e-3, 2e-4);
    Complex rational = circle_poly_eval(circle, z);
    auto coeffs = poly_coefficients(circle);
    Complex cleared = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) cleared = cleared * z + coeffs[i];
    CHECK(std::abs(rational - cleared) <= 1e-9 * std::max(1.0, std::abs(rational)));

    PolySpec disk = PolySpec::disk(3, 0.2);
    Complex at0 = disk_poly_eval(disk, Complex(0.0));
    CHECK(std::abs(at0) <= 1e-12);  // z^m factor survives clearing
}

TEST_CASE("in_region membership") {
    RegionSpec half;
    half.kind = RegionKind::half_annulus_D;
    half.delta = 0.2;
    CHECK(in_region(half, Complex(-0.5, 0.0)));
    CHECK_FALSE(in_region(half, Complex(0.5, 0.0)));
    CHECK_FALSE(in_region(half, Complex(-0.1, 0.0)));  // inside the hole
    CHECK(in_region(half, Complex(0.0, 0.7)));

    RegionSpec slit;
    slit.kind = RegionKind::slit_disk_R;
    slit.eps = 0.3;
    CHECK(in_region(slit, Complex(0.9, 0.0) * std::polar(1.0, 0.1)));  // small disk clause
    CHECK_FALSE(in_region(slit, std::polar(0.98, 0.1)));  // outside sectors, above 1-eps/8
    CHECK(in_region(slit, std::polar(0.99, 1.0)));
    CHECK_FALSE(in_region(slit, std::polar(1.01, 1.0)));

    RegionSpec arc;
    arc.kind = RegionKind::circle_arc;
    arc.c1 = -1.0;
    arc.c2 = 0.5;
    arc.delta = 0.2;
    CHECK(in_region(arc, std::polar(1.0, std::acos(0.1))));
    CHECK_FALSE(in_region(arc, std::polar(1.0, std::acos(0.45))));  // past c2 - delta(c2-c1)
    CHECK_FALSE(in_region(arc, std::polar(0.7, 2.0)));
}

TEST_CASE("certify_remez: representative parameter points") {
    CertReport a = certify_remez(PolySpec::annulus(5, 0.3), 2000);
    CHECK(a.pass);
    CertReport d = certify_remez(PolySpec::disk(4, 0.2), 2000);
    CHECK(d.pass);
    CertReport c = certify_remez(PolySpec::circle(6, -1.0, 0.5, 0.2), 2000);
    CHECK(c.pass);
    CHECK_THROWS_AS(certify_remez(PolySpec::disk(4, 0.2), 100), DomainError);

    nlohmann::json j = a;
    CHECK(j.at("family") == "annulus");
    CHECK(j.at("pass") == true);
}

TEST_CASE("max-modulus consistency: boundary grid dominates interior grid") {
    for (auto spec : {PolySpec::annulus(4, 0.25), PolySpec::disk(5, 0.3)}) {
        std::vector<Complex> boundary, interior;
        if (spec.family == PolyFamily::annulus) {
            for (int i = 0; i < 2000; ++i) {
                double th = M_PI / 2.0 + M_PI * double(i) / 1999.0;
                boundary.push_back(std::polar(1.0, th));
                boundary.push_back(std::polar(spec.delta, th));
                double r = spec.delta + (1.0 - spec.delta) * double(i) / 1999.0;
                boundary.push_back(Complex(0.0, r));
                boundary.push_back(Complex(0.0, -r));
            }
            for (int i = 0; i < 40; ++i)
                for (int j = 0; j < 25; ++j)
                    interior.push_back(std::polar(
                        spec.delta + (1.0 - spec.delta) * (i + 0.5) / 40.0,
                        M_PI / 2.0 + M_PI * (j + 0.5) / 25.0));
        } else {
            double rin = 1.0 - spec.eps / 8.0;
            for (int i = 0; i < 4000; ++i) {
                double t = double(i) / 3999.0;
                boundary.push_back(std::polar(1.0, spec.eps + t * (M_PI - 2 * spec.eps)));
                boundary.push_back(std::polar(1.0, M_PI + spec.eps + t * (M_PI - 2 * spec.eps)));
                boundary.push_back(std::polar(rin, -spec.eps + t * 2 * spec.eps));
                boundary.push_back(std::polar(rin, M_PI - spec.eps + t * 2 * spec.eps));
            }
            for (int i = 0; i < 40; ++i)
                for (int j = 0; j < 25; ++j)
                    interior.push_back(std::polar(rin * (i + 0.5) / 40.0,
                                                  2.0 * M_PI * (j + 0.5) / 25.0));
        }
        auto log_abs = [&](Complex z) {
            return spec.family == PolyFamily::annulus ? annulus_poly_log_abs(spec, z)
                                                      : disk_poly_log_abs(spec, z);
        };
        double bmax = -1e300, imax = -1e300;
        for (Complex z : boundary) bmax = std::max(bmax, log_abs(z));
        for (Complex z : interior) imax = std::max(imax, log_abs(z));
        CHECK(std::exp(bmax) >= std::exp(imax) - 1e-9);
    }
}

TEST_CASE("certify_appendix_map over a delta sweep") {
    for (double d : {0.1, 0.5, 0.9}) CHECK(certify_appendix_map(d, 10000));
    CHECK_THROWS_AS(certify_appendix_map(0.5, 100), DomainError);
    CHECK_THROWS_AS(certify_appendix_map(1.5, 10000), DomainError);
}
