#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "numrange/types.hpp"

namespace numrange {

enum class PolyFamily { circle, disk, annulus };

// Parameters of one of the three extremal polynomial families. Degrees are
// 2m (circle), 3m (disk) and 6m (annulus).
struct PolySpec {
    PolyFamily family = PolyFamily::circle;
    int m = 1;
    double delta = 0.0;  // circle, annulus
    double eps = 0.0;    // disk
    double c1 = -1.0;    // circle
    double c2 = 1.0;     // circle

    static PolySpec circle(int m, double c1, double c2, double delta);
    static PolySpec disk(int m, double eps);
    static PolySpec annulus(int m, double delta);
    int degree() const;
};

enum class RegionKind { half_annulus_D, slit_disk_R, circle_arc };

struct RegionSpec {
    RegionKind kind = RegionKind::half_annulus_D;
    double delta = 0.0;  // half_annulus_D, circle_arc
    double eps = 0.0;    // slit_disk_R
    double c1 = -1.0;    // circle_arc
    double c2 = 1.0;     // circle_arc
};

// Degree-m Chebyshev polynomial of the first kind at a complex argument,
// by the three-term recurrence.
Complex chebyshev_T(int m, Complex z);

// log |T_m(z)| evaluated without overflow (via the acos form).
double chebyshev_log_abs(int m, Complex z);

// (1 - delta/4) z^2 + (1 - delta/8) z + 1
Complex quad_map(double delta, Complex z);

// Rational-form evaluations; near the pole of the z^{-1} (resp. P(z)^{-1})
// factor they switch to the cleared coefficient expansion.
Complex circle_poly_eval(const PolySpec& spec, Complex z);
Complex disk_poly_eval(const PolySpec& spec, Complex z);
Complex annulus_poly_eval(const PolySpec& spec, Complex z);

double circle_poly_log_abs(const PolySpec& spec, Complex z);
double disk_poly_log_abs(const PolySpec& spec, Complex z);
double annulus_poly_log_abs(const PolySpec& spec, Complex z);

// Monomial coefficients of the cleared polynomial form (degree spec.degree()).
std::vector<Complex> poly_coefficients(const PolySpec& spec);

bool in_region(const RegionSpec& spec, Complex z);

struct CertReport {
    std::string family;
    nlohmann::json params;
    double log_max_on_region = 0.0;  // log of the grid max of |poly|
    double log_value_at_point = 0.0; // log |poly| at the distinguished point
    double ratio = 0.0;              // value / (constant * max)
    std::size_t grid_size = 0;
    bool pass = false;
};

// Maximizes |poly| over a boundary-plus-interior grid of the family's region
// and checks the cited extremal inequality against the distinguished point.
CertReport certify_remez(const PolySpec& spec, int grid_density);

// Samples the three boundary arcs of the half annulus, maps them through the
// quadratic, and asserts membership in the slit disk with eps = 2 delta / 3.
bool certify_appendix_map(double delta, int grid_density);

void to_json(nlohmann::json& j, const CertReport& r);

}  // namespace numrange
