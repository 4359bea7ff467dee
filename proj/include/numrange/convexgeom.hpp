#pragma once

#include <utility>
#include <vector>

#include <json.hpp>

#include "numrange/matrix.hpp"

namespace numrange {

// Ordered CCW vertex list in the complex plane, strictly convex position.
// Degenerate sets are allowed: one vertex (point) or two (segment).
struct ConvexPolygon {
    std::vector<Complex> vertices;

    std::size_t size() const { return vertices.size(); }
    bool is_point() const { return vertices.size() == 1; }
    bool is_segment() const { return vertices.size() == 2; }
    double perimeter() const;
};

struct SweepConfig {
    int n_angles = 1024;
};

// Minimal CCW hull (monotone chain); collinear points resolved by keeping
// extreme endpoints only. First vertex is the lexicographic minimum.
ConvexPolygon convex_hull(const std::vector<Complex>& points);

// Inscribed approximation of W(H) by an angle sweep: for each angle the top
// eigenvector of (e^{i phi} H + e^{-i phi} H*)/2 contributes its Rayleigh
// quotient; the hull of all recorded points is returned.
ConvexPolygon numerical_range(const CMatrix& h, const SweepConfig& cfg);

// 0 when z lies in P (boundary included), else distance to the nearest edge.
double point_distance(const ConvexPolygon& p, Complex z);

// sup_{p in P} d(p, Q); exact via vertices since d(., Q) is convex on P.
double one_sided_hausdorff(const ConvexPolygon& p, const ConvexPolygon& q);

double hausdorff(const ConvexPolygon& p, const ConvexPolygon& q);

// inf |s - t|; 0 when the polygons intersect.
double set_distance(const ConvexPolygon& p, const ConvexPolygon& q);

// min over a dense arc-length sampling of the outer boundary of the distance
// to the inner set. Requires inner to be contained in outer (within 1e-9).
double boundary_distance(const ConvexPolygon& inner, const ConvexPolygon& outer,
                         int samples = 10000);

// k boundary points at equal arc-length spacing; Hausdorff error at most
// (L/2k) tan(pi/k) for perimeter L.
ConvexPolygon inscribed_polygon(const ConvexPolygon& p, int k);

// Extent of Re(e^{i theta} P).
std::pair<double, double> projected_interval(const ConvexPolygon& p, double theta);

double diameter(const ConvexPolygon& p);

// max |v| over vertices; equals max |z| over the polygon.
double numerical_radius(const ConvexPolygon& p);

// Hausdorff distance of two real intervals.
double interval_hausdorff(std::pair<double, double> a, std::pair<double, double> b);

// K points walking the boundary at uniform arc length from vertex 0.
std::vector<Complex> boundary_points(const ConvexPolygon& p, int count);

// JSON wire format: ordered [re, im] pairs.
void to_json(nlohmann::json& j, const ConvexPolygon& p);
void from_json(const nlohmann::json& j, ConvexPolygon& p);

}  // namespace numrange
