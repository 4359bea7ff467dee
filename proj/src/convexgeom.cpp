#include "numrange/convexgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "numrange/linalg.hpp"
#include "numrange/parallel.hpp"

namespace numrange {

namespace {

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

double point_segment_distance(Complex z, Complex a, Complex b) {
    Complex ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

int orientation(Complex o, Complex a, Complex b) {
    double c = cross(o, a, b);
    if (c > 0) return 1;
    if (c < 0) return -1;
    return 0;
}

bool on_segment(Complex p, Complex q, Complex r) {
    return std::min(p.real(), r.real()) <= q.real() && q.real() <= std::max(p.real(), r.real()) &&
           std::min(p.imag(), r.imag()) <= q.imag() && q.imag() <= std::max(p.imag(), r.imag());
}

bool segments_intersect(Complex p1, Complex q1, Complex p2, Complex q2) {
    int o1 = orientation(p1, q1, p2);
    int o2 = orientation(p1, q1, q2);
    int o3 = orientation(p2, q2, p1);
    int o4 = orientation(p2, q2, q1);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, q2, q1)) return true;
    if (o3 == 0 && on_segment(p2, p1, q2)) return true;
    if (o4 == 0 && on_segment(p2, q1, q2)) return true;
    return false;
}

double segment_segment_distance(Complex p1, Complex q1, Complex p2, Complex q2) {
    if (segments_intersect(p1, q1, p2, q2)) return 0.0;
    double d = point_segment_distance(p1, p2, q2);
    d = std::min(d, point_segment_distance(q1, p2, q2));
    d = std::min(d, point_segment_distance(p2, p1, q1));
    d = std::min(d, point_segment_distance(q2, p1, q1));
    return d;
}

std::vector<std::pair<Complex, Complex>> edges_of(const ConvexPolygon& p) {
    std::vector<std::pair<Complex, Complex>> e;
    const auto& v = p.vertices;
    if (v.size() == 1) {
        e.emplace_back(v[0], v[0]);
    } else if (v.size() == 2) {
        e.emplace_back(v[0], v[1]);
    } else {
        for (std::size_t i = 0; i < v.size(); ++i)
            e.emplace_back(v[i], v[(i + 1) % v.size()]);
    }
    return e;
}

}  // namespace

double ConvexPolygon::perimeter() const {
    if (vertices.size() <= 1) return 0.0;
    if (vertices.size() == 2) return 2.0 * std::abs(vertices[1] - vertices[0]);
    double L = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        L += std::abs(vertices[(i + 1) % vertices.size()] - vertices[i]);
    return L;
}

ConvexPolygon convex_hull(const std::vector<Complex>& points) {
    if (points.empty()) throw DomainError("convex_hull: empty point set");
    for (Complex z : points)
        if (!is_finite(z)) throw DomainError("convex_hull: non-finite point");

    std::vector<Complex> pts = points;
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return ConvexPolygon{std::move(pts)};

    std::vector<Complex> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Complex& p : pts) {  // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    const std::size_t lower_end = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {  // upper chain
        const Complex& p = pts[i];
        while (k >= lower_end && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return ConvexPolygon{std::move(hull)};
}

ConvexPolygon numerical_range(const CMatrix& h, const SweepConfig& cfg) {
    require_square(h, "numerical_range");
    require_finite(h, "numerical_range");
    if (cfg.n_angles < 8) throw DomainError("numerical_range: n_angles must be >= 8");

    const std::size_t n = h.rows();
    if (n == 1) return ConvexPolygon{{h(0, 0)}};

    const std::size_t K = static_cast<std::size_t>(cfg.n_angles);
    std::vector<Complex> pts(K);
    parallel_for(K, [&](std::size_t k) {
        double phi = 2.0 * M_PI * double(k) / double(K);
        Complex rot = std::polar(1.0, phi);
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = 0.5 * (rot * h(i, j) + std::conj(rot * h(j, i)));
        auto top = hermitian_top_eigenpair(m);
        const CVector& x = top.second;
        Complex num = dot(x, matvec(h, x));
        pts[k] = num / norm2_squared(x);
    });
    return convex_hull(pts);
}

double point_distance(const ConvexPolygon& p, Complex z) {
    const auto& v = p.vertices;
    if (v.empty()) throw DomainError("point_distance: empty polygon");
    if (v.size() == 1) return std::abs(z - v[0]);
    if (v.size() == 2) return point_segment_distance(z, v[0], v[1]);

    bool inside = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (cross(v[i], v[(i + 1) % v.size()], z) < 0) {
            inside = false;
            break;
        }
    }
    if (inside) return 0.0;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        d = std::min(d, point_segment_distance(z, v[i], v[(i + 1) % v.size()]));
    return d;
}

double one_sided_hausdorff(const ConvexPolygon& p, const ConvexPolygon& q) {
    double d = 0.0;
    for (Complex vert : p.vertices) d = std::max(d, point_distance(q, vert));
    return d;
}

double hausdorff(const ConvexPolygon& p, const ConvexPolygon& q) {
    return std::max(one_sided_hausdorff(p, q), one_sided_hausdorff(q, p));
}

double set_distance(const ConvexPolygon& p, const ConvexPolygon& q) {
    // Containment without boundary contact is caught by the vertex checks.
    for (Complex vert : p.vertices)
        if (point_distance(q, vert) == 0.0) return 0.0;
    for (Complex vert : q.vertices)
        if (point_distance(p, vert) == 0.0) return 0.0;

    double d = std::numeric_limits<double>::infinity();
    for (const auto& [a1, b1] : edges_of(p))
        for (const auto& [a2, b2] : edges_of(q))
            d = std::min(d, segment_segment_distance(a1, b1, a2, b2));
    return d;
}

std::vector<Complex> boundary_points(const ConvexPolygon& p, int count) {
    if (count < 1) throw DomainError("boundary_points: count must be >= 1");
    const auto& v = p.vertices;
    if (v.empty()) throw DomainError("boundary_points: empty polygon");
    if (v.size() == 1) return std::vector<Complex>(count, v[0]);

    // Closed walk around the boundary; a segment is traversed both ways.
    std::vector<Complex> loop = v;
    if (v.size() == 2)
        loop.push_back(v[0]);
    else
        loop.push_back(v[0]);

    std::vector<double> acc(loop.size(), 0.0);
    for (std::size_t i = 1; i < loop.size(); ++i)
        acc[i] = acc[i - 1] + std::abs(loop[i] - loop[i - 1]);
    double L = acc.back();
    if (L == 0.0) return std::vector<Complex>(count, v[0]);

    std::vector<Complex> out(count);
    std::size_t seg = 0;
    for (int k = 0; k < count; ++k) {
        double s = L * double(k) / double(count);
        while (seg + 2 < acc.size() && acc[seg + 1] < s) ++seg;
        double t = (s - acc[seg]) / (acc[seg + 1] - acc[seg]);
        out[k] = loop[seg] + t * (loop[seg + 1] - loop[seg]);
    }
    return out;
}

double boundary_distance(const ConvexPolygon& inner, const ConvexPolygon& outer,
                         int samples) {
    double containment = one_sided_hausdorff(inner, outer);
    if (containment > 1e-9)
        throw PreconditionError("boundary_distance: inner not contained in outer");
    std::vector<Complex> bd = boundary_points(outer, samples);
    std::vector<double> dist(bd.size());
    parallel_for(bd.size(), [&](std::size_t i) { dist[i] = point_distance(inner, bd[i]); });
    return *std::min_element(dist.begin(), dist.end());
}

ConvexPolygon inscribed_polygon(const ConvexPolygon& p, int k) {
    if (k < 3) throw DomainError("inscribed_polygon: k must be >= 3");
    if (p.vertices.size() <= std::size_t(k)) return p;  // exact, d_H = 0

    // Sample in a mixed arc-length/turning parameter. Pure arc-length
    // spacing can miss sharp corners and break the Hausdorff guarantee;
    // turning-angle jumps at the vertices make every sharp corner a
    // sampling target of positive measure.
    const auto& v = p.vertices;
    const std::size_t n = v.size();
    double L = p.perimeter();

    std::vector<double> edge_len(n), exterior(n);
    double total_turn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Complex a = v[i], b = v[(i + 1) % n], c = v[(i + 2) % n];
        edge_len[i] = std::abs(b - a);
        double ang = std::arg((c - b) / (b - a));
        if (ang < 0) ang += 2.0 * M_PI;
        exterior[(i + 1) % n] = ang;
        total_turn += ang;
    }

    // u advances by half the normalized turning at each vertex and half the
    // normalized length along each edge; total is 1.
    std::vector<Complex> samples;
    samples.reserve(k);
    double u = 0.0;
    std::size_t idx = 0;      // current vertex
    bool at_vertex = true;    // next span is the vertex jump
    double target = 0.0;
    int taken = 0;
    while (taken < k && idx < 2 * n) {
        std::size_t vi = idx % n;
        double span = at_vertex ? 0.5 * exterior[vi] / total_turn
                                : 0.5 * edge_len[vi] / L;
        while (taken < k && target <= u + span + 1e-15) {
            if (at_vertex) {
                samples.push_back(v[vi]);
            } else {
                double t = span == 0.0 ? 0.0 : (target - u) / span;
                samples.push_back(v[vi] + t * (v[(vi + 1) % n] - v[vi]));
            }
            ++taken;
            target = double(taken) / double(k);
        }
        u += span;
        if (!at_vertex) ++idx;
        at_vertex = !at_vertex;
    }
    return convex_hull(samples);
}

std::pair<double, double> projected_interval(const ConvexPolygon& p, double theta) {
    Complex rot = std::polar(1.0, theta);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Complex v : p.vertices) {
        double x = (rot * v).real();
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return {lo, hi};
}

double diameter(const ConvexPolygon& p) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < p.vertices.size(); ++j)
            d = std::max(d, std::abs(p.vertices[i] - p.vertices[j]));
    return d;
}

double numerical_radius(const ConvexPolygon& p) {
    double r = 0.0;
    for (Complex v : p.vertices) r = std::max(r, std::abs(v));
    return r;
}

double interval_hausdorff(std::pair<double, double> a, std::pair<double, double> b) {
    return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

void to_json(nlohmann::json& j, const ConvexPolygon& p) {
    j = nlohmann::json::array();
    for (Complex v : p.vertices) j.push_back({v.real(), v.imag()});
}

void from_json(const nlohmann::json& j, ConvexPolygon& p) {
    p.vertices.clear();
    for (const auto& pair : j)
        p.vertices.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
}

}  // namespace numrange
